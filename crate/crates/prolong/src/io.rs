//! JSON file formats. Every writer emits pretty-printed JSON with keys in
//! sorted order and a trailing newline, so equal values produce equal bytes.
//!
//! Form spaces are accepted in any spanning basis and always written in
//! the canonical reduced basis. Frame systems number frames from 1 in
//! their JSON form; edges print as `"u-v"` and frame pairs as `"i,j"`.

use std::collections::BTreeMap;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::circuits::Decomposition;
use crate::error::{Error, FrameError, Result};
use crate::frames::{Frame, FrameClass, FrameSystem};
use crate::map::MonomialMap;
use crate::mono::MonomialSpace;
use crate::parse;
use crate::poly::format_coeff;
use crate::secant::{VanishReport, Witness};
use crate::space::FormSpace;
use crate::tree::{edge, Edge, Tree};
use crate::varset::VarSet;
use crate::{Q, Z};

fn render<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("serializable");
    text.push('\n');
    text
}

// ---------------------------------------------------------------- FormSpace

#[derive(Serialize, Deserialize)]
struct FormSpaceJson {
    basis: Vec<String>,
    degree: u32,
    vars: Vec<String>,
}

pub fn formspace_to_json(space: &FormSpace) -> String {
    let vars = space.vars();
    render(&FormSpaceJson {
        basis: space.basis().iter().map(|f| f.to_string()).collect(),
        degree: space.degree(),
        vars: vars.names().to_vec(),
    })
}

pub fn formspace_from_json(text: &str) -> Result<FormSpace> {
    let raw: FormSpaceJson = serde_json::from_str(text)?;
    let vars = VarSet::new(raw.vars)?;
    let mut gens = Vec::with_capacity(raw.basis.len());
    for f in &raw.basis {
        gens.push(parse::parse_polynomial(f, &vars)?);
    }
    FormSpace::new(vars, raw.degree, gens)
}

// ------------------------------------------------------------ MonomialSpace

#[derive(Serialize, Deserialize)]
struct MonomialSpaceJson {
    degree: u32,
    monomials: Vec<String>,
    vars: Vec<String>,
}

pub fn monomialspace_to_json(space: &MonomialSpace) -> String {
    let vars = space.vars();
    render(&MonomialSpaceJson {
        degree: space.degree(),
        monomials: space
            .monomials()
            .iter()
            .map(|m| m.format(vars))
            .collect(),
        vars: vars.names().to_vec(),
    })
}

pub fn monomialspace_from_json(text: &str) -> Result<MonomialSpace> {
    let raw: MonomialSpaceJson = serde_json::from_str(text)?;
    let vars = VarSet::new(raw.vars)?;
    let mut monomials = Vec::with_capacity(raw.monomials.len());
    for m in &raw.monomials {
        monomials.push(parse::parse_monomial(m, &vars)?);
    }
    MonomialSpace::new(vars, raw.degree, monomials)
}

/// Reads either file format: objects with a `basis` key parse as a
/// [`FormSpace`], objects with a `monomials` key as a [`MonomialSpace`]
/// (returned as the span of its monomials).
pub fn any_space_from_json(text: &str) -> Result<FormSpace> {
    let probe: serde_json::Value = serde_json::from_str(text)?;
    match probe.as_object() {
        Some(obj) if obj.contains_key("basis") => formspace_from_json(text),
        Some(obj) if obj.contains_key("monomials") => {
            Ok(monomialspace_from_json(text)?.to_formspace())
        }
        _ => Err(Error::BadInput(
            "expected an object with a `basis` or `monomials` key".into(),
        )),
    }
}

// ------------------------------------------------------------- MonomialMap

#[derive(Serialize, Deserialize)]
struct MonomialMapJson {
    images: BTreeMap<String, String>,
    params: Vec<String>,
    targets: Vec<String>,
}

pub fn monomialmap_to_json(map: &MonomialMap) -> String {
    let params = map.params();
    let images = map
        .targets()
        .names()
        .iter()
        .zip(map.images())
        .map(|(t, m)| (t.clone(), m.format(params)))
        .collect();
    render(&MonomialMapJson {
        images,
        params: params.names().to_vec(),
        targets: map.targets().names().to_vec(),
    })
}

pub fn monomialmap_from_json(text: &str) -> Result<MonomialMap> {
    let raw: MonomialMapJson = serde_json::from_str(text)?;
    let params = VarSet::new(raw.params)?;
    let targets = VarSet::new(raw.targets)?;
    let mut images = Vec::with_capacity(targets.len());
    for t in targets.names() {
        let text = raw.images.get(t).ok_or_else(|| {
            Error::BadInput(format!("target `{t}` has no image monomial"))
        })?;
        images.push(parse::parse_monomial(text, &params)?);
    }
    if raw.images.len() != targets.len() {
        return Err(Error::BadInput(
            "images name a key that is not a target".into(),
        ));
    }
    MonomialMap::new(params, targets, images)
}

// ------------------------------------------------------------ VanishReport

#[derive(Serialize, Deserialize)]
struct WitnessJson {
    point: Vec<String>,
    trial: usize,
    value: String,
}

#[derive(Serialize, Deserialize)]
struct VanishReportJson {
    nonzero: usize,
    trials: usize,
    witness: Option<WitnessJson>,
    zero: usize,
}

fn parse_rational(text: &str) -> Result<Q> {
    let bad = || Error::BadInput(format!("`{text}` is not a rational number"));
    match text.split_once('/') {
        None => Ok(Q::from_integer(Z::from_str(text).map_err(|_| bad())?)),
        Some((n, d)) => {
            let numer = Z::from_str(n).map_err(|_| bad())?;
            let denom = Z::from_str(d).map_err(|_| bad())?;
            if denom == Z::from(0) {
                return Err(bad());
            }
            Ok(Q::new(numer, denom))
        }
    }
}

pub fn report_to_json(report: &VanishReport) -> String {
    render(&VanishReportJson {
        nonzero: report.nonzero,
        trials: report.trials,
        witness: report.witness.as_ref().map(|w| WitnessJson {
            point: w.point.iter().map(format_coeff).collect(),
            trial: w.trial,
            value: format_coeff(&w.value),
        }),
        zero: report.zero,
    })
}

pub fn report_from_json(text: &str) -> Result<VanishReport> {
    let raw: VanishReportJson = serde_json::from_str(text)?;
    let witness = match raw.witness {
        None => None,
        Some(w) => {
            let mut point = Vec::with_capacity(w.point.len());
            for c in &w.point {
                point.push(parse_rational(c)?);
            }
            Some(Witness {
                trial: w.trial,
                point,
                value: parse_rational(&w.value)?,
            })
        }
    };
    Ok(VanishReport {
        trials: raw.trials,
        zero: raw.zero,
        nonzero: raw.nonzero,
        witness,
    })
}

// ------------------------------------------------------------ Decomposition

#[derive(Serialize)]
struct DecompositionJson {
    blocks: Vec<Vec<String>>,
    dims: Vec<usize>,
    minimally_generated_by_circuits: bool,
}

pub fn decomposition_to_json(dec: &Decomposition) -> String {
    render(&DecompositionJson {
        blocks: dec
            .blocks
            .iter()
            .map(|b| {
                let vars = b.vars();
                b.monomials().iter().map(|m| m.format(vars)).collect()
            })
            .collect(),
        dims: dec.spaces.iter().map(|s| s.dim()).collect(),
        minimally_generated_by_circuits: dec.minimally_generated_by_circuits,
    })
}

// ------------------------------------------------------------- FrameSystem

fn edge_key(e: Edge) -> String {
    format!("{}-{}", e.0, e.1)
}

fn parse_edge_key(text: &str) -> Result<Edge> {
    let bad = || Error::BadInput(format!("`{text}` is not an edge of the form `u-v`"));
    let (u, v) = text.split_once('-').ok_or_else(bad)?;
    let u: usize = u.trim().parse().map_err(|_| bad())?;
    let v: usize = v.trim().parse().map_err(|_| bad())?;
    if u == v || u == 0 || v == 0 {
        return Err(bad());
    }
    Ok(edge(u, v))
}

#[derive(Serialize, Deserialize)]
struct FrameClassJson {
    edge: String,
    labelings: Vec<BTreeMap<String, u8>>,
    members: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct FrameSystemJson {
    classes: Vec<FrameClassJson>,
    efun: BTreeMap<String, String>,
    frames: Vec<BTreeMap<String, u8>>,
}

fn labeling_to_json(labels: &BTreeMap<Edge, u8>) -> BTreeMap<String, u8> {
    labels.iter().map(|(&e, &b)| (edge_key(e), b)).collect()
}

fn labeling_from_json(labels: &BTreeMap<String, u8>) -> Result<BTreeMap<Edge, u8>> {
    labels
        .iter()
        .map(|(k, &b)| Ok((parse_edge_key(k)?, b)))
        .collect()
}

fn system_json(system: &FrameSystem) -> FrameSystemJson {
    FrameSystemJson {
        classes: system
            .classes()
            .iter()
            .map(|c| FrameClassJson {
                edge: edge_key(c.edge),
                labelings: c.completions.iter().map(labeling_to_json).collect(),
                members: c.members.iter().map(|&i| i + 1).collect(),
            })
            .collect(),
        efun: system
            .efun()
            .iter()
            .map(|(&(i, j), &e)| (format!("{},{}", i + 1, j + 1), edge_key(e)))
            .collect(),
        frames: system
            .frames()
            .iter()
            .map(|f| labeling_to_json(f.labels()))
            .collect(),
    }
}

pub fn frame_system_to_json(system: &FrameSystem) -> String {
    render(&system_json(system))
}

/// The system as a JSON value, for embedding in larger documents.
pub fn frame_system_to_value(system: &FrameSystem) -> serde_json::Value {
    serde_json::to_value(system_json(system)).expect("serializable")
}

pub fn frame_system_from_json(text: &str, tree: &Tree) -> Result<FrameSystem> {
    let raw: FrameSystemJson = serde_json::from_str(text)?;
    let d = raw.frames.len();
    let mut frames = Vec::with_capacity(d);
    for (index, labels) in raw.frames.iter().enumerate() {
        frames.push(Frame::numbered(tree, labeling_from_json(labels)?, index + 1)?);
    }
    let one_based = |text: &str, k: usize| -> Result<usize> {
        if k == 0 || k > d {
            Err(Error::BadInput(format!(
                "`{text}` names frame {k}; frames are numbered 1..={d}"
            )))
        } else {
            Ok(k - 1)
        }
    };
    let mut efun = BTreeMap::new();
    for (pair, e) in &raw.efun {
        let bad = || Error::BadInput(format!("`{pair}` is not a frame pair of the form `i,j`"));
        let (i, j) = pair.split_once(',').ok_or_else(bad)?;
        let i = one_based(pair, i.trim().parse().map_err(|_| bad())?)?;
        let j = one_based(pair, j.trim().parse().map_err(|_| bad())?)?;
        if i >= j {
            return Err(FrameError::SharedEdge {
                i: i + 1,
                j: j + 1,
                msg: "pairs must list the lower frame number first".into(),
            }
            .into());
        }
        efun.insert((i, j), parse_edge_key(e)?);
    }
    let mut classes = Vec::with_capacity(raw.classes.len());
    for c in &raw.classes {
        let mut members = Vec::with_capacity(c.members.len());
        for &k in &c.members {
            members.push(one_based(&format!("{k}"), k)?);
        }
        let mut completions = Vec::with_capacity(c.labelings.len());
        for lab in &c.labelings {
            completions.push(labeling_from_json(lab)?);
        }
        classes.push(FrameClass {
            edge: parse_edge_key(&c.edge)?,
            members,
            completions,
        });
    }
    FrameSystem::new(tree, frames, efun, classes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frames::enumerate_frame_systems;
    use crate::phylo;
    use crate::sample::SampleConfig;
    use crate::secant::secant_vanish_check;

    fn quartet() -> Tree {
        Tree::new(&[(1, 5), (2, 5), (5, 6), (3, 6), (4, 6)]).unwrap()
    }

    #[test]
    fn formspace_round_trip_canonicalizes() {
        let vars = VarSet::numbered("x", 3);
        let a = FormSpace::new(
            vars.clone(),
            2,
            vec![
                parse::parse_polynomial("x1^2 + x2^2", &vars).unwrap(),
                parse::parse_polynomial("2*x1^2 - x2^2 + x3^2", &vars).unwrap(),
            ],
        )
        .unwrap();
        let text = formspace_to_json(&a);
        let back = formspace_from_json(&text).unwrap();
        assert_eq!(back, a);
        // Writing the re-read space reproduces the bytes.
        assert_eq!(formspace_to_json(&back), text);
        // A shuffled, rescaled basis reads back to the same space.
        let shuffled = FormSpaceJson {
            basis: vec![
                "3*x1^2 + 3*x2^2".into(),
                "2*x1^2 - x2^2 + x3^2".into(),
                "x1^2 + x2^2".into(),
            ],
            degree: 2,
            vars: vars.names().to_vec(),
        };
        let other = formspace_from_json(&render(&shuffled)).unwrap();
        assert_eq!(other, a);
    }

    #[test]
    fn monomial_space_and_dual_reader() {
        let vars = VarSet::numbered("x", 3);
        let m = MonomialSpace::new(
            vars.clone(),
            2,
            vec![
                parse::parse_monomial("x1*x2", &vars).unwrap(),
                parse::parse_monomial("x3^2", &vars).unwrap(),
            ],
        )
        .unwrap();
        let text = monomialspace_to_json(&m);
        assert_eq!(monomialspace_from_json(&text).unwrap(), m);
        // The dual reader accepts both formats.
        let as_space = any_space_from_json(&text).unwrap();
        assert_eq!(as_space, m.to_formspace());
        let direct = any_space_from_json(&formspace_to_json(&as_space)).unwrap();
        assert_eq!(direct, as_space);
        assert!(any_space_from_json("{\"degree\": 1}").is_err());
    }

    #[test]
    fn monomial_map_round_trip() {
        let t = quartet();
        let map = phylo::phylo_parametrization(&t).unwrap();
        let text = monomialmap_to_json(&map);
        let back = monomialmap_from_json(&text).unwrap();
        assert_eq!(back, map);
        assert_eq!(monomialmap_to_json(&back), text);
        // The constant image prints as "1".
        assert!(text.contains("\"q0000\": \"1\""));
        // A missing image is rejected.
        let broken = text.replace("\"q0000\": \"1\",", "");
        assert!(monomialmap_from_json(&broken).is_err());
    }

    #[test]
    fn report_round_trip_with_witness() {
        let t = quartet();
        let map = phylo::phylo_parametrization(&t).unwrap();
        let vars = map.targets().clone();
        // A form that does not vanish on the variety.
        let f = parse::parse_polynomial("q0000^2", &vars).unwrap();
        let report = secant_vanish_check(&f, &map, 1, 3, SampleConfig::new(7)).unwrap();
        assert!(!report.passed());
        let text = report_to_json(&report);
        let back = report_from_json(&text).unwrap();
        assert_eq!(back, report);
        assert_eq!(report_to_json(&back), text);
    }

    #[test]
    fn decomposition_json_shape() {
        let t = quartet();
        let a = phylo::phylo_quadrics(&t).unwrap();
        let dec = crate::circuits::circuits_and_decomposition(&a);
        let text = decomposition_to_json(&dec);
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(value["dims"].as_array().unwrap().len(), 2);
        assert_eq!(value["minimally_generated_by_circuits"], true);
        // Each minor's support is its own block of two monomials.
        assert_eq!(value["blocks"][0].as_array().unwrap().len(), 2);
        assert_eq!(value["blocks"][1].as_array().unwrap().len(), 2);
    }

    #[test]
    fn frame_system_round_trip() {
        let t = quartet();
        let systems = enumerate_frame_systems(&t, 2, None).unwrap();
        for s in &systems {
            let text = frame_system_to_json(s);
            let back = frame_system_from_json(&text, &t).unwrap();
            assert_eq!(&back, s);
            assert_eq!(frame_system_to_json(&back), text);
            assert_eq!(back.polynomial(&t), s.polynomial(&t));
        }
        // Frame numbering in the JSON is 1-based.
        let text = frame_system_to_json(&systems[0]);
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(value["classes"][0]["members"][0], 1);
        assert!(value["efun"].as_object().unwrap().contains_key("1,2"));
        // Corrupt labels are attributed to the right frame.
        let broken = text.replace("\"1-5\": 0", "\"1-5\": 7");
        match frame_system_from_json(&broken, &t) {
            Err(Error::Frames(FrameError::InvalidFrame { index, .. })) => {
                assert!(index >= 1)
            }
            other => panic!("expected an invalid frame error, got {other:?}"),
        }
    }
}
