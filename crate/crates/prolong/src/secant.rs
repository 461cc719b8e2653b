//! Vanishing checks on secants of parametrized varieties, and interpolation
//! of the forms that vanish there.
//!
//! A secant point of order r is a random rational combination of r sampled
//! variety points. Evaluating a candidate form there is exact, so a single
//! nonzero value certifies that the form does not vanish on the secant; all
//! zeros across many trials is strong generic evidence that it does.
//! Interpolation goes the other way: collect evaluation constraints at
//! sampled secant points until the solution space stops shrinking, and
//! return the forms satisfying all of them.

use crate::error::{Error, Result};
use crate::map::MonomialMap;
use crate::modkernel::{integer_kernel, ModEchelon};
use crate::monomial::{monomials_of_degree, Monomial};
use crate::poly::Polynomial;
use crate::sample::{sample_variety_point, Rng, SampleConfig};
use crate::space::FormSpace;
use crate::{Q, Z};
use num_integer::Integer;
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    /// Zero-based index of the trial that produced the nonzero value.
    pub trial: usize,
    pub point: Vec<Q>,
    pub value: Q,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VanishReport {
    pub trials: usize,
    pub zero: usize,
    pub nonzero: usize,
    pub witness: Option<Witness>,
}

impl VanishReport {
    pub fn passed(&self) -> bool {
        self.nonzero == 0
    }
}

/// Evaluates `f` at `trials` random order-`r` secant points of the image of
/// `map`. Each trial draws r parameter vectors and then r weights from one
/// sequential stream, so reports are reproducible from the seed alone.
pub fn secant_vanish_check(
    f: &Polynomial,
    map: &MonomialMap,
    r: u32,
    trials: usize,
    cfg: SampleConfig,
) -> Result<VanishReport> {
    if r < 1 {
        return Err(Error::InvalidArgument(
            "secant order must be at least 1".into(),
        ));
    }
    if f.vars() != map.targets() {
        return Err(Error::VarSetMismatch);
    }
    let mut rng = cfg.rng();
    let mut zero = 0usize;
    let mut nonzero = 0usize;
    let mut witness = None;
    for trial in 0..trials {
        let point = secant_point(map, r, &mut rng)?;
        let value = f.evaluate(&point)?;
        if value.is_zero() {
            zero += 1;
        } else {
            nonzero += 1;
            if witness.is_none() {
                witness = Some(Witness {
                    trial,
                    point,
                    value,
                });
            }
        }
    }
    Ok(VanishReport {
        trials,
        zero,
        nonzero,
        witness,
    })
}

/// One random point on the order-r secant: a weighted sum of r variety
/// points, weights drawn after the points.
pub fn secant_point(map: &MonomialMap, r: u32, rng: &mut Rng) -> Result<Vec<Q>> {
    let points: Vec<Vec<Q>> = (0..r)
        .map(|_| sample_variety_point(map, rng))
        .collect::<Result<_>>()?;
    let weights: Vec<Q> = (0..r).map(|_| rng.rational()).collect();
    let n = map.targets().len();
    let mut out = vec![Q::zero(); n];
    for (p, w) in points.iter().zip(&weights) {
        for (acc, coord) in out.iter_mut().zip(p) {
            *acc += w * coord;
        }
    }
    Ok(out)
}

/// The space of degree-m forms vanishing on sampled order-r secant points.
/// Points are added in batches of `num_points` until the dimension is
/// unchanged across two consecutive batches. The result contains the true
/// degree-m secant vanishing piece; generically it equals it.
pub fn interpolate_vanishing_piece(
    map: &MonomialMap,
    r: u32,
    m: u32,
    cfg: SampleConfig,
    num_points: usize,
) -> Result<FormSpace> {
    if r < 1 {
        return Err(Error::InvalidArgument(
            "secant order must be at least 1".into(),
        ));
    }
    if num_points < 1 {
        return Err(Error::InvalidArgument(
            "interpolation needs at least one point per batch".into(),
        ));
    }
    let targets = map.targets().clone();
    let ambient = monomials_of_degree(targets.len(), m);
    let mut rng = cfg.rng();
    // Exact rational elimination chokes on these dense rows, so rank is
    // tracked modulo a fixed prime while the integer-cleared rows are kept
    // for the exact kernel extraction at the end.
    let mut tracker = ModEchelon::new();
    let mut rows: Vec<Vec<Z>> = Vec::new();
    let mut prev_dim = ambient.len();
    loop {
        for _ in 0..num_points {
            let point = secant_point(map, r, &mut rng)?;
            let row = evaluation_row(&ambient, targets.len(), &point);
            tracker.insert_integers(&row);
            rows.push(row);
        }
        let dim = ambient.len() - tracker.rank();
        if dim == prev_dim {
            break;
        }
        prev_dim = dim;
    }
    let kernel = integer_kernel(&rows, ambient.len());
    let polys: Vec<Polynomial> = kernel
        .iter()
        .map(|v| {
            Polynomial::from_terms(
                targets.clone(),
                v.iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(i, c)| (ambient[i].clone(), Q::from(c.clone()))),
            )
        })
        .collect();
    FormSpace::new(targets, m, polys)
}

/// Evaluation row: one column per degree-m monomial, scaled by the common
/// denominator so every entry is an integer. Scaling a row changes neither
/// the constraint it imposes nor the kernel.
fn evaluation_row(ambient: &[Monomial], nvars: usize, point: &[Q]) -> Vec<Z> {
    let values: Vec<Q> = ambient
        .iter()
        .map(|mono| {
            let mut v = Q::one();
            for var in 0..nvars {
                for _ in 0..mono.exp(var) {
                    v *= &point[var];
                }
            }
            v
        })
        .collect();
    let mut denom = Z::one();
    for v in &values {
        denom = denom.lcm(v.denom());
    }
    values
        .iter()
        .map(|v| v.numer() * (&denom / v.denom()))
        .collect()
}
