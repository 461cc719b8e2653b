//! Batch front end. Every command reads and writes the JSON file formats of
//! the library, prints deterministically (sorted keys, canonical bases), and
//! exits 0 on success, 1 when a mathematical check fails, 2 on input errors.

use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use prolong::engine::{self, Strategy};
use prolong::error::Error;
use prolong::io as formats;
use prolong::monomial::monomial_count;
use prolong::mono::MonomialSpace;
use prolong::sample::SampleConfig;
use prolong::space::FormSpace;
use prolong::tree::Tree;
use prolong::{circuits, frames, models, parse, phylo, secant};

#[derive(Parser)]
#[command(
    name = "prolong",
    version,
    about = "Exact-arithmetic prolongations of linear spaces of forms"
)]
struct Cli {
    /// Abort (exit 2) when the working degree has more ambient monomials.
    #[arg(long, global = true, default_value_t = 200_000)]
    cap: u128,

    /// Worker threads; results never depend on the count.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Prolong a space of forms: forms whose order-r partials all lie inside.
    Prolong {
        /// FormSpace JSON file; stdin when omitted.
        #[arg(long = "in")]
        input: Option<PathBuf>,
        /// Prolongation order.
        #[arg(long)]
        r: u32,
        /// Algorithm; all three produce identical bytes.
        #[arg(long, default_value = "derivative")]
        alg: Strategy,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Prolong a monomial support set (accepts either space format).
    Mprolong {
        /// MonomialSpace or FormSpace JSON file; stdin when omitted.
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Finest support-block decomposition and the circuit-generation flag.
    Circuits {
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Test membership of a form in the r-th differential power of a space's
    /// ideal; exits 1 when the form fails.
    Diffpower {
        /// FormSpace JSON file.
        #[arg(long)]
        space: PathBuf,
        /// Plain-text polynomial in the space's variables.
        #[arg(long)]
        poly: PathBuf,
        #[arg(long)]
        r: u32,
    },

    /// Evaluate a form at random r-secant points of a monomial map's image;
    /// exits 1 when a nonzero value (a witness) appears.
    SecantCheck {
        /// MonomialMap JSON file.
        #[arg(long)]
        map: PathBuf,
        /// Plain-text polynomial in the map's target variables.
        #[arg(long)]
        poly: PathBuf,
        /// Secant order (number of summed points).
        #[arg(long)]
        r: u32,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Numerators and denominators are drawn from [1, range].
        #[arg(long, default_value_t = SampleConfig::DEFAULT_RANGE)]
        range: u64,
    },

    /// Interpolate the degree-m forms vanishing on sampled r-secant points.
    Interpolate {
        #[arg(long)]
        map: PathBuf,
        #[arg(long)]
        r: u32,
        /// Degree m of the interpolated forms.
        #[arg(long)]
        deg: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// The 2x2 minors of all split matrices of a tree (plain-text edge list).
    PhyloIdeal {
        #[arg(long)]
        tree: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Prolong the split-minor space of a tree.
    PhyloProlong {
        #[arg(long)]
        tree: PathBuf,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Enumerate degree-d frame systems of a tree with their polynomials.
    PhyloFrames {
        #[arg(long)]
        tree: PathBuf,
        #[arg(long)]
        d: usize,
        /// Stop after this many systems.
        #[arg(long)]
        limit: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Quartic binomials of the no-three-way-interaction model on an
    /// l x m x n table.
    No3way {
        /// Table dimensions, e.g. 2,2,3
        #[arg(long)]
        dims: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    // The pool is sized once; every parallel stage merges deterministically.
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads)
        .build_global();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn read_input(path: &Option<PathBuf>) -> Result<String, Error> {
    match path {
        Some(p) => Ok(fs::read_to_string(p)?),
        None => {
            let mut text = String::new();
            std::io::stdin().read_to_string(&mut text)?;
            Ok(text)
        }
    }
}

fn write_output(path: &Option<PathBuf>, text: &str) -> Result<(), Error> {
    match path {
        Some(p) => fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn read_poly_file(path: &Path, vars: &std::sync::Arc<prolong::VarSet>) -> Result<prolong::Polynomial, Error> {
    let text = fs::read_to_string(path)?;
    parse::parse_polynomial(text.trim(), vars)
}

/// The ambient-size guard: counts monomials of `degree` in `nvars` variables.
fn guard_cap(nvars: usize, degree: u32, cap: u128) -> Result<(), Error> {
    let count = monomial_count(nvars, degree);
    if count > cap {
        return Err(Error::AmbientTooLarge { count, cap });
    }
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    let cap = cli.cap;
    match cli.command {
        Command::Prolong { input, r, alg, out } => {
            let a = formats::formspace_from_json(&read_input(&input)?)?;
            guard_cap(a.vars().len(), a.degree() + r, cap)?;
            let b = engine::prolong(&a, r, alg)?;
            write_output(&out, &formats::formspace_to_json(&b))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Mprolong { input, r, out } => {
            let text = read_input(&input)?;
            let m = match serde_json::from_str::<serde_json::Value>(&text)?
                .as_object()
                .is_some_and(|o| o.contains_key("monomials"))
            {
                true => formats::monomialspace_from_json(&text)?,
                false => MonomialSpace::support_of(&formats::formspace_from_json(&text)?),
            };
            guard_cap(m.vars().len(), m.degree() + r, cap)?;
            let p = m.prolong(r)?;
            write_output(&out, &formats::monomialspace_to_json(&p))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Circuits { input, out } => {
            let a = formats::formspace_from_json(&read_input(&input)?)?;
            let dec = circuits::circuits_and_decomposition(&a);
            write_output(&out, &formats::decomposition_to_json(&dec))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Diffpower { space, poly, r } => {
            let a = formats::formspace_from_json(&fs::read_to_string(space)?)?;
            let f = read_poly_file(&poly, a.vars())?;
            guard_cap(a.vars().len(), a.degree() + r, cap)?;
            let member = engine::differential_power_member(&f, &a, r)?;
            let mut doc = serde_json::Map::new();
            doc.insert("member".into(), member.into());
            println!("{}", serde_json::to_string_pretty(&doc)?);
            Ok(if member {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::SecantCheck {
            map,
            poly,
            r,
            trials,
            seed,
            range,
        } => {
            let map = formats::monomialmap_from_json(&fs::read_to_string(map)?)?;
            let f = read_poly_file(&poly, map.targets())?;
            let cfg = SampleConfig::with_range(seed, range);
            let report = secant::secant_vanish_check(&f, &map, r, trials, cfg)?;
            print!("{}", formats::report_to_json(&report));
            Ok(if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Interpolate {
            map,
            r,
            deg,
            seed,
            out,
        } => {
            let map = formats::monomialmap_from_json(&fs::read_to_string(map)?)?;
            guard_cap(map.targets().len(), deg, cap)?;
            // One batch per ambient dimension keeps the stability check fast.
            let num_points = monomial_count(map.targets().len(), deg) as usize;
            let cfg = SampleConfig::new(seed);
            let space = secant::interpolate_vanishing_piece(&map, r, deg, cfg, num_points)?;
            write_output(&out, &formats::formspace_to_json(&space))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::PhyloIdeal { tree, out } => {
            let t = Tree::from_text(&fs::read_to_string(tree)?)?;
            let a = phylo::phylo_quadrics(&t)?;
            write_output(&out, &formats::formspace_to_json(&a))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::PhyloProlong { tree, r, out } => {
            let t = Tree::from_text(&fs::read_to_string(tree)?)?;
            let a = phylo::phylo_quadrics(&t)?;
            guard_cap(a.vars().len(), a.degree() + r, cap)?;
            let b = engine::prolong(&a, r, Strategy::Derivative)?;
            write_output(&out, &formats::formspace_to_json(&b))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::PhyloFrames {
            tree,
            d,
            limit,
            out,
        } => {
            let t = Tree::from_text(&fs::read_to_string(tree)?)?;
            let systems = frames::enumerate_frame_systems(&t, d, limit)?;
            let rendered: Vec<serde_json::Value> = systems
                .iter()
                .map(|s| {
                    let mut value = formats::frame_system_to_value(s);
                    let poly = s.polynomial(&t);
                    value
                        .as_object_mut()
                        .expect("system renders as an object")
                        .insert("polynomial".into(), poly.to_string().into());
                    value
                })
                .collect();
            let mut doc = serde_json::Map::new();
            doc.insert("count".into(), rendered.len().into());
            doc.insert("systems".into(), rendered.into());
            let mut text = serde_json::to_string_pretty(&doc)?;
            text.push('\n');
            write_output(&out, &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::No3way { dims, out } => {
            let parts: Vec<&str> = dims.split(',').collect();
            let bad = || {
                Error::BadInput(format!(
                    "`{dims}` is not a dimension triple of the form l,m,n"
                ))
            };
            if parts.len() != 3 {
                return Err(bad());
            }
            let mut lmn = [0usize; 3];
            for (slot, part) in lmn.iter_mut().zip(&parts) {
                *slot = part.trim().parse().map_err(|_| bad())?;
            }
            let (vars, gens) = models::no3way(lmn[0], lmn[1], lmn[2])?;
            let space = FormSpace::new(vars, 4, gens)?;
            write_output(&out, &formats::formspace_to_json(&space))?;
            Ok(ExitCode::SUCCESS)
        }
    }
}
