//! Prolongation of form spaces and the derivative membership test.
//!
//! The r-th prolongation of a space A of degree-d forms is the space of
//! degree-(d+r) forms whose order-r partial derivatives all lie in A. Three
//! algorithms compute it:
//!
//! * `derivative`: for each order-r derivative direction beta, solve for the
//!   forms whose beta-derivative lands in A, then intersect the solution
//!   spaces in grlex beta order, stopping early at zero. Solves run in
//!   parallel; the intersection order is fixed, so output is independent of
//!   thread count.
//! * `catalecticant`: reduce the input coefficient matrix; every vanishing
//!   combination of the degree-d coordinates (zero row of the reduced
//!   augmented matrix) forces the matching combination of catalecticant
//!   columns, whose entries are falling-factorial multiples of the unknown
//!   coefficients, to vanish. One nullspace of the collected equations.
//! * `tensor`: require the co-multiplication image of the unknown form,
//!   expanded over the pair basis of degree-d times degree-r monomials with
//!   binomial coefficients, to lie slice-by-slice in A. One stacked system,
//!   no symbolic tensor variables.
//!
//! All three first shrink the ambient monomial basis to the monomial
//! prolongation of the support of A: a form can only use monomials all of
//! whose order-r quotients stay inside the support. This pruning is what
//! keeps the larger examples inside desk scale.

use crate::error::{Error, Result};
use crate::linalg::{self, SparseVec};
use crate::mono::MonomialSpace;
use crate::monomial::{monomials_of_degree, Monomial};
use crate::poly::Polynomial;
use crate::space::FormSpace;
use crate::Q;
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Derivative,
    Catalecticant,
    Tensor,
}

impl Strategy {
    pub const ALL: [Strategy; 3] = [
        Strategy::Derivative,
        Strategy::Catalecticant,
        Strategy::Tensor,
    ];
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Strategy::Derivative => "derivative",
            Strategy::Catalecticant => "catalecticant",
            Strategy::Tensor => "tensor",
        };
        f.write_str(name)
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Strategy> {
        match s {
            "derivative" => Ok(Strategy::Derivative),
            "catalecticant" => Ok(Strategy::Catalecticant),
            "tensor" => Ok(Strategy::Tensor),
            other => Err(Error::InvalidArgument(format!(
                "unknown strategy '{other}' (expected derivative, catalecticant, or tensor)"
            ))),
        }
    }
}

/// Shared scaffolding: the pruned ambient basis for degree d+r, the degree-d
/// coordinate monomials that derivatives can touch, and the canonical basis
/// of the orthogonal complement of A over those coordinates.
struct Workspace {
    ambient: Vec<Monomial>,
    ambient_index: BTreeMap<Monomial, usize>,
    complement: Vec<SparseVec>,
    qmonos: Vec<Monomial>,
}

fn workspace(a: &FormSpace, r: u32) -> Workspace {
    let support = MonomialSpace::support_of(a);
    let ambient = support
        .prolong(r)
        .expect("r is validated positive")
        .monomials()
        .to_vec();
    let ambient_index: BTreeMap<Monomial, usize> = ambient
        .iter()
        .enumerate()
        .map(|(i, m)| (m.clone(), i))
        .collect();
    // Coordinates that matter: the support of A plus every order-r quotient
    // of an ambient monomial. Complement vectors supported elsewhere give
    // only trivial equations.
    let mut qset: std::collections::BTreeSet<Monomial> =
        support.monomials().iter().cloned().collect();
    for alpha in &ambient {
        for beta in alpha.divisors_of_degree(r) {
            qset.insert(beta.quotient_of(alpha).expect("beta divides alpha"));
        }
    }
    let qmonos: Vec<Monomial> = qset.into_iter().rev().collect();
    let qindex: BTreeMap<&Monomial, usize> =
        qmonos.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let rows = a
        .basis()
        .iter()
        .map(|f| -> SparseVec {
            f.terms().map(|(m, c)| (qindex[m], c.clone())).collect()
        })
        .collect::<Vec<_>>();
    let complement = linalg::nullspace(rows, qmonos.len());
    Workspace {
        ambient,
        ambient_index,
        complement,
        qmonos,
    }
}

impl Workspace {
    /// Equation row forcing the beta-slice of the unknown form, weighted by
    /// `coeff_of`, to be orthogonal to the complement vector `t`.
    fn slice_equation(
        &self,
        t: &SparseVec,
        beta: &Monomial,
        coeff_of: impl Fn(&Monomial, &Monomial) -> Q,
    ) -> SparseVec {
        let mut row = SparseVec::new();
        for (&qi, tq) in t {
            let alpha = self.qmonos[qi].mul(beta);
            if let Some(&ui) = self.ambient_index.get(&alpha) {
                let c = tq * coeff_of(&alpha, beta);
                if !num_traits::Zero::is_zero(&c) {
                    row.insert(ui, c);
                }
            }
        }
        row
    }

    fn to_formspace(&self, rows: Vec<SparseVec>, a: &FormSpace, r: u32) -> FormSpace {
        let polys: Vec<Polynomial> = rows
            .iter()
            .map(|row| {
                Polynomial::from_terms(
                    a.vars().clone(),
                    row.iter().map(|(&i, c)| (self.ambient[i].clone(), c.clone())),
                )
            })
            .collect();
        FormSpace::new(a.vars().clone(), a.degree() + r, polys)
            .expect("prolongation rows are homogeneous")
    }
}

fn falling(alpha: &Monomial, beta: &Monomial) -> Q {
    Q::from(alpha.derivative_coeff(beta))
}

fn splitting(alpha: &Monomial, beta: &Monomial) -> Q {
    Q::from(alpha.binom(beta))
}

/// The r-th prolongation of `a`, canonical regardless of strategy.
pub fn prolong(a: &FormSpace, r: u32, strategy: Strategy) -> Result<FormSpace> {
    if r < 1 {
        return Err(Error::InvalidArgument(
            "prolongation order must be at least 1".into(),
        ));
    }
    if a.vars().is_empty() {
        return Err(Error::InvalidArgument(
            "prolongation needs at least one variable".into(),
        ));
    }
    let ws = workspace(a, r);
    if ws.ambient.is_empty() {
        return Ok(FormSpace::zero(a.vars().clone(), a.degree() + r));
    }
    let betas = monomials_of_degree(a.vars().len(), r);
    let rows = match strategy {
        Strategy::Derivative => {
            let mut current: Option<Vec<SparseVec>> = None;
            // Solve in parallel batches but intersect strictly in beta
            // order, so the result does not depend on thread count.
            for batch in betas.chunks(rayon::current_num_threads().max(1)) {
                let solved: Vec<Vec<SparseVec>> = batch
                    .par_iter()
                    .map(|beta| {
                        let eqs: Vec<SparseVec> = ws
                            .complement
                            .iter()
                            .map(|t| ws.slice_equation(t, beta, falling))
                            .collect();
                        linalg::nullspace(eqs, ws.ambient.len())
                    })
                    .collect();
                for a_beta in solved {
                    current = Some(match current {
                        None => a_beta,
                        Some(cur) => linalg::intersect_spans(&cur, &a_beta),
                    });
                    if current.as_ref().is_some_and(|c| c.is_empty()) {
                        return Ok(FormSpace::zero(a.vars().clone(), a.degree() + r));
                    }
                }
            }
            current.unwrap_or_default()
        }
        Strategy::Catalecticant => {
            let mut eqs = Vec::new();
            for t in &ws.complement {
                for beta in &betas {
                    eqs.push(ws.slice_equation(t, beta, falling));
                }
            }
            linalg::nullspace(eqs, ws.ambient.len())
        }
        Strategy::Tensor => {
            let mut eqs = Vec::new();
            for beta in &betas {
                for t in &ws.complement {
                    eqs.push(ws.slice_equation(t, beta, splitting));
                }
            }
            linalg::nullspace(eqs, ws.ambient.len())
        }
    };
    Ok(ws.to_formspace(rows, a, r))
}

/// Membership in the r-th prolongation decided through derivatives alone:
/// every order-k derivative of `f`, for k up to r, must lie in the matching
/// graded piece of the ideal generated by `a`.
pub fn differential_power_member(f: &Polynomial, a: &FormSpace, r: u32) -> Result<bool> {
    if r < 1 {
        return Err(Error::InvalidArgument(
            "prolongation order must be at least 1".into(),
        ));
    }
    if f.vars() != a.vars() {
        return Err(Error::VarSetMismatch);
    }
    if let Some(d) = f.homogeneous_degree()? {
        if d != a.degree() + r {
            return Err(Error::DegreeMismatch {
                expected: a.degree() + r,
                found: d,
            });
        }
    } else {
        return Ok(true);
    }
    for k in 0..=r {
        let piece = a.ideal_graded_piece(r - k);
        for beta in monomials_of_degree(a.vars().len(), k) {
            let deriv = f.differentiate(&beta);
            if deriv.is_zero() {
                continue;
            }
            if !piece.contains(&deriv)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
