//! Polarizations of homogeneous forms.
//!
//! The full polarization of a degree-d form is the unique symmetric
//! multilinear form in d blocks of variables restricting to d!-times the
//! form on the diagonal. The partial polarization keeps only two blocks,
//! one of degree d and one of degree r.
//!
//! Both are computed term by term from the closed coefficient formulas, not
//! by expanding a substitution: for a monomial x^alpha of degree d, every
//! way of distributing its variables over the d blocks appears with
//! coefficient alpha!, and in the two-block case the (alpha-beta, beta)
//! split appears with coefficient alpha! * d!/(alpha-beta)! * r!/beta!.

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::varset::VarSet;
use crate::Q;
use std::sync::Arc;

/// A polynomial over `blocks` disjoint copies of a base variable set.
/// Copy `i` of base variable `v` is named `v_i` and the copies are laid out
/// block-major, so block `i` occupies coordinates `(i-1)*n .. i*n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPolynomial {
    base: Arc<VarSet>,
    blocks: usize,
    poly: Polynomial,
}

/// The block-major variable set of `blocks` copies of `base`.
pub fn derived_varset(base: &Arc<VarSet>, blocks: usize) -> Arc<VarSet> {
    let mut names = Vec::with_capacity(base.len() * blocks);
    for i in 1..=blocks {
        for v in base.names() {
            names.push(format!("{v}_{i}"));
        }
    }
    VarSet::new(names).expect("derived names are valid and distinct")
}

impl MultiPolynomial {
    pub fn base(&self) -> &Arc<VarSet> {
        &self.base
    }

    pub fn blocks(&self) -> usize {
        self.blocks
    }

    pub fn poly(&self) -> &Polynomial {
        &self.poly
    }

    /// Coordinate of copy `block` (1-based) of base variable `var`.
    pub fn derived_index(&self, block: usize, var: usize) -> usize {
        debug_assert!(block >= 1 && block <= self.blocks);
        (block - 1) * self.base.len() + var
    }

    /// Sends every copy back to its base variable.
    pub fn diagonal(&self) -> Polynomial {
        let n = self.base.len();
        let map: Vec<usize> = (0..self.poly.vars().len()).map(|i| i % n).collect();
        self.poly.map_vars(self.base.clone(), &map)
    }

    /// Exchanges two blocks (1-based).
    pub fn swap_blocks(&self, a: usize, b: usize) -> MultiPolynomial {
        let n = self.base.len();
        let mut map: Vec<usize> = (0..self.poly.vars().len()).collect();
        for v in 0..n {
            map.swap((a - 1) * n + v, (b - 1) * n + v);
        }
        MultiPolynomial {
            base: self.base.clone(),
            blocks: self.blocks,
            poly: self.poly.map_vars(self.poly.vars().clone(), &map),
        }
    }

    /// Degree in each block of a derived monomial.
    fn block_degrees(&self, m: &Monomial) -> Vec<u32> {
        let n = self.base.len();
        (0..self.blocks)
            .map(|i| m.exps()[i * n..(i + 1) * n].iter().sum())
            .collect()
    }

    /// True when every term has degree exactly one in every block.
    pub fn is_multilinear(&self) -> bool {
        self.poly
            .support()
            .all(|m| self.block_degrees(m).iter().all(|&d| d == 1))
    }

    /// Differentiates by the given base exponent pattern placed in `block`,
    /// then sets that whole block to zero, returning the result over the
    /// remaining single block when only one other block exists.
    pub fn block_derivative_at_zero(&self, block: usize, beta: &Monomial) -> Polynomial {
        let n = self.base.len();
        let mut full = vec![0u32; self.poly.vars().len()];
        for v in 0..n {
            full[(block - 1) * n + v] = beta.exp(v);
        }
        let d = self.poly.differentiate(&Monomial::from_exps(full));
        let lo = (block - 1) * n;
        let hi = block * n;
        let kept = Polynomial::from_terms(
            d.vars().clone(),
            d.terms()
                .filter(|(m, _)| m.exps()[lo..hi].iter().all(|&e| e == 0))
                .map(|(m, c)| (m.clone(), c.clone())),
        );
        // Collapse surviving copies onto the base set.
        let map: Vec<usize> = (0..self.poly.vars().len()).map(|i| i % n).collect();
        kept.map_vars(self.base.clone(), &map)
    }
}

/// Distinct sequences whose multiset of entries is `alpha`; each sequence
/// lists, position by position, which base variable a block receives.
fn multiset_sequences(alpha: &Monomial, d: usize) -> Vec<Vec<usize>> {
    let mut counts: Vec<u32> = alpha.exps().to_vec();
    let mut cur = Vec::with_capacity(d);
    let mut out = Vec::new();
    fn rec(counts: &mut Vec<u32>, cur: &mut Vec<usize>, d: usize, out: &mut Vec<Vec<usize>>) {
        if cur.len() == d {
            out.push(cur.clone());
            return;
        }
        for v in 0..counts.len() {
            if counts[v] > 0 {
                counts[v] -= 1;
                cur.push(v);
                rec(counts, cur, d, out);
                cur.pop();
                counts[v] += 1;
            }
        }
    }
    rec(&mut counts, &mut cur, d, &mut out);
    out
}

/// Full polarization of a homogeneous form of degree d, a multilinear
/// symmetric polynomial in d blocks whose diagonal is d! times the input.
pub fn polarize(f: &Polynomial) -> Result<MultiPolynomial> {
    let d = f.homogeneous_degree()?.unwrap_or(0) as usize;
    let base = f.vars().clone();
    let derived = derived_varset(&base, d);
    let n = base.len();
    let mut poly = Polynomial::zero(derived.clone());
    for (alpha, c) in f.terms() {
        let weight = Q::from(alpha.factorial());
        for seq in multiset_sequences(alpha, d) {
            let mut exps = vec![0u32; derived.len()];
            for (block, &v) in seq.iter().enumerate() {
                exps[block * n + v] += 1;
            }
            poly.add_term(Monomial::from_exps(exps), c * &weight);
        }
    }
    Ok(MultiPolynomial {
        base,
        blocks: d,
        poly,
    })
}

/// Two-block polarization of a homogeneous form of degree d+r: block 1
/// carries degree d, block 2 degree r. For `r = 0` this is d! times the
/// input placed in block 1.
pub fn partial_polarize(f: &Polynomial, d: u32, r: u32) -> Result<MultiPolynomial> {
    if let Some(deg) = f.homogeneous_degree()? {
        if deg != d + r {
            return Err(Error::DegreeMismatch {
                expected: d + r,
                found: deg,
            });
        }
    }
    let base = f.vars().clone();
    let derived = derived_varset(&base, 2);
    let n = base.len();
    let d_fact = Monomial::from_exps(vec![d]).factorial();
    let r_fact = Monomial::from_exps(vec![r]).factorial();
    let mut poly = Polynomial::zero(derived.clone());
    for (alpha, c) in f.terms() {
        let alpha_fact = alpha.factorial();
        for beta in alpha.divisors_of_degree(r) {
            let rest = beta.quotient_of(alpha).expect("beta divides alpha");
            // alpha! * d!/rest! * r!/beta!
            let coeff = Q::new(
                alpha_fact.clone() * &d_fact * &r_fact,
                rest.factorial() * beta.factorial(),
            );
            let mut exps = vec![0u32; derived.len()];
            exps[..n].copy_from_slice(rest.exps());
            exps[n..].copy_from_slice(beta.exps());
            poly.add_term(Monomial::from_exps(exps), c * coeff);
        }
    }
    Ok(MultiPolynomial {
        base,
        blocks: 2,
        poly,
    })
}
