//! Linear spaces of homogeneous forms with canonical bases.
//!
//! A [`FormSpace`] stores the reduced row echelon basis of its span over the
//! grlex-ordered monomials of its degree, largest monomial first. RREF is
//! unique, so two spaces are equal exactly when their stored bases are
//! identical, and every operation that returns a space returns it in this
//! canonical shape.

use crate::error::{Error, Result};
use crate::linalg::{self, Echelon, SparseVec};
use crate::monomial::{monomials_of_degree, Monomial};
use crate::poly::Polynomial;
use crate::varset::VarSet;
use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormSpace {
    vars: Arc<VarSet>,
    degree: u32,
    basis: Vec<Polynomial>,
}

/// Columns for a set of polynomials: their support monomials, largest first,
/// so pivot columns correspond to grlex-leading monomials.
fn column_order(polys: &[Polynomial]) -> Vec<Monomial> {
    let mut support: BTreeSet<Monomial> = BTreeSet::new();
    for f in polys {
        support.extend(f.support().cloned());
    }
    support.into_iter().rev().collect()
}

fn to_row(f: &Polynomial, index: &BTreeMap<Monomial, usize>) -> SparseVec {
    f.terms()
        .map(|(m, c)| (index[m], c.clone()))
        .collect()
}

fn from_row(row: &SparseVec, cols: &[Monomial], vars: &Arc<VarSet>) -> Polynomial {
    Polynomial::from_terms(
        vars.clone(),
        row.iter().map(|(&i, c)| (cols[i].clone(), c.clone())),
    )
}

impl FormSpace {
    /// Canonicalizes the span of `gens` as a space of degree-`degree` forms.
    /// Zero polynomials are dropped; anything else must be homogeneous of the
    /// stated degree.
    pub fn new(
        vars: Arc<VarSet>,
        degree: u32,
        gens: impl IntoIterator<Item = Polynomial>,
    ) -> Result<FormSpace> {
        let mut kept = Vec::new();
        for f in gens {
            if f.vars() != &vars {
                return Err(Error::VarSetMismatch);
            }
            match f.homogeneous_degree()? {
                None => continue,
                Some(d) if d == degree => kept.push(f),
                Some(d) => {
                    return Err(Error::DegreeMismatch {
                        expected: degree,
                        found: d,
                    })
                }
            }
        }
        let cols = column_order(&kept);
        let index: BTreeMap<Monomial, usize> = cols
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        let mut ech = Echelon::new();
        for f in &kept {
            ech.insert(to_row(f, &index));
        }
        let basis = ech
            .into_rref()
            .iter()
            .map(|row| from_row(row, &cols, &vars))
            .collect();
        Ok(FormSpace {
            vars,
            degree,
            basis,
        })
    }

    pub fn zero(vars: Arc<VarSet>, degree: u32) -> FormSpace {
        FormSpace {
            vars,
            degree,
            basis: Vec::new(),
        }
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// Canonical basis, leading monomials strictly decreasing in grlex.
    pub fn basis(&self) -> &[Polynomial] {
        &self.basis
    }

    /// All monomials appearing in some basis element, largest first. The
    /// support of the span is basis independent, so this is well defined.
    pub fn monomial_support(&self) -> Vec<Monomial> {
        column_order(&self.basis)
    }

    /// Remainder of `f` after subtracting its projections onto the basis.
    /// Zero remainder means membership.
    pub fn reduce(&self, f: &Polynomial) -> Result<Polynomial> {
        if f.vars() != &self.vars {
            return Err(Error::VarSetMismatch);
        }
        let mut rem = f.clone();
        // Basis leads are strictly decreasing and cleared from the other
        // basis elements, so one pass suffices.
        for b in &self.basis {
            let lead = b.leading_monomial().expect("basis elements are nonzero");
            let c = rem.coeff(lead);
            if !num_traits::Zero::is_zero(&c) {
                rem = rem.sub(&b.scale(&c));
            }
        }
        Ok(rem)
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        if f.is_zero() {
            return Ok(true);
        }
        match f.homogeneous_degree()? {
            Some(d) if d == self.degree => {}
            Some(d) => {
                return Err(Error::DegreeMismatch {
                    expected: self.degree,
                    found: d,
                })
            }
            None => unreachable!("nonzero polynomial has a degree"),
        }
        Ok(self.reduce(f)?.is_zero())
    }

    pub fn contains_space(&self, other: &FormSpace) -> Result<bool> {
        for f in &other.basis {
            if !self.contains(f)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn intersect(&self, other: &FormSpace) -> Result<FormSpace> {
        if self.vars != other.vars {
            return Err(Error::VarSetMismatch);
        }
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: other.degree,
            });
        }
        let all: Vec<Polynomial> = self.basis.iter().chain(&other.basis).cloned().collect();
        let cols = column_order(&all);
        let index: BTreeMap<Monomial, usize> = cols
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        let a: Vec<SparseVec> = self.basis.iter().map(|f| to_row(f, &index)).collect();
        let b: Vec<SparseVec> = other.basis.iter().map(|f| to_row(f, &index)).collect();
        let basis = linalg::intersect_spans(&a, &b)
            .iter()
            .map(|row| from_row(row, &cols, &self.vars))
            .collect();
        Ok(FormSpace {
            vars: self.vars.clone(),
            degree: self.degree,
            basis,
        })
    }

    /// Degree-(d+k) piece of the ideal generated by this space: the span of
    /// m·f over monomials m of degree k and basis elements f.
    pub fn ideal_graded_piece(&self, k: u32) -> FormSpace {
        if self.is_zero() {
            return FormSpace::zero(self.vars.clone(), self.degree + k);
        }
        if k == 0 {
            return self.clone();
        }
        let mut gens = Vec::new();
        for m in monomials_of_degree(self.vars.len(), k) {
            for f in &self.basis {
                gens.push(f.mul_monomial(&m));
            }
        }
        FormSpace::new(self.vars.clone(), self.degree + k, gens)
            .expect("products of homogeneous forms are homogeneous")
    }

    /// The full space of degree-d forms.
    pub fn full(vars: Arc<VarSet>, degree: u32) -> FormSpace {
        let basis = monomials_of_degree(vars.len(), degree)
            .into_iter()
            .map(|m| Polynomial::monomial(vars.clone(), m))
            .collect();
        FormSpace {
            vars,
            degree,
            basis,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;

    fn vars2() -> Arc<VarSet> {
        VarSet::new(["x", "y"]).unwrap()
    }

    fn space(vs: &Arc<VarSet>, degree: u32, gens: &[&str]) -> FormSpace {
        let polys: Vec<Polynomial> = gens
            .iter()
            .map(|s| parse_polynomial(s, vs).unwrap())
            .collect();
        FormSpace::new(vs.clone(), degree, polys).unwrap()
    }

    #[test]
    fn dependent_generators_collapse() {
        let vs = vars2();
        let a = space(&vs, 2, &["x^2", "2*x^2"]);
        assert_eq!(a.dim(), 1);
        assert_eq!(a.basis()[0].to_string(), "x^2");
    }

    #[test]
    fn empty_generators_give_zero_space() {
        let vs = vars2();
        let a = space(&vs, 2, &[]);
        assert_eq!(a.dim(), 0);
        assert!(a.is_zero());
        assert!(a.monomial_support().is_empty());
    }

    #[test]
    fn canonicalization_is_idempotent_and_basis_free() {
        let vs = vars2();
        let a = space(&vs, 2, &["x^2 + x*y", "x*y + y^2"]);
        let b = space(&vs, 2, &["x^2 + 2*x*y + y^2", "x^2 - y^2"]);
        assert_eq!(a, b);
        let again = FormSpace::new(vs.clone(), 2, a.basis().to_vec()).unwrap();
        assert_eq!(again, a);
    }

    #[test]
    fn intersection_of_quadric_spans() {
        let vs = vars2();
        let a = space(&vs, 2, &["x^2", "x*y"]);
        let b = space(&vs, 2, &["x*y", "y^2"]);
        let c = a.intersect(&b).unwrap();
        assert_eq!(c.dim(), 1);
        assert_eq!(c.basis()[0].to_string(), "x*y");
        assert_eq!(a.intersect(&a).unwrap(), a);
        let zero = FormSpace::zero(vs.clone(), 2);
        assert_eq!(a.intersect(&zero).unwrap(), zero);
    }

    #[test]
    fn membership_and_reduction() {
        let vs = vars2();
        let a = space(&vs, 2, &["x^2 - y^2", "x*y"]);
        let f = parse_polynomial("3*x^2 + 5*x*y - 3*y^2", &vs).unwrap();
        assert!(a.contains(&f).unwrap());
        let g = parse_polynomial("x^2", &vs).unwrap();
        assert!(!a.contains(&g).unwrap());
        let wrong = parse_polynomial("x^3", &vs).unwrap();
        assert!(matches!(
            a.contains(&wrong),
            Err(Error::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn ideal_piece_of_single_square() {
        let vs = vars2();
        let a = space(&vs, 2, &["x^2"]);
        let piece = a.ideal_graded_piece(1);
        assert_eq!(piece.degree(), 3);
        assert_eq!(piece.dim(), 2);
        let strings: Vec<String> = piece.basis().iter().map(|f| f.to_string()).collect();
        assert_eq!(strings, ["x^3", "x^2*y"]);
        assert_eq!(a.ideal_graded_piece(0), a);
    }

    #[test]
    fn full_space_has_binomial_dimension() {
        let vs = VarSet::new(["x", "y", "z"]).unwrap();
        let s2 = FormSpace::full(vs.clone(), 2);
        assert_eq!(s2.dim(), 6);
        let canon = FormSpace::new(vs, 2, s2.basis().to_vec()).unwrap();
        assert_eq!(canon, s2);
    }

    #[test]
    fn support_is_sorted_descending() {
        let vs = vars2();
        let a = space(&vs, 2, &["x*y + y^2", "x^2 + y^2"]);
        let names: Vec<String> = a
            .monomial_support()
            .iter()
            .map(|m| m.format(&vs))
            .collect();
        assert_eq!(names, ["x^2", "x*y", "y^2"]);
    }

    #[test]
    fn rejects_inhomogeneous_and_mismatched_degree() {
        let vs = vars2();
        let bad = parse_polynomial("x^2 + x", &vs).unwrap();
        assert!(FormSpace::new(vs.clone(), 2, [bad]).is_err());
        let cubic = parse_polynomial("x^3", &vs).unwrap();
        assert!(matches!(
            FormSpace::new(vs.clone(), 2, [cubic]),
            Err(Error::DegreeMismatch { .. })
        ));
    }
}
