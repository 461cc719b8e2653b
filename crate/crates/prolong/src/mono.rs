//! Monomial spaces and their prolongations.
//!
//! For a set M of degree-d monomials, the degree-(d+r) monomial x^alpha
//! belongs to the prolongation exactly when x^(alpha-beta) lies in M for
//! every degree-r divisor x^beta of x^alpha. This is a pure divisibility
//! computation, no linear algebra, and it bounds the support of the
//! prolongation of any form space with support M. That bound is what makes
//! the larger examples tractable: the ambient space is cut to the monomial
//! prolongation before any elimination starts.

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::space::FormSpace;
use crate::varset::VarSet;
use std::collections::BTreeSet;
use std::sync::Arc;

/// A set of distinct monomials of one degree, stored largest first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialSpace {
    vars: Arc<VarSet>,
    degree: u32,
    monomials: Vec<Monomial>,
}

impl MonomialSpace {
    pub fn new(
        vars: Arc<VarSet>,
        degree: u32,
        monomials: impl IntoIterator<Item = Monomial>,
    ) -> Result<MonomialSpace> {
        let mut set = BTreeSet::new();
        for m in monomials {
            if m.nvars() != vars.len() {
                return Err(Error::VarSetMismatch);
            }
            if m.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: m.degree(),
                });
            }
            set.insert(m);
        }
        Ok(MonomialSpace {
            vars,
            degree,
            monomials: set.into_iter().rev().collect(),
        })
    }

    /// The monomial support M(A) of a form space.
    pub fn support_of(space: &FormSpace) -> MonomialSpace {
        MonomialSpace {
            vars: space.vars().clone(),
            degree: space.degree(),
            monomials: space.monomial_support(),
        }
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    /// Monomials, grlex largest first.
    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.monomials.binary_search_by(|probe| m.cmp(probe)).is_ok()
    }

    /// The space of forms spanned by these monomials.
    pub fn to_formspace(&self) -> FormSpace {
        let polys: Vec<Polynomial> = self
            .monomials
            .iter()
            .map(|m| Polynomial::monomial(self.vars.clone(), m.clone()))
            .collect();
        FormSpace::new(self.vars.clone(), self.degree, polys)
            .expect("monomials are homogeneous of the stated degree")
    }

    /// Degree-(d+r) monomials all of whose degree-r quotients stay in the
    /// set. Every candidate is a product of a member with a degree-r
    /// monomial, so only those products are examined.
    pub fn prolong(&self, r: u32) -> Result<MonomialSpace> {
        if r < 1 {
            return Err(Error::InvalidArgument(
                "prolongation order must be at least 1".into(),
            ));
        }
        let members: BTreeSet<&Monomial> = self.monomials.iter().collect();
        let mut candidates: BTreeSet<Monomial> = BTreeSet::new();
        for m in &self.monomials {
            for b in crate::monomial::monomials_of_degree(self.vars.len(), r) {
                candidates.insert(m.mul(&b));
            }
        }
        let mut kept = Vec::new();
        for alpha in candidates.into_iter().rev() {
            let ok = alpha.divisors_of_degree(r).iter().all(|beta| {
                let q = beta.quotient_of(&alpha).expect("beta divides alpha");
                members.contains(&q)
            });
            if ok {
                kept.push(alpha);
            }
        }
        Ok(MonomialSpace {
            vars: self.vars.clone(),
            degree: self.degree + r,
            monomials: kept,
        })
    }
}
