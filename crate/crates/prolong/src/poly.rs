use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::varset::VarSet;
use crate::Q;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// Sparse polynomial with exact rational coefficients over a shared
/// [`VarSet`]. Zero coefficients are never stored; the zero polynomial has
/// no terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    vars: Arc<VarSet>,
    terms: BTreeMap<Monomial, Q>,
}

impl Polynomial {
    pub fn zero(vars: Arc<VarSet>) -> Polynomial {
        Polynomial {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms<I>(vars: Arc<VarSet>, terms: I) -> Polynomial
    where
        I: IntoIterator<Item = (Monomial, Q)>,
    {
        let mut p = Polynomial::zero(vars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn monomial(vars: Arc<VarSet>, m: Monomial) -> Polynomial {
        Polynomial::from_terms(vars, [(m, Q::one())])
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    /// Terms in grlex-descending order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter().rev()
    }

    pub fn support(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.keys().rev()
    }

    /// Largest monomial present, grlex.
    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.keys().next_back()
    }

    pub fn add_term(&mut self, m: Monomial, c: Q) {
        debug_assert_eq!(m.nvars(), self.vars.len());
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    e.insert(sum);
                }
            }
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &Polynomial, c: &Q) {
        debug_assert_eq!(self.vars, other.vars);
        if c.is_zero() {
            return;
        }
        for (m, a) in &other.terms {
            self.add_term(m.clone(), a * c);
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out.add_scaled(other, &Q::one());
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out.add_scaled(other, &-Q::one());
        out
    }

    pub fn scale(&self, c: &Q) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.vars.clone());
        }
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// Divides through by the leading coefficient, making it 1.
    pub fn monic(&self) -> Polynomial {
        match self.leading_monomial() {
            None => self.clone(),
            Some(m) => {
                let lc = self.coeff(m);
                self.scale(&lc.recip())
            }
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        debug_assert_eq!(self.vars, other.vars);
        let mut out = Polynomial::zero(self.vars.clone());
        for (m, a) in &self.terms {
            for (k, b) in &other.terms {
                out.add_term(m.mul(k), a * b);
            }
        }
        out
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.mul(m), c.clone()))
                .collect(),
        }
    }

    /// Maximum degree among terms; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// The common degree of all terms, if the polynomial is homogeneous.
    /// The zero polynomial is homogeneous of every degree and returns `None`.
    pub fn homogeneous_degree(&self) -> Result<Option<u32>> {
        let mut it = self.terms.keys();
        let first = match it.next() {
            None => return Ok(None),
            Some(m) => m.degree(),
        };
        for m in it {
            if m.degree() != first {
                return Err(Error::NotHomogeneous);
            }
        }
        Ok(Some(first))
    }

    /// Iterated partial derivative by the exponent pattern `beta`.
    pub fn differentiate(&self, beta: &Monomial) -> Polynomial {
        debug_assert_eq!(beta.nvars(), self.vars.len());
        let mut out = Polynomial::zero(self.vars.clone());
        for (m, c) in &self.terms {
            if beta.divides(m) {
                let q = beta.quotient_of(m).expect("checked divisibility");
                let f: Q = Q::from(m.derivative_coeff(beta));
                out.add_term(q, c * f);
            }
        }
        out
    }

    /// Exact evaluation at a rational point given in variable order.
    pub fn evaluate(&self, point: &[Q]) -> Result<Q> {
        if point.len() != self.vars.len() {
            return Err(Error::InvalidArgument(format!(
                "point has {} coordinates, expected {}",
                point.len(),
                self.vars.len()
            )));
        }
        let mut total = Q::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (i, &e) in m.exps().iter().enumerate() {
                for _ in 0..e {
                    v *= &point[i];
                }
            }
            total += v;
        }
        Ok(total)
    }

    /// Rebuilds the polynomial over `target`, sending variable `i` to
    /// variable `var_map[i]`. Distinct variables may collapse to one.
    pub fn map_vars(&self, target: Arc<VarSet>, var_map: &[usize]) -> Polynomial {
        debug_assert_eq!(var_map.len(), self.vars.len());
        let mut out = Polynomial::zero(target.clone());
        for (m, c) in &self.terms {
            let mut exps = vec![0u32; target.len()];
            for (i, &e) in m.exps().iter().enumerate() {
                exps[var_map[i]] += e;
            }
            out.add_term(Monomial::from_exps(exps), c.clone());
        }
        out
    }
}

pub fn format_coeff(c: &Q) -> String {
    if c.denom().is_one() {
        format!("{}", c.numer())
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{}", format_coeff(&mag))?;
            } else if mag.is_one() {
                write!(f, "{}", m.format(&self.vars))?;
            } else {
                write!(f, "{}*{}", format_coeff(&mag), m.format(&self.vars))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Q {
        Q::from(crate::Z::from(n))
    }

    fn vars3() -> Arc<VarSet> {
        VarSet::numbered("x", 3)
    }

    #[test]
    fn terms_combine_and_cancel() {
        let vs = vars3();
        let m = Monomial::from_exps(vec![1, 1, 0]);
        let mut p = Polynomial::zero(vs);
        p.add_term(m.clone(), q(2));
        p.add_term(m.clone(), q(-2));
        assert!(p.is_zero());
    }

    #[test]
    fn display_follows_grammar() {
        let vs = vars3();
        let p = Polynomial::from_terms(
            vs.clone(),
            [
                (Monomial::from_exps(vec![2, 0, 0]), q(1)),
                (Monomial::from_exps(vec![0, 1, 1]), q(-3)),
                (Monomial::from_exps(vec![0, 0, 2]), Q::new(1.into(), 2.into())),
            ],
        );
        assert_eq!(p.to_string(), "x1^2 - 3*x2*x3 + 1/2*x3^2");
        assert_eq!(Polynomial::zero(vs).to_string(), "0");
    }

    #[test]
    fn leading_term_is_grlex_largest() {
        let vs = vars3();
        let p = Polynomial::from_terms(
            vs,
            [
                (Monomial::from_exps(vec![0, 2, 0]), q(5)),
                (Monomial::from_exps(vec![1, 0, 1]), q(7)),
            ],
        );
        assert_eq!(
            p.leading_monomial().unwrap(),
            &Monomial::from_exps(vec![1, 0, 1])
        );
    }

    #[test]
    fn differentiate_tracks_falling_factorials() {
        let vs = vars3();
        // x1^3*x2, d/dx1^2 -> 6*x1*x2
        let p = Polynomial::monomial(vs.clone(), Monomial::from_exps(vec![3, 1, 0]));
        let d = p.differentiate(&Monomial::from_exps(vec![2, 0, 0]));
        assert_eq!(d.to_string(), "6*x1*x2");
        // derivative by an absent variable kills the term
        let d2 = p.differentiate(&Monomial::from_exps(vec![0, 0, 1]));
        assert!(d2.is_zero());
    }

    #[test]
    fn evaluate_is_exact() {
        let vs = vars3();
        let p = Polynomial::from_terms(
            vs,
            [
                (Monomial::from_exps(vec![2, 0, 0]), q(1)),
                (Monomial::from_exps(vec![0, 1, 0]), q(-1)),
            ],
        );
        let half = Q::new(1.into(), 2.into());
        let v = p
            .evaluate(&[half.clone(), half.clone() * half.clone(), q(9)])
            .unwrap();
        assert!(v.is_zero());
    }
}
