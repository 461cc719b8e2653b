use crate::varset::VarSet;
use crate::Z;
use num_traits::One;
use std::cmp::Ordering;

/// Exponent vector over a fixed variable set.
///
/// Ordering is graded lexicographic: compare total degree first, then the
/// exponent vectors left to right, so with `x1 > x2 > ...` the monomial
/// `x1*x3` sorts above `x2^2` in the same degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl Monomial {
    pub fn one(nvars: usize) -> Monomial {
        Monomial {
            exps: vec![0; nvars],
        }
    }

    pub fn var(nvars: usize, i: usize) -> Monomial {
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Monomial { exps }
    }

    pub fn from_exps(exps: Vec<u32>) -> Monomial {
        Monomial { exps }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i]
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial {
            exps: other
                .exps
                .iter()
                .zip(&self.exps)
                .map(|(b, a)| b - a)
                .collect(),
        })
    }

    /// All degree-`r` monomials dividing `self`, grlex-descending.
    pub fn divisors_of_degree(&self, r: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; self.exps.len()];
        divisors_rec(&self.exps, 0, r, &mut cur, &mut out);
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }

    /// Falling-factorial coefficient picked up when differentiating `x^self`
    /// by `x^beta`: the product of `exp_i * (exp_i - 1) * ... * (exp_i - beta_i + 1)`.
    pub fn derivative_coeff(&self, beta: &Monomial) -> Z {
        let mut c = Z::one();
        for (&a, &b) in self.exps.iter().zip(&beta.exps) {
            debug_assert!(b <= a);
            for k in 0..b {
                c *= Z::from(a - k);
            }
        }
        c
    }

    /// Product of the componentwise binomial coefficients `C(self_i, beta_i)`.
    pub fn binom(&self, beta: &Monomial) -> Z {
        let mut c = Z::one();
        for (&a, &b) in self.exps.iter().zip(&beta.exps) {
            c *= binomial(a, b);
        }
        c
    }

    /// `self_1! * self_2! * ...`.
    pub fn factorial(&self) -> Z {
        let mut c = Z::one();
        for &a in &self.exps {
            c *= factorial(a);
        }
        c
    }

    pub fn format(&self, vars: &VarSet) -> String {
        if self.is_one() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        for (i, &e) in self.exps.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(vars.name(i).to_string()),
                _ => parts.push(format!("{}^{}", vars.name(i), e)),
            }
        }
        parts.join("*")
    }
}

fn divisors_rec(exps: &[u32], i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
    if left == 0 {
        out.push(Monomial {
            exps: cur.clone(),
        });
        return;
    }
    if i == exps.len() {
        return;
    }
    // Degree still to place cannot exceed what the remaining positions hold.
    let tail: u32 = exps[i..].iter().sum();
    if tail < left {
        return;
    }
    let hi = exps[i].min(left);
    for e in 0..=hi {
        cur[i] = e;
        divisors_rec(exps, i + 1, left - e, cur, out);
    }
    cur[i] = 0;
}

pub fn factorial(n: u32) -> Z {
    let mut c = Z::one();
    for k in 2..=n {
        c *= Z::from(k);
    }
    c
}

pub fn binomial(n: u32, k: u32) -> Z {
    if k > n {
        return Z::from(0);
    }
    let k = k.min(n - k);
    let mut num = Z::one();
    let mut den = Z::one();
    for i in 0..k {
        num *= Z::from(n - i);
        den *= Z::from(i + 1);
    }
    num / den
}

/// Number of monomials of degree `d` in `n` variables, `C(n+d-1, d)`,
/// computed without overflow so it can guard ambient sizes.
pub fn monomial_count(n: usize, d: u32) -> u128 {
    if n == 0 {
        return if d == 0 { 1 } else { 0 };
    }
    let n = n as u128;
    let d = d as u128;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..d {
        num = num.saturating_mul(n - 1 + d - i);
        den *= i + 1;
        let g = gcd_u128(num, den);
        num /= g;
        den /= g;
    }
    num / den
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a.max(1)
}

/// All monomials of degree `d` in `nvars` variables, grlex-descending.
pub fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    if nvars == 0 {
        if d == 0 {
            out.push(Monomial { exps: vec![] });
        }
        return out;
    }
    let mut cur = vec![0u32; nvars];
    fill_degree(nvars, 0, d, &mut cur, &mut out);
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

fn fill_degree(nvars: usize, i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
    if i == nvars - 1 {
        cur[i] = left;
        out.push(Monomial { exps: cur.clone() });
        cur[i] = 0;
        return;
    }
    for e in 0..=left {
        cur[i] = e;
        fill_degree(nvars, i + 1, left - e, cur, out);
    }
    cur[i] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(exps: &[u32]) -> Monomial {
        Monomial::from_exps(exps.to_vec())
    }

    #[test]
    fn grlex_orders_by_degree_then_lex() {
        assert!(m(&[1, 0, 1]) > m(&[0, 2, 0])); // x1*x3 > x2^2
        assert!(m(&[0, 0, 3]) > m(&[2, 0, 0])); // degree wins
        assert!(m(&[2, 0, 0]) > m(&[1, 1, 0]));
        assert!(m(&[1, 1, 0]) > m(&[1, 0, 1]));
    }

    #[test]
    fn divisor_enumeration_matches_hand_count() {
        // x1^2*x2: degree-1 divisors are x1 and x2.
        let d1 = m(&[2, 1]).divisors_of_degree(1);
        assert_eq!(d1, vec![m(&[1, 0]), m(&[0, 1])]);
        // degree-2 divisors: x1^2, x1*x2.
        let d2 = m(&[2, 1]).divisors_of_degree(2);
        assert_eq!(d2, vec![m(&[2, 0]), m(&[1, 1])]);
    }

    #[test]
    fn derivative_coeff_is_falling_factorial() {
        // d^2/dx1^2 of x1^3*x2 picks up 3*2 = 6.
        assert_eq!(m(&[3, 1]).derivative_coeff(&m(&[2, 0])), Z::from(6));
        assert_eq!(m(&[3, 1]).derivative_coeff(&m(&[1, 1])), Z::from(3));
    }

    #[test]
    fn degree_enumeration_counts_and_order() {
        let ms = monomials_of_degree(3, 2);
        assert_eq!(ms.len() as u128, monomial_count(3, 2));
        assert_eq!(ms[0], m(&[2, 0, 0]));
        assert_eq!(ms[5], m(&[0, 0, 2]));
        // strictly descending
        for w in ms.windows(2) {
            assert!(w[0] > w[1]);
        }
    }

    #[test]
    fn monomial_count_handles_large_ambients() {
        assert_eq!(monomial_count(32, 4), 52360);
        assert_eq!(monomial_count(4, 3), 20);
    }
}
