//! Built-in generator sets for the worked toric examples.
//!
//! Two families ship with the tool: the 2x2 minors of a generic matrix
//! (relations of the rank-one matrices) and the quartic binomials of the
//! no-three-way-interaction model. Both come with their monomial
//! parametrizations so sampled points land on the right variety.

use crate::error::Result;
use crate::map::MonomialMap;
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::space::FormSpace;
use crate::varset::VarSet;
use crate::{Q, Z};
use std::sync::Arc;

/// Variables m{i}{j} for a generic rows x cols matrix, row major.
pub fn matrix_vars(rows: usize, cols: usize) -> Arc<VarSet> {
    let names: Vec<String> = (1..=rows)
        .flat_map(|i| (1..=cols).map(move |j| format!("m{i}{j}")))
        .collect();
    VarSet::new(names).expect("generated names are valid and distinct")
}

fn matrix_entry(cols: usize, i: usize, j: usize) -> usize {
    i * cols + j
}

/// Determinant of the submatrix on `rows` x `cols` of a generic matrix with
/// `width` columns, as a polynomial over its variable set.
pub fn minor(vars: &Arc<VarSet>, width: usize, rows: &[usize], cols: &[usize]) -> Polynomial {
    assert_eq!(rows.len(), cols.len(), "minors are square");
    let k = rows.len();
    let mut terms = Vec::new();
    for (perm, sign) in permutations_with_sign(k) {
        let mut exps = vec![0u32; vars.len()];
        for (a, &b) in perm.iter().enumerate() {
            exps[matrix_entry(width, rows[a], cols[b])] += 1;
        }
        terms.push((Monomial::from_exps(exps), Q::from(Z::from(sign as i64))));
    }
    Polynomial::from_terms(vars.clone(), terms)
}

/// All k x k minors of the generic rows x cols matrix, row and column
/// subsets in lexicographic order.
pub fn all_minors(rows: usize, cols: usize, k: usize) -> (Arc<VarSet>, Vec<Polynomial>) {
    let vars = matrix_vars(rows, cols);
    let mut out = Vec::new();
    for rsel in subsets(rows, k) {
        for csel in subsets(cols, k) {
            out.push(minor(&vars, cols, &rsel, &csel));
        }
    }
    (vars, out)
}

/// The span of the 2x2 minors of a generic rows x cols matrix.
pub fn segre_minors(rows: usize, cols: usize) -> FormSpace {
    let (vars, minors) = all_minors(rows, cols, 2);
    FormSpace::new(vars, 2, minors).expect("minors are homogeneous quadrics")
}

/// Rank-one parametrization m{i}{j} -> a{i} * b{j}.
pub fn segre_map(rows: usize, cols: usize) -> MonomialMap {
    let params: Vec<String> = (1..=rows)
        .map(|i| format!("a{i}"))
        .chain((1..=cols).map(|j| format!("b{j}")))
        .collect();
    let params = VarSet::new(params).expect("generated names are valid");
    let targets = matrix_vars(rows, cols);
    let mut images = Vec::new();
    for i in 0..rows {
        for j in 0..cols {
            let mut exps = vec![0u32; rows + cols];
            exps[i] += 1;
            exps[rows + j] += 1;
            images.push(Monomial::from_exps(exps));
        }
    }
    MonomialMap::new(params, targets, images).expect("one image per matrix entry")
}

/// Variables x{i}{j}{k} for an l x m x n table, index-lexicographic.
pub fn table_vars(l: usize, m: usize, n: usize) -> Arc<VarSet> {
    let names: Vec<String> = (1..=l)
        .flat_map(|i| {
            (1..=m).flat_map(move |j| (1..=n).map(move |k| format!("x{i}{j}{k}")))
        })
        .collect();
    VarSet::new(names).expect("generated names are valid and distinct")
}

fn table_entry(m: usize, n: usize, i: usize, j: usize, k: usize) -> usize {
    (i * m + j) * n + k
}

/// Quartic binomial generators of the no-three-way-interaction model on an
/// l x m x n table: one binomial per pair of rows, pair of columns, and pair
/// of layers, by index substitution into the 2x2x2 pattern.
pub fn no3way(l: usize, m: usize, n: usize) -> Result<(Arc<VarSet>, Vec<Polynomial>)> {
    if l < 2 || m < 2 || n < 2 {
        return Err(crate::error::Error::InvalidArgument(
            "no-three-way tables need every dimension at least 2".into(),
        ));
    }
    let vars = table_vars(l, m, n);
    let mut gens = Vec::new();
    for i in subsets(l, 2) {
        for j in subsets(m, 2) {
            for k in subsets(n, 2) {
                let e = |a: usize, b: usize, c: usize| table_entry(m, n, a, b, c);
                let mut plus = vec![0u32; vars.len()];
                for (a, b, c) in [
                    (i[0], j[0], k[0]),
                    (i[0], j[1], k[1]),
                    (i[1], j[0], k[1]),
                    (i[1], j[1], k[0]),
                ] {
                    plus[e(a, b, c)] += 1;
                }
                let mut minus = vec![0u32; vars.len()];
                for (a, b, c) in [
                    (i[0], j[0], k[1]),
                    (i[0], j[1], k[0]),
                    (i[1], j[0], k[0]),
                    (i[1], j[1], k[1]),
                ] {
                    minus[e(a, b, c)] += 1;
                }
                gens.push(Polynomial::from_terms(
                    vars.clone(),
                    [
                        (Monomial::from_exps(plus), Q::from(Z::from(1))),
                        (Monomial::from_exps(minus), Q::from(Z::from(-1))),
                    ],
                ));
            }
        }
    }
    Ok((vars, gens))
}

/// Parametrization of the no-three-way model: x{i}{j}{k} -> a{i}{j} * b{i}{k} * c{j}{k}.
pub fn no3way_map(l: usize, m: usize, n: usize) -> MonomialMap {
    let names: Vec<String> = (1..=l)
        .flat_map(|i| (1..=m).map(move |j| format!("a{i}{j}")))
        .chain((1..=l).flat_map(|i| (1..=n).map(move |k| format!("b{i}{k}"))))
        .chain((1..=m).flat_map(|j| (1..=n).map(move |k| format!("c{j}{k}"))))
        .collect();
    let params = VarSet::new(names).expect("generated names are valid");
    let targets = table_vars(l, m, n);
    let nparams = l * m + l * n + m * n;
    let mut images = Vec::new();
    for i in 0..l {
        for j in 0..m {
            for k in 0..n {
                let mut exps = vec![0u32; nparams];
                exps[i * m + j] += 1;
                exps[l * m + i * n + k] += 1;
                exps[l * m + l * n + j * n + k] += 1;
                images.push(Monomial::from_exps(exps));
            }
        }
    }
    MonomialMap::new(params, targets, images).expect("one image per table entry")
}

/// All size-k subsets of 0..n, lexicographic.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(n, k, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(n, k, 0, &mut cur, &mut out);
    out
}

/// All permutations of 0..k with their signs, lexicographic.
pub fn permutations_with_sign(k: usize) -> Vec<(Vec<usize>, i8)> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    let mut used = vec![false; k];
    fn rec(
        k: usize,
        cur: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<(Vec<usize>, i8)>,
    ) {
        if cur.len() == k {
            let mut inversions = 0;
            for a in 0..k {
                for b in (a + 1)..k {
                    if cur[a] > cur[b] {
                        inversions += 1;
                    }
                }
            }
            out.push((cur.clone(), if inversions % 2 == 0 { 1 } else { -1 }));
            return;
        }
        for i in 0..k {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(k, cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    rec(k, &mut cur, &mut used, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mono::MonomialSpace;

    #[test]
    fn segre_minor_counts() {
        let a = segre_minors(3, 3);
        assert_eq!(a.vars().len(), 9);
        assert_eq!(a.dim(), 9);
        let b = segre_minors(3, 4);
        assert_eq!(b.dim(), 18);
    }

    #[test]
    fn determinant_has_factorial_terms() {
        let (vars, dets) = all_minors(3, 3, 3);
        assert_eq!(dets.len(), 1);
        assert_eq!(dets[0].num_terms(), 6);
        let (_, minors34) = all_minors(3, 4, 3);
        assert_eq!(minors34.len(), 4);
        let _ = vars;
    }

    #[test]
    fn minors_vanish_on_rank_one_points() {
        let map = segre_map(3, 3);
        let a = segre_minors(3, 3);
        let params: Vec<Q> = (1..=6).map(|v| Q::from(Z::from(v))).collect();
        let point = map.evaluate(&params).unwrap();
        for f in a.basis() {
            assert!(num_traits::Zero::is_zero(&f.evaluate(&point).unwrap()));
        }
    }

    #[test]
    fn smallest_no3way_is_one_binomial() {
        let (vars, gens) = no3way(2, 2, 2).unwrap();
        assert_eq!(vars.len(), 8);
        assert_eq!(gens.len(), 1);
        assert_eq!(
            gens[0].to_string(),
            "x111*x122*x212*x221 - x112*x121*x211*x222"
        );
    }

    #[test]
    fn no3way_counts_follow_binomials() {
        let (_, gens) = no3way(2, 3, 3).unwrap();
        assert_eq!(gens.len(), 9);
        let (_, gens) = no3way(3, 3, 3).unwrap();
        assert_eq!(gens.len(), 27);
    }

    #[test]
    fn no3way_monomial_prolongation_vanishes() {
        for (l, m, n) in [(2, 2, 2), (2, 2, 3)] {
            let (vars, gens) = no3way(l, m, n).unwrap();
            let a = FormSpace::new(vars, 4, gens).unwrap();
            let support = MonomialSpace::support_of(&a);
            assert!(support.prolong(1).unwrap().is_empty(), "{l}x{m}x{n}");
        }
    }

    #[test]
    fn no3way_binomials_vanish_on_parametrized_points() {
        let (vars, gens) = no3way(2, 2, 3).unwrap();
        let map = no3way_map(2, 2, 3);
        assert_eq!(map.targets(), &vars);
        let params: Vec<Q> = (2..=17).map(|v| Q::from(Z::from(v))).collect();
        assert_eq!(map.params().len(), 16);
        let point = map.evaluate(&params).unwrap();
        for g in &gens {
            assert!(num_traits::Zero::is_zero(&g.evaluate(&point).unwrap()));
        }
    }

    #[test]
    fn permutation_signs_alternate() {
        let perms = permutations_with_sign(3);
        assert_eq!(perms.len(), 6);
        let total: i64 = perms.iter().map(|(_, s)| *s as i64).sum();
        assert_eq!(total, 0);
        assert_eq!(perms[0], (vec![0, 1, 2], 1));
    }
}
