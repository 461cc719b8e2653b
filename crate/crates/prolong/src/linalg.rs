//! Sparse exact linear algebra over the rationals.
//!
//! Vectors are sparse maps from column index to nonzero coefficient. The
//! workhorse is [`Echelon`], an incrementally built row-echelon form with
//! unit pivots: inserting a vector reduces it against the pivots already
//! present, so rank, membership, and canonical reduced bases all fall out.
//! Reduced row echelon form is unique for a given row space, which is what
//! makes every basis in this crate canonical and every output reproducible.

use crate::Q;
use num_traits::Zero;
use std::collections::BTreeMap;

/// Sparse vector: column index to nonzero coefficient.
pub type SparseVec = BTreeMap<usize, Q>;

/// target += factor * source, dropping entries that cancel to zero.
pub fn scaled_add(target: &mut SparseVec, factor: &Q, source: &SparseVec) {
    for (&col, val) in source {
        let delta = factor * val;
        match target.entry(col) {
            std::collections::btree_map::Entry::Vacant(e) => {
                if !delta.is_zero() {
                    e.insert(delta);
                }
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let next = e.get().clone() + delta;
                if next.is_zero() {
                    e.remove();
                } else {
                    e.insert(next);
                }
            }
        }
    }
}

/// target -= factor * source.
pub fn scaled_sub(target: &mut SparseVec, factor: &Q, source: &SparseVec) {
    scaled_add(target, &-factor.clone(), source);
}

/// Row-echelon accumulator keyed by pivot column. Every stored row has a
/// unit coefficient at its pivot and no support left of it.
#[derive(Debug, Clone, Default)]
pub struct Echelon {
    rows: BTreeMap<usize, SparseVec>,
}

impl Echelon {
    pub fn new() -> Echelon {
        Echelon::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    /// Reduces `row` by the stored pivots. The remainder has no support on
    /// any pivot column.
    pub fn reduce(&self, mut row: SparseVec) -> SparseVec {
        let mut from = 0usize;
        loop {
            let hit = row
                .range(from..)
                .find(|(col, _)| self.rows.contains_key(col))
                .map(|(&col, val)| (col, val.clone()));
            match hit {
                None => return row,
                Some((col, val)) => {
                    // Pivot rows have no support left of their pivot, so the
                    // subtraction cannot disturb columns already passed.
                    scaled_sub(&mut row, &val, &self.rows[&col]);
                    from = col + 1;
                }
            }
        }
    }

    /// Reduces and, if anything survives, stores the remainder as a new
    /// pivot row. Returns whether the rank grew.
    pub fn insert(&mut self, row: SparseVec) -> bool {
        let mut rem = self.reduce(row);
        let Some((&pivot, lead)) = rem.iter().next() else {
            return false;
        };
        let inv = lead.clone().recip();
        for val in rem.values_mut() {
            *val *= &inv;
        }
        self.rows.insert(pivot, rem);
        true
    }

    pub fn contains(&self, row: SparseVec) -> bool {
        self.reduce(row).is_empty()
    }

    /// The unique reduced row echelon basis of the accumulated row space,
    /// rows ordered by pivot column.
    pub fn into_rref(mut self) -> Vec<SparseVec> {
        let pivots: Vec<usize> = self.rows.keys().copied().collect();
        // Clear later pivot columns out of earlier rows, working upward so
        // each subtracted row is already fully reduced.
        for (i, &p) in pivots.iter().enumerate().rev() {
            let clean = self.rows[&p].clone();
            for &q in &pivots[..i] {
                let row = self.rows.get_mut(&q).expect("pivot row exists");
                if let Some(c) = row.get(&p).cloned() {
                    scaled_sub(row, &c, &clean);
                }
            }
        }
        self.rows.into_values().collect()
    }
}

/// Reduced row echelon basis of the span of `rows`.
pub fn rref(rows: impl IntoIterator<Item = SparseVec>) -> Vec<SparseVec> {
    let mut ech = Echelon::new();
    for row in rows {
        ech.insert(row);
    }
    ech.into_rref()
}

/// Canonical basis of the kernel of the matrix whose rows are `rows` and
/// whose column count is `ncols`: one basis vector per free column, carrying
/// 1 there and the solved pivot entries elsewhere, in free-column order.
pub fn nullspace(rows: impl IntoIterator<Item = SparseVec>, ncols: usize) -> Vec<SparseVec> {
    let reduced = rref(rows);
    let mut pivot_of: BTreeMap<usize, &SparseVec> = BTreeMap::new();
    for row in &reduced {
        let (&p, _) = row.iter().next().expect("rref rows are nonzero");
        pivot_of.insert(p, row);
    }
    let mut basis = Vec::new();
    for free in 0..ncols {
        if pivot_of.contains_key(&free) {
            continue;
        }
        let mut v = SparseVec::new();
        v.insert(free, Q::from(crate::Z::from(1)));
        for (&p, row) in &pivot_of {
            if let Some(c) = row.get(&free) {
                v.insert(p, -c.clone());
            }
        }
        basis.push(v);
    }
    basis
}

/// Canonical basis of the intersection of two spans in a common coordinate
/// space.
pub fn intersect_spans(a: &[SparseVec], b: &[SparseVec]) -> Vec<SparseVec> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    // Solve sum lambda_i a_i - sum mu_j b_j = 0 coordinate by coordinate.
    let mut constraint_rows: BTreeMap<usize, SparseVec> = BTreeMap::new();
    for (i, v) in a.iter().enumerate() {
        for (&coord, val) in v {
            constraint_rows
                .entry(coord)
                .or_default()
                .insert(i, val.clone());
        }
    }
    for (j, v) in b.iter().enumerate() {
        for (&coord, val) in v {
            constraint_rows
                .entry(coord)
                .or_default()
                .insert(a.len() + j, -val.clone());
        }
    }
    let kernel = nullspace(constraint_rows.into_values(), a.len() + b.len());
    let mut ech = Echelon::new();
    for k in kernel {
        let mut vec = SparseVec::new();
        for (&i, lambda) in k.range(..a.len()) {
            scaled_add(&mut vec, lambda, &a[i]);
        }
        ech.insert(vec);
    }
    ech.into_rref()
}
