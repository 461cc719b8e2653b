//! Support-block decomposition of a form space.
//!
//! Two support monomials are linked when some canonical basis element uses
//! both; the connected components of that relation partition the support
//! into blocks. Because the reduced basis of a direct sum splits along the
//! blocks, this is the finest partition under which the space equals the
//! direct sum of its intersections with the block coordinate subspaces. The
//! space is minimally generated by circuits exactly when every block carries
//! a one-dimensional piece: those pieces are then the circuits, pairwise
//! disjoint in support.

use crate::mono::MonomialSpace;
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::space::FormSpace;
use std::collections::BTreeMap;

#[derive(Debug, Clone)]
pub struct Decomposition {
    /// Partition of the support, blocks ordered by their largest monomial,
    /// largest first.
    pub blocks: Vec<MonomialSpace>,
    /// The intersection of the space with each block's coordinate subspace.
    pub spaces: Vec<FormSpace>,
    /// True when every block piece is one dimensional.
    pub minimally_generated_by_circuits: bool,
}

impl Decomposition {
    /// The circuits, when the space is minimally generated by them: one
    /// basis form per block.
    pub fn circuits(&self) -> Option<Vec<Polynomial>> {
        if !self.minimally_generated_by_circuits {
            return None;
        }
        Some(
            self.spaces
                .iter()
                .map(|s| s.basis()[0].clone())
                .collect(),
        )
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, i: usize) -> usize {
        if self.parent[i] != i {
            let root = self.find(self.parent[i]);
            self.parent[i] = root;
        }
        self.parent[i]
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

pub fn circuits_and_decomposition(a: &FormSpace) -> Decomposition {
    let support = a.monomial_support();
    let index: BTreeMap<&Monomial, usize> =
        support.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut uf = UnionFind::new(support.len());
    for f in a.basis() {
        let mut monos = f.support();
        if let Some(first) = monos.next() {
            let anchor = index[first];
            for m in monos {
                uf.union(anchor, index[m]);
            }
        }
    }
    let mut grouped: BTreeMap<usize, Vec<Monomial>> = BTreeMap::new();
    for (i, m) in support.iter().enumerate() {
        grouped.entry(uf.find(i)).or_default().push(m.clone());
    }
    // Support is stored largest-first, so the root (smallest index) orders
    // blocks by their largest monomial descending.
    let mut blocks: Vec<MonomialSpace> = grouped
        .into_values()
        .map(|ms| {
            MonomialSpace::new(a.vars().clone(), a.degree(), ms)
                .expect("support monomials share the space degree")
        })
        .collect();
    let mut spaces: Vec<FormSpace> = blocks
        .iter()
        .map(|b| {
            b.to_formspace()
                .intersect(a)
                .expect("block span shares degree and variables")
        })
        .collect();
    // The reduced basis splits along the blocks, so the block dimensions
    // always sum to the full dimension; if that ever failed, collapsing to
    // a single block restores the direct-sum property trivially.
    if spaces.iter().map(FormSpace::dim).sum::<usize>() != a.dim() && blocks.len() > 1 {
        let all = MonomialSpace::new(a.vars().clone(), a.degree(), support)
            .expect("support monomials share the space degree");
        spaces = vec![all
            .to_formspace()
            .intersect(a)
            .expect("support span shares degree and variables")];
        blocks = vec![all];
    }
    let minimally = spaces.iter().all(|s| s.dim() == 1);
    Decomposition {
        blocks,
        spaces,
        minimally_generated_by_circuits: minimally,
    }
}
