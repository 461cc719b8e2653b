//! The blow-up graph of a quadratic monomial space.
//!
//! Each variable whose square lies in the space becomes r+2 interchangeable
//! copies; every other variable keeps a single vertex. Two vertices are
//! joined exactly when the product of their underlying variables lies in the
//! space. A degree-(r+2) monomial belongs to the monomial prolongation if
//! and only if some multiset of vertices over its variables induces a
//! complete subgraph, so enumerating (r+2)-cliques enumerates the
//! prolongation.

use crate::error::{Error, Result};
use crate::mono::MonomialSpace;
use crate::monomial::{binomial, Monomial};
use crate::varset::VarSet;
use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::sync::Arc;

#[derive(Debug, Clone)]
pub struct BlowupGraph {
    vars: Arc<VarSet>,
    r: u32,
    /// copies[i] = r+2 if the square of variable i is present, else 1.
    copies: Vec<u32>,
    /// Variable pairs i < k whose product is present.
    quad: BTreeSet<(usize, usize)>,
    /// Variables whose square is present.
    sigma: Vec<usize>,
}

/// Vertices are (variable index, copy index), copy indices starting at 1.
pub type Vertex = (usize, u32);

pub fn build_blowup_graph(space: &MonomialSpace, r: u32) -> Result<BlowupGraph> {
    if space.degree() != 2 {
        return Err(Error::InvalidArgument(format!(
            "blow-up graph needs a quadratic monomial space, got degree {}",
            space.degree()
        )));
    }
    let n = space.vars().len();
    let mut copies = vec![1u32; n];
    let mut quad = BTreeSet::new();
    let mut sigma = Vec::new();
    for m in space.monomials() {
        let support: Vec<usize> = (0..n).filter(|&i| m.exp(i) > 0).collect();
        match support.as_slice() {
            [i] => {
                copies[*i] = r + 2;
                sigma.push(*i);
            }
            [i, k] => {
                quad.insert((*i, *k));
            }
            _ => unreachable!("degree-2 monomials touch at most two variables"),
        }
    }
    sigma.sort_unstable();
    Ok(BlowupGraph {
        vars: space.vars().clone(),
        r,
        copies,
        quad,
        sigma,
    })
}

impl BlowupGraph {
    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    pub fn vertices(&self) -> Vec<Vertex> {
        let mut out = Vec::new();
        for (i, &c) in self.copies.iter().enumerate() {
            for j in 1..=c {
                out.push((i, j));
            }
        }
        out
    }

    pub fn vertex_count(&self) -> usize {
        self.copies.iter().map(|&c| c as usize).sum()
    }

    pub fn adjacent(&self, a: Vertex, b: Vertex) -> bool {
        if a == b {
            return false;
        }
        if a.0 == b.0 {
            // copies of one variable form a clique exactly when its square
            // is present, which is exactly when extra copies exist
            return self.copies[a.0] > 1;
        }
        let key = if a.0 < b.0 { (a.0, b.0) } else { (b.0, a.0) };
        self.quad.contains(&key)
    }

    pub fn edge_count(&self) -> usize {
        let mut count = 0usize;
        for &(i, k) in &self.quad {
            count += self.copies[i] as usize * self.copies[k] as usize;
        }
        for &i in &self.sigma {
            let c = self.copies[i] as usize;
            count += c * (c - 1) / 2;
        }
        count
    }

    /// Degeneracy ordering: repeatedly remove a minimum-degree vertex,
    /// smallest vertex first on ties. Copies of one variable are twins, so
    /// ties keep copy indices ascending.
    fn degeneracy_order(&self) -> Vec<Vertex> {
        let verts = self.vertices();
        let mut alive: Vec<bool> = vec![true; verts.len()];
        let mut degree: Vec<usize> = verts
            .iter()
            .map(|&v| verts.iter().filter(|&&w| self.adjacent(v, w)).count())
            .collect();
        let mut order = Vec::with_capacity(verts.len());
        for _ in 0..verts.len() {
            let pick = (0..verts.len())
                .filter(|&i| alive[i])
                .min_by_key(|&i| (degree[i], verts[i]))
                .expect("a live vertex remains");
            alive[pick] = false;
            order.push(verts[pick]);
            for (i, &w) in verts.iter().enumerate() {
                if alive[i] && self.adjacent(verts[pick], w) {
                    degree[i] -= 1;
                }
            }
        }
        order
    }

    /// Monomials of degree r+2 whose vertex multisets induce complete
    /// subgraphs. Copies of a variable are interchangeable, so each monomial
    /// is produced from the canonical clique using the lowest copy indices,
    /// and emitted once.
    pub fn clique_prolong(&self) -> MonomialSpace {
        let order = self.degeneracy_order();
        let k = (self.r + 2) as usize;
        let mut found: BTreeSet<Monomial> = BTreeSet::new();
        let mut counts = vec![0u32; self.vars.len()];
        let mut clique: Vec<Vertex> = Vec::with_capacity(k);
        self.extend_clique(&order, 0, k, &mut clique, &mut counts, &mut found);
        MonomialSpace::new(self.vars.clone(), self.r + 2, found)
            .expect("clique monomials have degree r+2")
    }

    fn extend_clique(
        &self,
        order: &[Vertex],
        from: usize,
        k: usize,
        clique: &mut Vec<Vertex>,
        counts: &mut Vec<u32>,
        found: &mut BTreeSet<Monomial>,
    ) {
        if clique.len() == k {
            found.insert(Monomial::from_exps(counts.clone()));
            return;
        }
        let needed = k - clique.len();
        for pos in from..order.len() {
            if order.len() - pos < needed {
                break;
            }
            let v = order[pos];
            // canonical representative: copies of a variable are taken in
            // increasing copy order
            if v.1 != counts[v.0] + 1 {
                continue;
            }
            if clique.iter().all(|&c| self.adjacent(v, c)) {
                clique.push(v);
                counts[v.0] += 1;
                self.extend_clique(order, pos + 1, k, clique, counts, found);
                counts[v.0] -= 1;
                clique.pop();
            }
        }
    }

    /// Total number of (r+2)-cliques, counting interchangeable copies
    /// separately: each monomial contributes the product of binomial
    /// choices of copies.
    pub fn clique_count(&self) -> u128 {
        use num_traits::ToPrimitive;
        let mut total = 0u128;
        for m in self.clique_prolong().monomials() {
            let mut ways = crate::Z::from(1);
            for i in 0..self.vars.len() {
                ways *= binomial(self.copies[i], m.exp(i));
            }
            total += ways.to_u128().expect("clique count fits u128");
        }
        total
    }

    /// Graphviz text, vertices labeled `i.j` with 1-based variable index
    /// `i` and copy index `j`.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph blowup {\n");
        let verts = self.vertices();
        for &(i, j) in &verts {
            let _ = writeln!(out, "  \"{}.{}\";", i + 1, j);
        }
        for (a, &v) in verts.iter().enumerate() {
            for &w in verts.iter().skip(a + 1) {
                if self.adjacent(v, w) {
                    let _ = writeln!(out, "  \"{}.{}\" -- \"{}.{}\";", v.0 + 1, v.1, w.0 + 1, w.1);
                }
            }
        }
        out.push_str("}\n");
        out
    }
}
