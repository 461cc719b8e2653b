//! The binary symmetric phylogenetic model: quadric invariants and the
//! monomial parametrization, both in Fourier coordinates.
//!
//! Every internal edge splits the leaves into two sets A|B and sorts the
//! model variables into two matrices by the parity of the index bits on
//! the A side. The 2x2 minors of all these matrices span the quadric
//! space of the model's toric ideal.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fourier;
use crate::map::MonomialMap;
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::space::FormSpace;
use crate::tree::{Edge, Tree};
use crate::varset::VarSet;

/// Enumerates length-`len` bit strings of the given parity, lexicographically.
fn strings_of_parity(len: usize, parity: u8) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    for mask in 0..1u64 << len {
        let bits: Vec<u8> = (0..len).map(|k| ((mask >> (len - 1 - k)) & 1) as u8).collect();
        if bits.iter().sum::<u8>() % 2 == parity {
            out.push(bits);
        }
    }
    out
}

/// The two split matrices of an internal edge. Entry (r,c) of matrix p is
/// the position (into [`fourier::q_varset`]) of the variable whose index
/// restricts to the r-th parity-p string on the A side and the c-th on the
/// B side, both sides ordered lexicographically.
pub fn split_matrices(tree: &Tree, e: Edge) -> Result<(Vec<Vec<usize>>, Vec<Vec<usize>>)> {
    if !tree.internal_edges().contains(&e) {
        return Err(Error::InvalidArgument(format!(
            "{}-{} is not an internal edge",
            e.0, e.1
        )));
    }
    let n = tree.n_leaves();
    let (a, b) = tree.leaf_split(e);
    let mut matrices = Vec::with_capacity(2);
    for parity in 0..2u8 {
        let rows = strings_of_parity(a.len(), parity);
        let cols = strings_of_parity(b.len(), parity);
        let matrix: Vec<Vec<usize>> = rows
            .iter()
            .map(|ra| {
                cols.iter()
                    .map(|cb| {
                        let mut bits = vec![0u8; n];
                        for (k, &leaf) in a.iter().enumerate() {
                            bits[leaf - 1] = ra[k];
                        }
                        for (k, &leaf) in b.iter().enumerate() {
                            bits[leaf - 1] = cb[k];
                        }
                        fourier::index_position(&bits)
                    })
                    .collect()
            })
            .collect();
        matrices.push(matrix);
    }
    let m1 = matrices.pop().unwrap();
    let m0 = matrices.pop().unwrap();
    Ok((m0, m1))
}

fn quadric(vars: &Arc<VarSet>, p: usize, q: usize, r: usize, s: usize) -> Polynomial {
    // p*s - q*r as a binomial in the four variable positions.
    let n = vars.len();
    let term = |i: usize, j: usize| {
        let mut exps = vec![0u32; n];
        exps[i] += 1;
        exps[j] += 1;
        Monomial::from_exps(exps)
    };
    let one = crate::Q::from_integer(1.into());
    Polynomial::from_terms(
        vars.clone(),
        [(term(p, s), one.clone()), (term(q, r), -one)],
    )
}

/// The span of all 2x2 minors of the split matrices over all internal
/// edges: the quadric invariants of the model. Trees without internal
/// edges (the 3-leaf star) give the zero space.
pub fn phylo_quadrics(tree: &Tree) -> Result<FormSpace> {
    let vars = fourier::q_varset(tree.n_leaves());
    let mut gens = Vec::new();
    for e in tree.internal_edges() {
        let (m0, m1) = split_matrices(tree, e)?;
        for m in [&m0, &m1] {
            let nrows = m.len();
            let ncols = m[0].len();
            for r1 in 0..nrows {
                for r2 in r1 + 1..nrows {
                    for c1 in 0..ncols {
                        for c2 in c1 + 1..ncols {
                            gens.push(quadric(
                                &vars, m[r1][c1], m[r1][c2], m[r2][c1], m[r2][c2],
                            ));
                        }
                    }
                }
            }
        }
    }
    if gens.is_empty() {
        return Ok(FormSpace::zero(vars, 2));
    }
    FormSpace::new(vars, 2, gens)
}

/// The toric parametrization of the model: one parameter per tree edge,
/// and each variable maps to the product of the parameters of its
/// 1-labeled edges.
pub fn phylo_parametrization(tree: &Tree) -> Result<MonomialMap> {
    let edges = tree.edges().to_vec();
    let params = VarSet::new(edges.iter().map(|&(u, v)| format!("t{u}_{v}")))?;
    let targets = fourier::q_varset(tree.n_leaves());
    let mut images = Vec::with_capacity(targets.len());
    for bits in fourier::fourier_indices(tree.n_leaves()) {
        let labels = fourier::edge_labeling(tree, &bits)?;
        let exps: Vec<u32> = edges.iter().map(|e| labels[e] as u32).collect();
        images.push(Monomial::from_exps(exps));
    }
    MonomialMap::new(params, targets, images)
}
