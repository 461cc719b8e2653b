//! Fourier coordinates for the binary symmetric model on a tree.
//!
//! The model on an n-leaf tree lives in 2^(n-1) coordinates q_i indexed by
//! the even-parity binary strings i of length n. Each index induces a 0/1
//! labeling of every tree edge; the 1-labeled edges form a disjoint union
//! of leaf-to-leaf paths, and that correspondence is a bijection.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::tree::{Edge, Tree};
use crate::varset::VarSet;

/// All even-parity binary strings of length `n`, in lexicographic order.
pub fn fourier_indices(n: usize) -> Vec<Vec<u8>> {
    assert!(n >= 1 && n < usize::BITS as usize);
    let mut out = Vec::with_capacity(1 << (n - 1));
    for head in 0..1u64 << (n - 1) {
        let mut bits: Vec<u8> = (0..n - 1)
            .map(|k| ((head >> (n - 2 - k)) & 1) as u8)
            .collect();
        let parity = bits.iter().sum::<u8>() % 2;
        bits.push(parity);
        out.push(bits);
    }
    out
}

/// Variable name for an index: `q` followed by its bits.
pub fn index_name(bits: &[u8]) -> String {
    let mut s = String::with_capacity(bits.len() + 1);
    s.push('q');
    for &b in bits {
        s.push(if b == 0 { '0' } else { '1' });
    }
    s
}

/// The 2^(n-1) model variables, ordered like [`fourier_indices`].
pub fn q_varset(n: usize) -> Arc<VarSet> {
    let names: Vec<String> = fourier_indices(n).iter().map(|b| index_name(b)).collect();
    VarSet::new(names).expect("generated names are valid")
}

/// Position of an even-parity index within [`fourier_indices`]. The last
/// bit is redundant, so the position is the integer value of the first
/// n-1 bits.
pub fn index_position(bits: &[u8]) -> usize {
    debug_assert_eq!(bits.iter().sum::<u8>() % 2, 0, "index must have even parity");
    bits[..bits.len() - 1]
        .iter()
        .fold(0usize, |acc, &b| (acc << 1) | b as usize)
}

/// The edge labeling induced by an even-parity index: each edge is labeled
/// by the parity of the index bits on one side of the edge's leaf split.
/// Even parity of the whole index makes the choice of side irrelevant.
pub fn edge_labeling(tree: &Tree, bits: &[u8]) -> Result<BTreeMap<Edge, u8>> {
    if bits.len() != tree.n_leaves() {
        return Err(Error::InvalidArgument(format!(
            "index has {} bits but the tree has {} leaves",
            bits.len(),
            tree.n_leaves()
        )));
    }
    let mut labels = BTreeMap::new();
    for &e in tree.edges() {
        let (a, _) = tree.leaf_split(e);
        let parity = a.iter().map(|&leaf| bits[leaf - 1]).sum::<u8>() % 2;
        labels.insert(e, parity);
    }
    Ok(labels)
}

/// Recovers the index bits from a full edge labeling: leaf j's bit is the
/// label of its pendant edge.
pub fn leaf_bits(tree: &Tree, labels: &BTreeMap<Edge, u8>) -> Vec<u8> {
    (1..=tree.n_leaves())
        .map(|leaf| {
            let nbr = tree.neighbors(leaf)[0];
            labels[&crate::tree::edge(leaf, nbr)]
        })
        .collect()
}

/// Whether a full 0/1 edge labeling is a socket: the 1-labeled edges form
/// a disjoint union of leaf-to-leaf paths, i.e. every internal node meets
/// an even number of 1-labeled edges.
pub fn is_socket(tree: &Tree, labels: &BTreeMap<Edge, u8>) -> bool {
    if labels.len() != tree.edges().len() {
        return false;
    }
    tree.internal_nodes().iter().all(|&v| {
        let ones: u8 = tree
            .neighbors(v)
            .iter()
            .map(|&w| labels[&crate::tree::edge(v, w)])
            .sum();
        ones % 2 == 0
    })
}
