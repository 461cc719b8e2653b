//! Unrooted trivalent leaf-labeled trees.
//!
//! Nodes are positive integers: leaves are exactly `1..=n` and internal
//! nodes are exactly `n+1..=2n-2`, where `n >= 3` is the leaf count. Every
//! internal node has degree three. Trees are read from a plain edge list,
//! one `u v` pair per line.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// Undirected tree edge, stored with the smaller endpoint first.
pub type Edge = (usize, usize);

/// Normalizes an endpoint pair into canonical [`Edge`] form.
pub fn edge(u: usize, v: usize) -> Edge {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tree {
    n_leaves: usize,
    edges: Vec<Edge>,
    // adj[v] lists neighbors of node v in increasing order; adj[0] is unused.
    adj: Vec<Vec<usize>>,
}

impl Tree {
    pub fn new(pairs: &[(usize, usize)]) -> Result<Tree> {
        let bad = |msg: String| Error::InvalidTree(msg);
        if pairs.is_empty() {
            return Err(bad("no edges".into()));
        }
        let mut edges = Vec::with_capacity(pairs.len());
        let mut seen = BTreeSet::new();
        let mut max_node = 0usize;
        for &(u, v) in pairs {
            if u == 0 || v == 0 {
                return Err(bad("node labels start at 1".into()));
            }
            if u == v {
                return Err(bad(format!("self-loop at node {u}")));
            }
            let e = edge(u, v);
            if !seen.insert(e) {
                return Err(bad(format!("duplicate edge {}-{}", e.0, e.1)));
            }
            max_node = max_node.max(e.1);
            edges.push(e);
        }
        edges.sort();

        let mut adj = vec![Vec::new(); max_node + 1];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for (v, nbrs) in adj.iter().enumerate().skip(1) {
            if nbrs.is_empty() {
                return Err(bad(format!("node {v} does not appear in any edge")));
            }
        }

        // A tree on k nodes has k-1 edges; with that, connectivity implies
        // acyclicity.
        if edges.len() != max_node - 1 {
            return Err(bad(format!(
                "{} edges on {} nodes cannot form a tree",
                edges.len(),
                max_node
            )));
        }
        let mut reached = vec![false; max_node + 1];
        let mut stack = vec![1];
        reached[1] = true;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !reached[w] {
                    reached[w] = true;
                    stack.push(w);
                }
            }
        }
        if reached.iter().skip(1).any(|r| !r) {
            return Err(bad("graph is not connected".into()));
        }

        let n_leaves = (1..=max_node).filter(|&v| adj[v].len() == 1).count();
        if n_leaves < 3 {
            return Err(bad(format!("{n_leaves} leaves; need at least 3")));
        }
        for v in 1..=max_node {
            let deg = adj[v].len();
            if v <= n_leaves {
                if deg != 1 {
                    return Err(bad(format!(
                        "node {v} has degree {deg}; leaves must be labeled 1..{n_leaves}"
                    )));
                }
            } else if deg != 3 {
                return Err(bad(format!(
                    "internal node {v} has degree {deg}; the tree must be trivalent"
                )));
            }
        }

        Ok(Tree {
            n_leaves,
            edges,
            adj,
        })
    }

    /// Parses an edge list with one `u v` pair per line. Blank lines and
    /// lines starting with `#` are skipped.
    pub fn from_text(text: &str) -> Result<Tree> {
        let mut pairs = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut it = line.split_whitespace();
            let parse = |tok: Option<&str>| -> Result<usize> {
                let tok = tok.ok_or_else(|| {
                    Error::InvalidTree(format!("line {}: expected `u v`", lineno + 1))
                })?;
                tok.parse().map_err(|_| {
                    Error::InvalidTree(format!("line {}: bad node label `{tok}`", lineno + 1))
                })
            };
            let u = parse(it.next())?;
            let v = parse(it.next())?;
            if it.next().is_some() {
                return Err(Error::InvalidTree(format!(
                    "line {}: expected exactly two labels",
                    lineno + 1
                )));
            }
            pairs.push((u, v));
        }
        Tree::new(&pairs)
    }

    pub fn n_leaves(&self) -> usize {
        self.n_leaves
    }

    /// Total node count; labels run `1..=node_count()`.
    pub fn node_count(&self) -> usize {
        self.adj.len() - 1
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        v <= self.n_leaves
    }

    pub fn has_edge(&self, e: Edge) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn internal_nodes(&self) -> Vec<usize> {
        (self.n_leaves + 1..=self.node_count()).collect()
    }

    /// Edges with both endpoints internal.
    pub fn internal_edges(&self) -> Vec<Edge> {
        self.edges
            .iter()
            .copied()
            .filter(|&(u, v)| !self.is_leaf(u) && !self.is_leaf(v))
            .collect()
    }

    /// Nodes of the component of `T - e` containing `from`. `from` must be
    /// an endpoint of `e`.
    pub fn component(&self, e: Edge, from: usize) -> BTreeSet<usize> {
        debug_assert!(from == e.0 || from == e.1);
        let other = if from == e.0 { e.1 } else { e.0 };
        let mut seen = BTreeSet::new();
        seen.insert(from);
        let mut stack = vec![from];
        while let Some(v) = stack.pop() {
            for &w in &self.adj[v] {
                if v == from && w == other {
                    continue;
                }
                if seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        seen
    }

    /// The split `A|B` of the leaf set induced by removing `e`. `A` is the
    /// smaller side; on a tie, the side containing leaf 1. Both sides are
    /// sorted.
    pub fn leaf_split(&self, e: Edge) -> (Vec<usize>, Vec<usize>) {
        let side0 = self.component(e, e.0);
        let mut a: Vec<usize> = side0
            .iter()
            .copied()
            .filter(|&v| self.is_leaf(v))
            .collect();
        let mut b: Vec<usize> = (1..=self.n_leaves)
            .filter(|v| !side0.contains(v))
            .collect();
        let a_first = match a.len().cmp(&b.len()) {
            std::cmp::Ordering::Less => true,
            std::cmp::Ordering::Greater => false,
            std::cmp::Ordering::Equal => a.first() == Some(&1),
        };
        if !a_first {
            std::mem::swap(&mut a, &mut b);
        }
        (a, b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quartet() -> Tree {
        Tree::new(&[(1, 5), (2, 5), (5, 6), (3, 6), (4, 6)]).unwrap()
    }

    fn snowflake() -> Tree {
        Tree::new(&[
            (1, 7),
            (2, 7),
            (3, 8),
            (4, 8),
            (5, 9),
            (6, 9),
            (7, 10),
            (8, 10),
            (9, 10),
        ])
        .unwrap()
    }

    fn caterpillar() -> Tree {
        Tree::new(&[
            (1, 7),
            (2, 7),
            (3, 8),
            (4, 9),
            (5, 10),
            (6, 10),
            (7, 8),
            (8, 9),
            (9, 10),
        ])
        .unwrap()
    }

    #[test]
    fn quartet_shape() {
        let t = quartet();
        assert_eq!(t.n_leaves(), 4);
        assert_eq!(t.node_count(), 6);
        assert_eq!(t.internal_edges(), vec![(5, 6)]);
        assert_eq!(t.leaf_split((5, 6)), (vec![1, 2], vec![3, 4]));
        assert_eq!(t.leaf_split((1, 5)), (vec![1], vec![2, 3, 4]));
    }

    #[test]
    fn three_star_has_no_internal_edges() {
        let t = Tree::new(&[(1, 4), (2, 4), (3, 4)]).unwrap();
        assert_eq!(t.n_leaves(), 3);
        assert!(t.internal_edges().is_empty());
        assert_eq!(t.leaf_split((2, 4)), (vec![2], vec![1, 3]));
    }

    #[test]
    fn snowflake_shape() {
        let t = snowflake();
        assert_eq!(t.n_leaves(), 6);
        assert_eq!(t.internal_nodes(), vec![7, 8, 9, 10]);
        assert_eq!(t.internal_edges(), vec![(7, 10), (8, 10), (9, 10)]);
        assert_eq!(t.leaf_split((7, 10)), (vec![1, 2], vec![3, 4, 5, 6]));
        assert_eq!(t.leaf_split((9, 10)), (vec![5, 6], vec![1, 2, 3, 4]));
    }

    #[test]
    fn caterpillar_shape() {
        let t = caterpillar();
        assert_eq!(t.internal_edges(), vec![(7, 8), (8, 9), (9, 10)]);
        // Middle edge splits evenly; the side with leaf 1 comes first.
        assert_eq!(t.leaf_split((8, 9)), (vec![1, 2, 3], vec![4, 5, 6]));
        let left = t.component((8, 9), 8);
        assert_eq!(left.into_iter().collect::<Vec<_>>(), vec![1, 2, 3, 7, 8]);
    }

    #[test]
    fn text_round_trip() {
        let text = "# quartet\n1 5\n2 5\n5 6\n\n3 6\n4 6\n";
        assert_eq!(Tree::from_text(text).unwrap(), quartet());
        assert!(Tree::from_text("1 5\n2 5 9\n").is_err());
        assert!(Tree::from_text("1 x\n").is_err());
    }

    #[test]
    fn rejects_malformed_trees() {
        // Disconnected: two triangles' worth of labels but a gap in between.
        assert!(Tree::new(&[(1, 4), (2, 4), (3, 5)]).is_err());
        // Internal node of degree 2.
        assert!(Tree::new(&[(1, 4), (2, 4), (4, 5), (3, 5)]).is_err());
        // Leaf labels must precede internal labels.
        assert!(Tree::new(&[(1, 2), (3, 2), (4, 2)]).is_err());
        // Cycle.
        assert!(Tree::new(&[(1, 4), (2, 4), (3, 4), (1, 3)]).is_err());
        assert!(Tree::new(&[(1, 1)]).is_err());
        assert!(Tree::new(&[]).is_err());
    }
}
