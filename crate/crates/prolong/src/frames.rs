//! Frames: partially labeled subtrees that assemble into members of
//! higher prolongations of the phylogenetic quadrics.
//!
//! A frame labels every edge of a trivalent subtree with 0/1 so that each
//! interior vertex meets an even number of 1-labels. Its active edges are
//! the subtree's pendant edges whose far endpoint is internal to the big
//! tree; each one dangles an unlabeled hanging subtree. A system of d
//! frames pairs up active edges (the function e(i,j)), groups the paired
//! ends into equivalence classes, and fixes an ordered list of completion
//! labelings per class. Summing over permutation tuples, one completion
//! per class member with the product of permutation signs, yields a
//! degree-d form: the system's polynomial. For d = 2 these are exactly
//! the split-matrix 2x2 minors; in general the polynomial lands in the
//! (d-2)-nd prolongation of the quadric space.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, FrameError, Result};
use crate::fourier;
use crate::models::permutations_with_sign;
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::tree::{edge, Edge, Tree};
use crate::Q;

/// A 0/1 labeling of a trivalent subtree, with its active edges.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Frame {
    labels: BTreeMap<Edge, u8>,
    interior: BTreeSet<usize>,
    // active edge -> its far endpoint (the subtree leaf it dangles from)
    active: BTreeMap<Edge, usize>,
}

impl Frame {
    pub fn new(tree: &Tree, labels: BTreeMap<Edge, u8>) -> Result<Frame> {
        Frame::build(tree, labels)
            .map_err(|msg| FrameError::InvalidFrame { index: 0, msg }.into())
    }

    /// Like [`Frame::new`] but reports `index` in the error, for frames
    /// that arrive as part of a numbered collection.
    pub fn numbered(tree: &Tree, labels: BTreeMap<Edge, u8>, index: usize) -> Result<Frame> {
        Frame::build(tree, labels).map_err(|msg| FrameError::InvalidFrame { index, msg }.into())
    }

    fn build(tree: &Tree, labels: BTreeMap<Edge, u8>) -> std::result::Result<Frame, String> {
        if labels.is_empty() {
            return Err("no edges are labeled".into());
        }
        let mut degree: BTreeMap<usize, usize> = BTreeMap::new();
        for (&e, &b) in &labels {
            if !tree.has_edge(e) {
                return Err(format!("{}-{} is not a tree edge", e.0, e.1));
            }
            if b > 1 {
                return Err(format!("edge {}-{} has label {b}; labels are 0 or 1", e.0, e.1));
            }
            *degree.entry(e.0).or_insert(0) += 1;
            *degree.entry(e.1).or_insert(0) += 1;
        }

        // Connectivity of the labeled subgraph.
        let start = labels.keys().next().unwrap().0;
        let mut seen = BTreeSet::new();
        seen.insert(start);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &w in tree.neighbors(v) {
                if labels.contains_key(&edge(v, w)) && seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        if seen.len() != degree.len() {
            return Err("labeled edges do not form a connected subtree".into());
        }

        let interior: BTreeSet<usize> = degree
            .iter()
            .filter(|&(_, &d)| d >= 2)
            .map(|(&v, _)| v)
            .collect();
        if interior.is_empty() {
            return Err("subtree needs at least one interior vertex".into());
        }
        for &v in &interior {
            if degree[&v] != 3 {
                return Err(format!(
                    "vertex {v} has {} labeled edges; interior vertices need all 3",
                    degree[&v]
                ));
            }
            let ones: u8 = tree
                .neighbors(v)
                .iter()
                .map(|&w| labels[&edge(v, w)])
                .sum();
            if ones % 2 != 0 {
                return Err(format!(
                    "vertex {v} meets an odd number of 1-labels, so no completion is a socket"
                ));
            }
        }

        let mut active = BTreeMap::new();
        for &e in labels.keys() {
            for far in [e.0, e.1] {
                if degree[&far] == 1 && !tree.is_leaf(far) {
                    active.insert(e, far);
                }
            }
        }

        Ok(Frame {
            labels,
            interior,
            active,
        })
    }

    pub fn labels(&self) -> &BTreeMap<Edge, u8> {
        &self.labels
    }

    pub fn label(&self, e: Edge) -> Option<u8> {
        self.labels.get(&e).copied()
    }

    /// Vertices of the subtree that keep their full degree 3.
    pub fn interior(&self) -> &BTreeSet<usize> {
        &self.interior
    }

    /// Active edges in increasing order, paired with their far endpoints.
    pub fn active(&self) -> &BTreeMap<Edge, usize> {
        &self.active
    }
}

/// One equivalence class of paired active-edge ends: the shared edge, the
/// member frames in the order they appear, and the ordered completion
/// labelings C(E) of the hanging subtree behind the edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrameClass {
    pub edge: Edge,
    pub members: Vec<usize>,
    pub completions: Vec<BTreeMap<Edge, u8>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrameSystem {
    frames: Vec<Frame>,
    efun: BTreeMap<(usize, usize), Edge>,
    classes: Vec<FrameClass>,
}

/// The hanging subtree behind `e` as seen from `far`: its edges in
/// increasing order, and the internal vertices whose parity the
/// completion must balance.
fn hanging_edges(tree: &Tree, e: Edge, far: usize) -> (Vec<Edge>, Vec<usize>) {
    let comp = tree.component(e, far);
    let edges: Vec<Edge> = tree
        .edges()
        .iter()
        .copied()
        .filter(|&(u, v)| comp.contains(&u) && comp.contains(&v))
        .collect();
    let internals: Vec<usize> = comp
        .iter()
        .copied()
        .filter(|&v| !tree.is_leaf(v))
        .collect();
    (edges, internals)
}

/// All labelings of the hanging subtree behind `e` that extend label `p`
/// on `e` to sockets: every internal vertex behind the edge meets an even
/// number of 1-labels. Ordered lexicographically as bit strings over the
/// sorted hanging edges.
pub fn compatible_completions(tree: &Tree, e: Edge, far: usize, p: u8) -> Vec<BTreeMap<Edge, u8>> {
    let (hedges, internals) = hanging_edges(tree, e, far);
    let h = hedges.len();
    let mut out = Vec::new();
    for mask in 0..1u64 << h {
        let labels: BTreeMap<Edge, u8> = hedges
            .iter()
            .enumerate()
            .map(|(k, &he)| (he, ((mask >> (h - 1 - k)) & 1) as u8))
            .collect();
        let balanced = internals.iter().all(|&v| {
            let ones: u8 = tree
                .neighbors(v)
                .iter()
                .map(|&w| {
                    let f = edge(v, w);
                    if f == e {
                        p
                    } else {
                        labels[&f]
                    }
                })
                .sum();
            ones % 2 == 0
        });
        if balanced {
            out.push(labels);
        }
    }
    out
}

impl FrameSystem {
    /// Validates the compatibility conditions and the completion lists.
    /// `completions` supplies one [`FrameClass`] per equivalence class of
    /// paired active edges, in any order.
    pub fn new(
        tree: &Tree,
        frames: Vec<Frame>,
        efun: BTreeMap<(usize, usize), Edge>,
        completions: Vec<FrameClass>,
    ) -> Result<FrameSystem> {
        let d = frames.len();
        if d == 0 {
            return Err(Error::InvalidArgument("a frame system needs frames".into()));
        }
        for &(i, j) in efun.keys() {
            if !(i < j && j < d) {
                return Err(FrameError::SharedEdge {
                    i,
                    j,
                    msg: "pair is out of range".into(),
                }
                .into());
            }
        }

        // Condition (1): every pair shares its assigned edge, actively and
        // with equal labels; and both frames must hang the same subtree.
        let mut fars: BTreeMap<Edge, usize> = BTreeMap::new();
        for i in 0..d {
            for j in i + 1..d {
                let e = *efun.get(&(i, j)).ok_or(FrameError::SharedEdge {
                    i,
                    j,
                    msg: "no shared edge assigned".into(),
                })?;
                let name = format!("{}-{}", e.0, e.1);
                let (fi, fj) = match (frames[i].active().get(&e), frames[j].active().get(&e)) {
                    (Some(&fi), Some(&fj)) => (fi, fj),
                    _ => {
                        return Err(FrameError::SharedEdge {
                            i,
                            j,
                            msg: format!("edge {name} is not active in both frames"),
                        }
                        .into())
                    }
                };
                if frames[i].label(e) != frames[j].label(e) {
                    return Err(FrameError::SharedEdge {
                        i,
                        j,
                        msg: format!("frames disagree on the label of edge {name}"),
                    }
                    .into());
                }
                if fi != fj {
                    return Err(FrameError::SideMismatch { i, j, edge: name }.into());
                }
                fars.insert(e, fi);
            }
        }

        // Condition (2): pairs sharing an edge through a common frame form
        // cliques.
        let ef = |a: usize, b: usize| efun[&(a.min(b), a.max(b))];
        for a in 0..d {
            for b in 0..d {
                for c in b + 1..d {
                    if b == a || c == a {
                        continue;
                    }
                    let e = ef(a, b);
                    if e == ef(a, c) && ef(b, c) != e {
                        return Err(FrameError::Transitivity {
                            i: b,
                            j: a,
                            k: c,
                            edge: format!("{}-{}", e.0, e.1),
                        }
                        .into());
                    }
                }
            }
        }

        // Condition (3): the pairs involving a frame cover its active set.
        for j in 0..d {
            let covered: BTreeSet<Edge> =
                (0..d).filter(|&i| i != j).map(|i| ef(i, j)).collect();
            for &e in frames[j].active().keys() {
                if !covered.contains(&e) {
                    return Err(FrameError::Coverage {
                        j,
                        edge: format!("{}-{}", e.0, e.1),
                    }
                    .into());
                }
            }
        }

        // Group the (frame, active edge) ends into equivalence classes.
        let nodes: Vec<(usize, Edge)> = (0..d)
            .flat_map(|i| frames[i].active().keys().map(move |&e| (i, e)))
            .collect();
        let node_id: BTreeMap<(usize, Edge), usize> =
            nodes.iter().enumerate().map(|(k, &n)| (n, k)).collect();
        let mut parent: Vec<usize> = (0..nodes.len()).collect();
        fn find(parent: &mut Vec<usize>, x: usize) -> usize {
            if parent[x] != x {
                let root = find(parent, parent[x]);
                parent[x] = root;
            }
            parent[x]
        }
        for (&(i, j), &e) in &efun {
            let a = node_id[&(i, e)];
            let b = node_id[&(j, e)];
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                let (lo, hi) = (ra.min(rb), ra.max(rb));
                parent[hi] = lo;
            }
        }
        let mut grouped: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for k in 0..nodes.len() {
            let root = find(&mut parent, k);
            grouped.entry(root).or_default().push(nodes[k].0);
        }
        let mut derived: Vec<(Edge, Vec<usize>)> = grouped
            .into_iter()
            .map(|(root, members)| (nodes[root].1, members))
            .collect();
        derived.sort_by(|a, b| (&a.1, a.0).cmp(&(&b.1, b.0)));

        // Match the supplied completion lists to the derived classes.
        let mut supplied: BTreeMap<(Edge, Vec<usize>), Vec<BTreeMap<Edge, u8>>> = BTreeMap::new();
        for class in completions {
            let name = format!("{}-{}", class.edge.0, class.edge.1);
            if supplied
                .insert((class.edge, class.members.clone()), class.completions)
                .is_some()
            {
                return Err(FrameError::Completions {
                    edge: name,
                    need: 0,
                    msg: "two completion lists name the same class".into(),
                }
                .into());
            }
        }
        let mut classes = Vec::with_capacity(derived.len());
        for (e, members) in derived {
            let name = format!("{}-{}", e.0, e.1);
            let need = members.len();
            let lists = supplied.remove(&(e, members.clone())).ok_or_else(|| {
                FrameError::Completions {
                    edge: name.clone(),
                    need,
                    msg: "no completion list was supplied for this class".into(),
                }
            })?;
            if lists.len() != need {
                return Err(FrameError::Completions {
                    edge: name,
                    need,
                    msg: format!("{} were supplied", lists.len()),
                }
                .into());
            }
            let far = fars[&e];
            let p = frames[members[0]].label(e).unwrap();
            let (hedges, internals) = hanging_edges(tree, e, far);
            let hedge_set: BTreeSet<Edge> = hedges.iter().copied().collect();
            for lab in &lists {
                let keys: BTreeSet<Edge> = lab.keys().copied().collect();
                if keys != hedge_set || lab.values().any(|&b| b > 1) {
                    return Err(FrameError::Completions {
                        edge: name,
                        need,
                        msg: "a labeling does not cover exactly the hanging subtree with 0/1"
                            .into(),
                    }
                    .into());
                }
                let balanced = internals.iter().all(|&v| {
                    let ones: u8 = tree
                        .neighbors(v)
                        .iter()
                        .map(|&w| {
                            let f = edge(v, w);
                            if f == e {
                                p
                            } else {
                                lab[&f]
                            }
                        })
                        .sum();
                    ones % 2 == 0
                });
                if !balanced {
                    return Err(FrameError::Completions {
                        edge: name,
                        need,
                        msg: "a labeling is not completable to a socket".into(),
                    }
                    .into());
                }
            }
            let distinct: BTreeSet<&BTreeMap<Edge, u8>> = lists.iter().collect();
            if distinct.len() != lists.len() {
                return Err(FrameError::Completions {
                    edge: name,
                    need,
                    msg: "labelings must be distinct".into(),
                }
                .into());
            }
            classes.push(FrameClass {
                edge: e,
                members,
                completions: lists,
            });
        }
        if let Some(((e, _), _)) = supplied.into_iter().next() {
            return Err(FrameError::Completions {
                edge: format!("{}-{}", e.0, e.1),
                need: 0,
                msg: "a completion list names a class that does not exist".into(),
            }
            .into());
        }

        Ok(FrameSystem {
            frames,
            efun,
            classes,
        })
    }

    pub fn frames(&self) -> &[Frame] {
        &self.frames
    }

    pub fn degree(&self) -> usize {
        self.frames.len()
    }

    pub fn efun(&self) -> &BTreeMap<(usize, usize), Edge> {
        &self.efun
    }

    /// Classes in canonical order (by member list, then edge).
    pub fn classes(&self) -> &[FrameClass] {
        &self.classes
    }

    /// The signed sum over permutation tuples: for each class, a
    /// permutation of its completion list assigns the k-th listed labeling
    /// to the k-th member frame; each fully completed frame reads off a
    /// socket variable, and the monomial's sign is the product of the
    /// permutation signs. `tree` must be the tree the system was built on.
    pub fn polynomial(&self, tree: &Tree) -> Polynomial {
        let qvars = fourier::q_varset(tree.n_leaves());
        let nq = qvars.len();
        let perms: Vec<Vec<(Vec<usize>, i8)>> = self
            .classes
            .iter()
            .map(|c| permutations_with_sign(c.members.len()))
            .collect();

        let mut terms: Vec<(Monomial, Q)> = Vec::new();
        let mut choice = vec![0usize; self.classes.len()];
        loop {
            let mut merged: Vec<BTreeMap<Edge, u8>> =
                self.frames.iter().map(|f| f.labels().clone()).collect();
            let mut sign = 1i8;
            for (c, class) in self.classes.iter().enumerate() {
                let (perm, s) = &perms[c][choice[c]];
                sign *= s;
                for (k, &j) in class.members.iter().enumerate() {
                    for (&e, &b) in &class.completions[perm[k]] {
                        merged[j].insert(e, b);
                    }
                }
            }
            let mut exps = vec![0u32; nq];
            for labels in &merged {
                debug_assert_eq!(labels.len(), tree.edges().len());
                let bits = fourier::leaf_bits(tree, labels);
                exps[fourier::index_position(&bits)] += 1;
            }
            terms.push((
                Monomial::from_exps(exps),
                Q::from_integer(i64::from(sign).into()),
            ));

            // Odometer over the permutation tuples.
            let mut c = 0;
            loop {
                if c == self.classes.len() {
                    return Polynomial::from_terms(qvars, terms);
                }
                choice[c] += 1;
                if choice[c] < perms[c].len() {
                    break;
                }
                choice[c] = 0;
                c += 1;
            }
        }
    }
}

/// All frames of the tree with between 1 and `max_active` active edges,
/// sorted canonically. Enumeration is exponential in the tree size; it is
/// meant for small trees.
pub fn enumerate_frames(tree: &Tree, max_active: usize) -> Vec<Frame> {
    let internals = tree.internal_nodes();
    let k = internals.len();
    let mut frames = Vec::new();
    for mask in 1u64..1 << k {
        let set: BTreeSet<usize> = internals
            .iter()
            .enumerate()
            .filter(|&(b, _)| (mask >> b) & 1 == 1)
            .map(|(_, &v)| v)
            .collect();
        if !connected_subset(tree, &set) {
            continue;
        }
        let mut edges: BTreeSet<Edge> = BTreeSet::new();
        for &v in &set {
            for &w in tree.neighbors(v) {
                edges.insert(edge(v, w));
            }
        }
        // Keep only the closed representative: the vertex set must equal
        // the interior of its own subtree, else a smaller set yields the
        // same frame.
        let mut degree: BTreeMap<usize, usize> = BTreeMap::new();
        for &(u, v) in &edges {
            *degree.entry(u).or_insert(0) += 1;
            *degree.entry(v).or_insert(0) += 1;
        }
        let interior: BTreeSet<usize> = degree
            .iter()
            .filter(|&(_, &dg)| dg >= 2)
            .map(|(&v, _)| v)
            .collect();
        if interior != set {
            continue;
        }
        let n_active = edges
            .iter()
            .filter(|&&(u, v)| {
                [u, v]
                    .iter()
                    .any(|w| degree[w] == 1 && !tree.is_leaf(*w))
            })
            .count();
        if n_active == 0 || n_active > max_active {
            continue;
        }

        let edge_list: Vec<Edge> = edges.into_iter().collect();
        let m = edge_list.len();
        for lmask in 0..1u64 << m {
            let labels: BTreeMap<Edge, u8> = edge_list
                .iter()
                .enumerate()
                .map(|(b, &e)| (e, ((lmask >> (m - 1 - b)) & 1) as u8))
                .collect();
            let balanced = set.iter().all(|&v| {
                let ones: u8 = tree
                    .neighbors(v)
                    .iter()
                    .map(|&w| labels[&edge(v, w)])
                    .sum();
                ones % 2 == 0
            });
            if balanced {
                frames.push(Frame::new(tree, labels).expect("enumerated frame is valid"));
            }
        }
    }
    frames.sort();
    frames
}

fn connected_subset(tree: &Tree, set: &BTreeSet<usize>) -> bool {
    let start = match set.iter().next() {
        Some(&v) => v,
        None => return false,
    };
    let mut seen = BTreeSet::new();
    seen.insert(start);
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for &w in tree.neighbors(v) {
            if set.contains(&w) && seen.insert(w) {
                stack.push(w);
            }
        }
    }
    seen.len() == set.len()
}

/// Enumerates every compatible frame system of degree `d`, deterministic
/// and duplicate-free: frame tuples ascend in the canonical frame order,
/// pair assignments and completion subsets are generated lexicographically.
/// Stops after `limit` systems when one is given.
pub fn enumerate_frame_systems(
    tree: &Tree,
    d: usize,
    limit: Option<usize>,
) -> Result<Vec<FrameSystem>> {
    if d < 2 {
        return Err(Error::InvalidArgument(
            "frame systems need degree at least 2".into(),
        ));
    }
    let frames = enumerate_frames(tree, d - 1);
    let nf = frames.len();

    // cand[i][j]: shared active edges with equal labels and a common
    // hanging side.
    let mut cand: Vec<Vec<Vec<Edge>>> = vec![vec![Vec::new(); nf]; nf];
    for i in 0..nf {
        for j in i + 1..nf {
            let shared: Vec<Edge> = frames[i]
                .active()
                .iter()
                .filter(|&(&e, &far)| {
                    frames[j].active().get(&e) == Some(&far)
                        && frames[i].label(e) == frames[j].label(e)
                })
                .map(|(&e, _)| e)
                .collect();
            cand[i][j] = shared.clone();
            cand[j][i] = shared;
        }
    }

    let mut completions_cache: BTreeMap<(Edge, usize, u8), Vec<BTreeMap<Edge, u8>>> =
        BTreeMap::new();
    let mut out = Vec::new();
    let mut tuple: Vec<usize> = Vec::new();
    search_tuples(
        tree,
        &frames,
        &cand,
        d,
        &mut tuple,
        &mut completions_cache,
        limit,
        &mut out,
    )?;
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn search_tuples(
    tree: &Tree,
    frames: &[Frame],
    cand: &[Vec<Vec<Edge>>],
    d: usize,
    tuple: &mut Vec<usize>,
    cache: &mut BTreeMap<(Edge, usize, u8), Vec<BTreeMap<Edge, u8>>>,
    limit: Option<usize>,
    out: &mut Vec<FrameSystem>,
) -> Result<()> {
    if limit.is_some_and(|l| out.len() >= l) {
        return Ok(());
    }
    if tuple.len() == d {
        return assemble_systems(tree, frames, cand, tuple, cache, limit, out);
    }
    let start = tuple.last().map_or(0, |&i| i + 1);
    for next in start..frames.len() {
        if tuple.iter().all(|&i| !cand[i][next].is_empty()) {
            tuple.push(next);
            search_tuples(tree, frames, cand, d, tuple, cache, limit, out)?;
            tuple.pop();
            if limit.is_some_and(|l| out.len() >= l) {
                return Ok(());
            }
        }
    }
    Ok(())
}

fn assemble_systems(
    tree: &Tree,
    frames: &[Frame],
    cand: &[Vec<Vec<Edge>>],
    tuple: &[usize],
    cache: &mut BTreeMap<(Edge, usize, u8), Vec<BTreeMap<Edge, u8>>>,
    limit: Option<usize>,
    out: &mut Vec<FrameSystem>,
) -> Result<()> {
    let d = tuple.len();
    let pairs: Vec<(usize, usize)> = (0..d)
        .flat_map(|i| (i + 1..d).map(move |j| (i, j)))
        .collect();
    let mut assignment: Vec<Edge> = Vec::with_capacity(pairs.len());
    assign_pairs(
        tree, frames, cand, tuple, &pairs, &mut assignment, cache, limit, out,
    )
}

#[allow(clippy::too_many_arguments)]
fn assign_pairs(
    tree: &Tree,
    frames: &[Frame],
    cand: &[Vec<Vec<Edge>>],
    tuple: &[usize],
    pairs: &[(usize, usize)],
    assignment: &mut Vec<Edge>,
    cache: &mut BTreeMap<(Edge, usize, u8), Vec<BTreeMap<Edge, u8>>>,
    limit: Option<usize>,
    out: &mut Vec<FrameSystem>,
) -> Result<()> {
    if limit.is_some_and(|l| out.len() >= l) {
        return Ok(());
    }
    let k = assignment.len();
    if k == pairs.len() {
        return finish_system(tree, frames, tuple, pairs, assignment, cache, limit, out);
    }
    let (i, j) = pairs[k];
    for &e in &cand[tuple[i]][tuple[j]] {
        assignment.push(e);
        if transitive_so_far(pairs, assignment) {
            assign_pairs(
                tree, frames, cand, tuple, pairs, assignment, cache, limit, out,
            )?;
        }
        assignment.pop();
        if limit.is_some_and(|l| out.len() >= l) {
            return Ok(());
        }
    }
    Ok(())
}

/// Checks condition (2) over the pairs assigned so far.
fn transitive_so_far(pairs: &[(usize, usize)], assignment: &[Edge]) -> bool {
    let get = |a: usize, b: usize| -> Option<Edge> {
        let key = (a.min(b), a.max(b));
        pairs
            .iter()
            .position(|&p| p == key)
            .filter(|&k| k < assignment.len())
            .map(|k| assignment[k])
    };
    let d = pairs.last().map_or(0, |&(_, j)| j + 1);
    for a in 0..d {
        for b in 0..d {
            for c in b + 1..d {
                if b == a || c == a {
                    continue;
                }
                if let (Some(eab), Some(eac), Some(ebc)) = (get(a, b), get(a, c), get(b, c)) {
                    if eab == eac && ebc != eab {
                        return false;
                    }
                }
            }
        }
    }
    true
}

#[allow(clippy::too_many_arguments)]
fn finish_system(
    tree: &Tree,
    frames: &[Frame],
    tuple: &[usize],
    pairs: &[(usize, usize)],
    assignment: &[Edge],
    cache: &mut BTreeMap<(Edge, usize, u8), Vec<BTreeMap<Edge, u8>>>,
    limit: Option<usize>,
    out: &mut Vec<FrameSystem>,
) -> Result<()> {
    let d = tuple.len();
    let efun: BTreeMap<(usize, usize), Edge> = pairs
        .iter()
        .copied()
        .zip(assignment.iter().copied())
        .collect();

    // Condition (3): coverage.
    for (j, &fj) in tuple.iter().enumerate() {
        let covered: BTreeSet<Edge> = pairs
            .iter()
            .zip(assignment)
            .filter(|(&(a, b), _)| a == j || b == j)
            .map(|(_, &e)| e)
            .collect();
        if frames[fj].active().keys().any(|e| !covered.contains(e)) {
            return Ok(());
        }
    }

    // Equivalence classes of (position, edge) ends.
    let mut classes: Vec<(Edge, Vec<usize>)> = Vec::new();
    let nodes: Vec<(usize, Edge)> = (0..d)
        .flat_map(|i| frames[tuple[i]].active().keys().map(move |&e| (i, e)))
        .collect();
    let mut parent: Vec<usize> = (0..nodes.len()).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let root = find(parent, parent[x]);
            parent[x] = root;
        }
        parent[x]
    }
    let node_id: BTreeMap<(usize, Edge), usize> =
        nodes.iter().enumerate().map(|(k, &n)| (n, k)).collect();
    for (&(i, j), &e) in pairs.iter().zip(assignment.iter()) {
        let (a, b) = (node_id[&(i, e)], node_id[&(j, e)]);
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            parent[hi] = lo;
        }
    }
    let mut grouped: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for k in 0..nodes.len() {
        let root = find(&mut parent, k);
        grouped.entry(root).or_default().push(k);
    }
    for (root, ks) in grouped {
        let e = nodes[root].1;
        let members: Vec<usize> = ks.iter().map(|&k| nodes[k].0).collect();
        classes.push((e, members));
    }
    classes.sort_by(|a, b| (&a.1, a.0).cmp(&(&b.1, b.0)));

    // Candidate completion lists per class: all size-|E| subsets of the
    // compatible labelings, in lexicographic order.
    let mut per_class_subsets: Vec<Vec<Vec<BTreeMap<Edge, u8>>>> = Vec::new();
    for (e, members) in &classes {
        let pos0 = members[0];
        let far = frames[tuple[pos0]].active()[e];
        let p = frames[tuple[pos0]].label(*e).unwrap();
        let all = cache
            .entry((*e, far, p))
            .or_insert_with(|| compatible_completions(tree, *e, far, p));
        if all.len() < members.len() {
            return Ok(());
        }
        let mut subsets = Vec::new();
        let mut pick: Vec<usize> = Vec::new();
        combinations(all.len(), members.len(), &mut pick, &mut |pick| {
            subsets.push(pick.iter().map(|&x| all[x].clone()).collect());
        });
        per_class_subsets.push(subsets);
    }

    // One system per choice of subsets across classes.
    let mut choice = vec![0usize; classes.len()];
    loop {
        if limit.is_some_and(|l| out.len() >= l) {
            return Ok(());
        }
        let class_list: Vec<FrameClass> = classes
            .iter()
            .zip(&choice)
            .zip(&per_class_subsets)
            .map(|(((e, members), &c), subsets)| FrameClass {
                edge: *e,
                members: members.clone(),
                completions: subsets[c].clone(),
            })
            .collect();
        let system = FrameSystem::new(
            tree,
            tuple.iter().map(|&i| frames[i].clone()).collect(),
            efun.clone(),
            class_list,
        )?;
        out.push(system);

        let mut c = 0;
        loop {
            if c == classes.len() {
                return Ok(());
            }
            choice[c] += 1;
            if choice[c] < per_class_subsets[c].len() {
                break;
            }
            choice[c] = 0;
            c += 1;
        }
    }
}

/// Calls `emit` with every ascending `k`-subset of `0..n`, lexicographically.
fn combinations(n: usize, k: usize, pick: &mut Vec<usize>, emit: &mut impl FnMut(&[usize])) {
    if pick.len() == k {
        emit(pick);
        return;
    }
    let start = pick.last().map_or(0, |&x| x + 1);
    let remaining = k - pick.len();
    for x in start..=n.saturating_sub(remaining) {
        pick.push(x);
        combinations(n, k, pick, emit);
        pick.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::phylo;

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

    fn labels(pairs: &[((usize, usize), u8)]) -> BTreeMap<Edge, u8> {
        pairs.iter().map(|&(e, b)| (edge(e.0, e.1), b)).collect()
    }

    #[test]
    fn frame_validation() {
        let t = quartet();
        // A claw at node 5 with an even number of 1s.
        let f = Frame::new(&t, labels(&[((1, 5), 1), ((2, 5), 1), ((5, 6), 0)])).unwrap();
        assert_eq!(f.interior().iter().copied().collect::<Vec<_>>(), vec![5]);
        assert_eq!(f.active().keys().copied().collect::<Vec<_>>(), vec![(5, 6)]);
        // Odd parity at the interior vertex.
        assert!(Frame::new(&t, labels(&[((1, 5), 1), ((2, 5), 0), ((5, 6), 0)])).is_err());
        // Degree-2 vertex.
        assert!(Frame::new(&t, labels(&[((1, 5), 0), ((2, 5), 0)])).is_err());
        // Single edge has no interior.
        assert!(Frame::new(&t, labels(&[((5, 6), 0)])).is_err());
        // Disconnected.
        assert!(Frame::new(
            &t,
            labels(&[
                ((1, 5), 0),
                ((2, 5), 0),
                ((5, 6), 0),
                ((3, 6), 0),
            ]),
        )
        .is_err());
        // The whole quartet tree is a frame with no active edges.
        let full = Frame::new(
            &t,
            labels(&[
                ((1, 5), 1),
                ((2, 5), 1),
                ((5, 6), 0),
                ((3, 6), 1),
                ((4, 6), 1),
            ]),
        )
        .unwrap();
        assert!(full.active().is_empty());
    }

    #[test]
    fn quartet_systems_are_the_split_minors() {
        let t = quartet();
        let systems = enumerate_frame_systems(&t, 2, None).unwrap();
        assert_eq!(systems.len(), 4);
        let a = phylo::phylo_quadrics(&t).unwrap();
        let polys: Vec<Polynomial> = systems.iter().map(|s| s.polynomial(&t)).collect();
        for p in &polys {
            assert_eq!(p.num_terms(), 2);
            assert!(a.contains(p).unwrap());
        }
        let span =
            crate::space::FormSpace::new(a.vars().clone(), 2, polys.clone()).unwrap();
        assert_eq!(span, a);
        // The two sides of the middle edge give the same minors, so only
        // two distinct quadrics arise.
        let canon: BTreeSet<String> = polys.iter().map(|p| p.monic().to_string()).collect();
        assert_eq!(canon.len(), 2);
    }

    #[test]
    fn quartet_has_no_degree_three_systems() {
        let t = quartet();
        assert!(enumerate_frame_systems(&t, 3, None).unwrap().is_empty());
        assert!(enumerate_frame_systems(&t, 1, None).is_err());
    }

    #[test]
    fn snowflake_cubic_count_and_golden_polynomial() {
        let t = snowflake();
        let systems = enumerate_frame_systems(&t, 3, None).unwrap();
        assert_eq!(systems.len(), 64);
        // Half the systems cancel to zero; the rest have 8 squarefree terms.
        let qvars = fourier::q_varset(6);
        let mut nonzero = Vec::new();
        for s in &systems {
            let p = s.polynomial(&t);
            if p.is_zero() {
                continue;
            }
            assert_eq!(p.num_terms(), 8);
            for m in p.support() {
                assert!(m.exps().iter().all(|&e| e <= 1));
            }
            nonzero.push(p);
        }
        assert_eq!(nonzero.len(), 32);
        // One of them is this cubic, whose eight terms we know exactly.
        let golden = crate::parse::parse_polynomial(
            "q011000*q100010*q111111 - q101000*q010010*q111111 \
             - q011011*q100010*q111100 + q101011*q010010*q111100 \
             - q011000*q101110*q110011 + q101000*q011110*q110011 \
             + q011011*q101110*q110000 - q101011*q011110*q110000",
            &qvars,
        )
        .unwrap();
        let found = systems.iter().any(|s| {
            let p = s.polynomial(&t);
            p == golden || p == golden.scale(&-Q::from_integer(1.into()))
        });
        assert!(found, "the known 8-term cubic must be enumerated");
        // The 32 survivors are pairwise distinct and linearly independent.
        let canon: BTreeSet<String> = nonzero.iter().map(|p| p.monic().to_string()).collect();
        assert_eq!(canon.len(), 32);
        let span = crate::space::FormSpace::new(qvars.clone(), 3, nonzero).unwrap();
        assert_eq!(span.dim(), 32);
    }

    #[test]
    fn snowflake_quartic_is_unique() {
        let t = snowflake();
        let systems = enumerate_frame_systems(&t, 4, None).unwrap();
        assert_eq!(systems.len(), 1);
        let s = &systems[0];
        assert_eq!(s.classes().len(), 6);
        assert!(s.classes().iter().all(|c| c.members.len() == 2));
        // All four frames are central claws: every edge active.
        for f in s.frames() {
            assert_eq!(f.labels().len(), 3);
            assert_eq!(f.active().len(), 3);
        }
        let p = s.polynomial(&t);
        assert_eq!(p.num_terms(), 64);
        for m in p.support() {
            assert!(m.exps().iter().all(|&e| e <= 1));
        }
    }

    #[test]
    fn caterpillar_counts() {
        let t = caterpillar();
        let cubics = enumerate_frame_systems(&t, 3, None).unwrap();
        assert_eq!(cubics.len(), 64);
        let mut canon: BTreeSet<String> = BTreeSet::new();
        for s in &cubics {
            let p = s.polynomial(&t);
            assert_eq!(p.num_terms(), 6);
            canon.insert(p.monic().to_string());
        }
        assert_eq!(canon.len(), 32);

        let quartics = enumerate_frame_systems(&t, 4, None).unwrap();
        assert_eq!(quartics.len(), 4);
        let mut canon: BTreeSet<String> = BTreeSet::new();
        for s in &quartics {
            let p = s.polynomial(&t);
            assert_eq!(p.num_terms(), 24);
            canon.insert(p.monic().to_string());
        }
        assert_eq!(canon.len(), 2);
    }

    #[test]
    fn caterpillar_quartics_are_the_middle_determinants() {
        let t = caterpillar();
        let quartics = enumerate_frame_systems(&t, 4, None).unwrap();
        let (m0, m1) = phylo::split_matrices(&t, (8, 9)).unwrap();
        let qvars = fourier::q_varset(6);
        let det = |m: &Vec<Vec<usize>>| {
            let mut p = Polynomial::zero(qvars.clone());
            for (perm, sign) in permutations_with_sign(4) {
                let mut exps = vec![0u32; qvars.len()];
                for (r, &c) in perm.iter().enumerate() {
                    exps[m[r][c]] += 1;
                }
                p.add_term(
                    Monomial::from_exps(exps),
                    Q::from_integer(i64::from(sign).into()),
                );
            }
            p
        };
        let dets: BTreeSet<String> = [det(&m0), det(&m1)]
            .map(|p| p.monic().to_string())
            .into();
        let found: BTreeSet<String> = quartics
            .iter()
            .map(|s| s.polynomial(&t).monic().to_string())
            .collect();
        assert_eq!(found, dets);
    }

    #[test]
    fn limit_truncates_deterministically() {
        let t = snowflake();
        let all = enumerate_frame_systems(&t, 3, None).unwrap();
        let some = enumerate_frame_systems(&t, 3, Some(5)).unwrap();
        assert_eq!(some.len(), 5);
        assert_eq!(&all[..5], &some[..]);
    }

    #[test]
    fn system_validation_rejects_broken_input() {
        let t = snowflake();
        let systems = enumerate_frame_systems(&t, 3, Some(1)).unwrap();
        let s = &systems[0];
        // Drop one completion list.
        let classes: Vec<FrameClass> = s.classes()[1..].to_vec();
        let err = FrameSystem::new(
            &t,
            s.frames().to_vec(),
            s.efun().clone(),
            classes,
        )
        .unwrap_err();
        assert!(matches!(
            err,
            Error::Frames(FrameError::Completions { .. })
        ));
        // Remove a pair from the function.
        let mut efun = s.efun().clone();
        efun.remove(&(0, 1));
        let err = FrameSystem::new(
            &t,
            s.frames().to_vec(),
            efun,
            s.classes().to_vec(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::Frames(FrameError::SharedEdge { .. })));
    }
}
