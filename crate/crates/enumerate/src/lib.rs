//! Isomorph-free generation of subcubic graphs by canonical augmentation.
//!
//! A graph on n+1 vertices is produced from its parent on n vertices by adding
//! one vertex joined to a set X of parent vertices.  The child is kept only if
//! the new vertex lies in the automorphism orbit of the child's canonical
//! deletion vertex: among deletable vertices (non-cut vertices when connected
//! output is requested) of minimum `(degree, neighbor degrees)` key, the one
//! with the smallest canonical position.  Children of the same parent are
//! deduplicated by canonical form, so each class appears exactly once.
//!
//! Degree, girth, connectivity and planarity all survive deleting the
//! canonical vertex, so they are checked at every level and prune early.
//! Planarity is tested last since it is the most expensive.

pub mod canon;

use std::collections::HashSet;

use graph_core::{BitIter, Graph, VertexSet};
use rayon::prelude::*;

pub use canon::{canonical_form, canonical_graph, canonical_labeling, is_isomorphic, CanonicalLabel};

pub const MAX_DEGREE: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumFilter {
    pub max_n: usize,
    /// Acyclic graphs always pass.
    pub min_girth: Option<usize>,
    pub require_planar: bool,
    pub require_connected: bool,
}

impl EnumFilter {
    pub fn connected(max_n: usize) -> EnumFilter {
        EnumFilter { max_n, min_girth: None, require_planar: false, require_connected: true }
    }

    pub fn planar(mut self) -> EnumFilter {
        self.require_planar = true;
        self
    }

    pub fn girth(mut self, g: usize) -> EnumFilter {
        self.min_girth = Some(g);
        self
    }

    /// Independent re-check of every filter on one graph.
    pub fn accepts(&self, g: &Graph) -> bool {
        g.n() <= self.max_n
            && g.max_degree() <= MAX_DEGREE
            && self.min_girth.is_none_or(|k| g.girth().at_least(k))
            && (!self.require_connected || g.is_connected())
            && (!self.require_planar || planar::is_planar(g))
    }
}

fn deletion_key(g: &Graph, v: usize) -> (usize, [usize; 3]) {
    let mut nd = [0usize; 3];
    for (i, w) in BitIter(g.row(v)).enumerate().take(3) {
        nd[i] = g.degree(w);
    }
    nd.sort_unstable();
    (g.degree(v), nd)
}

fn deletion_candidates(g: &Graph, connected: bool) -> Vec<usize> {
    let cut = if connected { g.cut_vertices() } else { VertexSet::EMPTY };
    let pool: Vec<usize> = (0..g.n()).filter(|&v| !cut.contains(v)).collect();
    let best = pool.iter().map(|&v| deletion_key(g, v)).min();
    pool.into_iter().filter(|&v| Some(deletion_key(g, v)) == best).collect()
}

/// Accepted, deduplicated children of one parent, in canonical labeling.
fn children(parent: &Graph, f: &EnumFilter) -> Vec<(CanonicalLabel, Graph)> {
    let n = parent.n();
    let open: Vec<usize> = (0..n).filter(|&v| parent.degree(v) < MAX_DEGREE).collect();
    let dist: Vec<Vec<usize>> = match f.min_girth {
        Some(_) => open.iter().map(|&v| parent.distances_from(v)).collect(),
        None => Vec::new(),
    };
    let far = |i: usize, j: usize| match f.min_girth {
        Some(k) => dist[i][open[j]].saturating_add(2) >= k,
        None => true,
    };
    let mut sets: Vec<VertexSet> = Vec::new();
    if !f.require_connected {
        sets.push(VertexSet::EMPTY);
    }
    for a in 0..open.len() {
        sets.push(VertexSet::singleton(open[a]));
        for b in a + 1..open.len() {
            if !far(a, b) {
                continue;
            }
            sets.push(VertexSet::from_iter([open[a], open[b]]));
            for c in b + 1..open.len() {
                if far(a, c) && far(b, c) {
                    sets.push(VertexSet::from_iter([open[a], open[b], open[c]]));
                }
            }
        }
    }
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for x in sets {
        let child = parent.add_vertex(x);
        let new = n;
        let cands = deletion_candidates(&child, f.require_connected);
        if !cands.contains(&new) {
            continue;
        }
        let (lab, label) = canon::canonical_labeling(&child, None);
        if cands.len() > 1 {
            let m = *cands.iter().min_by_key(|&&v| lab[v]).unwrap();
            if m != new {
                let mut cm = vec![0u8; n + 1];
                let mut cn = vec![0u8; n + 1];
                cm[m] = 1;
                cn[new] = 1;
                if canon::canonical_labeling(&child, Some(&cm)).1
                    != canon::canonical_labeling(&child, Some(&cn)).1
                {
                    continue;
                }
            }
        }
        if !seen.insert(label.clone()) {
            continue;
        }
        if f.require_planar && !planar::is_planar(&child) {
            continue;
        }
        out.push((label, child.permuted(&lab)));
    }
    out
}

fn first_level(f: &EnumFilter) -> Vec<Graph> {
    if f.max_n == 0 {
        return Vec::new();
    }
    vec![Graph::empty(1).unwrap()]
}

/// All classes of each exact order 1..=max_n; entry `k` holds order `k + 1`.
/// Within an order, graphs are sorted by canonical label.
pub fn enumerate_by_order(f: &EnumFilter) -> Vec<Vec<Graph>> {
    let mut levels = Vec::new();
    let mut cur = first_level(f);
    for n in 1..=f.max_n {
        if n > 1 {
            let mut next: Vec<(CanonicalLabel, Graph)> =
                cur.par_iter().flat_map_iter(|p| children(p, f)).collect();
            next.sort_by(|a, b| a.0.cmp(&b.0));
            cur = next.into_iter().map(|p| p.1).collect();
        }
        levels.push(cur.clone());
    }
    levels
}

/// Graphs of exactly `n` vertices passing `f` (with `f.max_n` raised to `n`).
pub fn enumerate_exact(f: &EnumFilter, n: usize) -> Vec<Graph> {
    if n == 0 {
        return vec![Graph::empty(0).unwrap()];
    }
    let f = EnumFilter { max_n: n, ..*f };
    enumerate_by_order(&f).pop().unwrap_or_default()
}

/// Every class of order 1..=max_n in stable order.
pub fn enumerate_subcubic(f: &EnumFilter) -> impl Iterator<Item = Graph> {
    enumerate_by_order(f).into_iter().flatten()
}
