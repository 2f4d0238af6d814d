//! Small simple undirected graphs on at most 128 vertices.
//!
//! Adjacency rows are `u128` bitsets, so a row is two machine words and
//! every set operation on neighborhoods is a couple of instructions.

use std::fmt;

pub mod named;

pub const MAX_N: usize = 128;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("vertex count {0} exceeds {MAX_N}")]
    TooManyVertices(usize),
    #[error("edge endpoint {0} out of range for n = {1}")]
    EndpointOutOfRange(usize, usize),
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("vertex {0} has degree {1} > 3")]
    NotSubcubic(usize, usize),
}

/// Bitset over vertex indices.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(pub u128);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn full(n: usize) -> VertexSet {
        if n >= 128 {
            VertexSet(u128::MAX)
        } else {
            VertexSet((1u128 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> VertexSet {
        VertexSet(1u128 << v)
    }

    pub fn contains(self, v: usize) -> bool {
        v < 128 && self.0 >> v & 1 == 1
    }

    pub fn with(self, v: usize) -> VertexSet {
        VertexSet(self.0 | 1u128 << v)
    }

    pub fn without(self, v: usize) -> VertexSet {
        VertexSet(self.0 & !(1u128 << v))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, o: VertexSet) -> VertexSet {
        VertexSet(self.0 | o.0)
    }

    pub fn intersection(self, o: VertexSet) -> VertexSet {
        VertexSet(self.0 & o.0)
    }

    pub fn difference(self, o: VertexSet) -> VertexSet {
        VertexSet(self.0 & !o.0)
    }

    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> BitIter {
        BitIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(it: I) -> Self {
        let mut s = 0u128;
        for v in it {
            s |= 1u128 << v;
        }
        VertexSet(s)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Iterates the set bits of a `u128` in increasing order.
#[derive(Clone)]
pub struct BitIter(pub u128);

impl Iterator for BitIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.0.count_ones() as usize;
        (c, Some(c))
    }
}

impl ExactSizeIterator for BitIter {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GirthResult {
    Finite(usize),
    Acyclic,
}

impl GirthResult {
    /// Acyclic graphs satisfy every lower bound on girth.
    pub fn at_least(self, k: usize) -> bool {
        match self {
            GirthResult::Finite(g) => g >= k,
            GirthResult::Acyclic => true,
        }
    }

    pub fn finite(self) -> Option<usize> {
        match self {
            GirthResult::Finite(g) => Some(g),
            GirthResult::Acyclic => None,
        }
    }
}

impl fmt::Display for GirthResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GirthResult::Finite(g) => write!(f, "{g}"),
            GirthResult::Acyclic => write!(f, "acyclic"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<u128>,
    edge_count: usize,
}

impl Graph {
    pub fn empty(n: usize) -> Result<Graph, GraphError> {
        if n > MAX_N {
            return Err(GraphError::TooManyVertices(n));
        }
        Ok(Graph { adj: vec![0; n], edge_count: 0 })
    }

    /// Builds a graph from an edge list; duplicate edges collapse.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            if u >= n {
                return Err(GraphError::EndpointOutOfRange(u, n));
            }
            if v >= n {
                return Err(GraphError::EndpointOutOfRange(v, n));
            }
            if u == v {
                return Err(GraphError::Loop(u));
            }
            g.adj[u] |= 1u128 << v;
            g.adj[v] |= 1u128 << u;
        }
        g.edge_count = g.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2;
        Ok(g)
    }

    /// Trusted constructor from symmetric rows.
    pub fn from_rows(adj: Vec<u128>) -> Graph {
        let edge_count = adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2;
        debug_assert!(adj.len() <= MAX_N);
        debug_assert!((0..adj.len()).all(|u| adj[u] >> u & 1 == 0));
        debug_assert!((0..adj.len()).all(|u| {
            BitIter(adj[u]).all(|v| v < adj.len() && adj[v] >> u & 1 == 1)
        }));
        Graph { adj, edge_count }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn row(&self, v: usize) -> u128 {
        self.adj[v]
    }

    pub fn rows(&self) -> &[u128] {
        &self.adj
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v])
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n())
    }

    /// Edges as (u, v) with u < v, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count);
        for u in 0..self.n() {
            for v in BitIter(self.adj[u] >> u >> 1) {
                out.push((u, u + 1 + v));
            }
        }
        out
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        (0..self.n()).map(|v| self.degree(v)).collect()
    }

    /// Counts of vertices of degree 0, 1, 2, 3.
    pub fn degree_histogram(&self) -> Result<[usize; 4], GraphError> {
        let mut h = [0usize; 4];
        for v in 0..self.n() {
            let d = self.degree(v);
            if d > 3 {
                return Err(GraphError::NotSubcubic(v, d));
            }
            h[d] += 1;
        }
        Ok(h)
    }

    pub fn is_subcubic(&self) -> bool {
        self.max_degree() <= 3
    }

    /// BFS distances from `s`; `usize::MAX` marks unreachable vertices.
    pub fn distances_from(&self, s: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n()];
        dist[s] = 0;
        let mut frontier = 1u128 << s;
        let mut seen = frontier;
        let mut d = 0;
        while frontier != 0 {
            d += 1;
            let mut next = 0u128;
            for v in BitIter(frontier) {
                next |= self.adj[v];
            }
            next &= !seen;
            for v in BitIter(next) {
                dist[v] = d;
            }
            seen |= next;
            frontier = next;
        }
        dist
    }

    /// Shortest cycle length, by BFS from every vertex.
    pub fn girth(&self) -> GirthResult {
        let n = self.n();
        let mut best = usize::MAX;
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        let mut queue = Vec::with_capacity(n);
        for root in 0..n {
            dist.iter_mut().for_each(|d| *d = usize::MAX);
            queue.clear();
            dist[root] = 0;
            parent[root] = usize::MAX;
            queue.push(root);
            let mut head = 0;
            'bfs: while head < queue.len() {
                let u = queue[head];
                head += 1;
                if 2 * dist[u] + 1 >= best {
                    break;
                }
                for w in BitIter(self.adj[u]) {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push(w);
                    } else if parent[u] != w {
                        best = best.min(dist[u] + dist[w] + 1);
                        if best == 3 {
                            break 'bfs;
                        }
                    }
                }
            }
            if best == 3 {
                break;
            }
        }
        if best == usize::MAX {
            GirthResult::Acyclic
        } else {
            GirthResult::Finite(best)
        }
    }

    pub fn component_of(&self, s: usize) -> VertexSet {
        let mut seen = 1u128 << s;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0u128;
            for v in BitIter(frontier) {
                next |= self.adj[v];
            }
            frontier = next & !seen;
            seen |= frontier;
        }
        VertexSet(seen)
    }

    pub fn components(&self) -> Vec<VertexSet> {
        let mut left = self.vertices();
        let mut out = Vec::new();
        while let Some(v) = left.first() {
            let c = self.component_of(v);
            left = left.difference(c);
            out.push(c);
        }
        out
    }

    /// The 0-vertex graph counts as connected.
    pub fn is_connected(&self) -> bool {
        self.n() == 0 || self.component_of(0).len() == self.n()
    }

    /// Cut vertices via the lowpoint DFS.
    pub fn cut_vertices(&self) -> VertexSet {
        let n = self.n();
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut cut = 0u128;
        let mut t = 0;
        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            // explicit stack of (vertex, parent, remaining neighbors)
            let mut stack: Vec<(usize, usize, u128)> = vec![(root, usize::MAX, self.adj[root])];
            disc[root] = t;
            low[root] = t;
            t += 1;
            let mut root_children = 0;
            while let Some(top) = stack.last_mut() {
                let (u, p, rest) = *top;
                if rest == 0 {
                    stack.pop();
                    if let Some(&(pu, _, _)) = stack.last() {
                        low[pu] = low[pu].min(low[u]);
                        if pu != root && low[u] >= disc[pu] {
                            cut |= 1u128 << pu;
                        }
                    }
                    continue;
                }
                let w = rest.trailing_zeros() as usize;
                top.2 &= rest - 1;
                if disc[w] == usize::MAX {
                    disc[w] = t;
                    low[w] = t;
                    t += 1;
                    if u == root {
                        root_children += 1;
                    }
                    stack.push((w, u, self.adj[w]));
                } else if w != p {
                    low[u] = low[u].min(disc[w]);
                }
            }
            if root_children > 1 {
                cut |= 1u128 << root;
            }
        }
        VertexSet(cut)
    }

    pub fn closed_neighborhood(&self, s: VertexSet) -> VertexSet {
        let mut out = s.0;
        for v in s.iter() {
            out |= self.adj[v];
        }
        VertexSet(out)
    }

    pub fn open_neighborhood(&self, s: VertexSet) -> VertexSet {
        self.closed_neighborhood(s).difference(s)
    }

    /// Induced subgraph on `keep`; returns the graph and the new-to-old index map.
    pub fn induced(&self, keep: VertexSet) -> (Graph, Vec<usize>) {
        let old: Vec<usize> = keep.iter().collect();
        let mut pos = vec![usize::MAX; self.n()];
        for (i, &v) in old.iter().enumerate() {
            pos[v] = i;
        }
        let adj = old
            .iter()
            .map(|&v| {
                BitIter(self.adj[v] & keep.0).fold(0u128, |r, w| r | 1u128 << pos[w])
            })
            .collect();
        (Graph::from_rows(adj), old)
    }

    /// G − S with dense re-indexing; the map sends old indices to new ones.
    pub fn delete_set(&self, s: VertexSet) -> (Graph, Vec<Option<usize>>) {
        let keep = self.vertices().difference(s);
        let (h, old) = self.induced(keep);
        let mut map = vec![None; self.n()];
        for (i, v) in old.into_iter().enumerate() {
            map[v] = Some(i);
        }
        (h, map)
    }

    /// New graph with one extra vertex adjacent to `nbrs`.
    pub fn add_vertex(&self, nbrs: VertexSet) -> Graph {
        let n = self.n();
        assert!(n < MAX_N);
        let mut adj = self.adj.clone();
        for v in nbrs.iter() {
            adj[v] |= 1u128 << n;
        }
        adj.push(nbrs.0);
        Graph { adj, edge_count: self.edge_count + nbrs.len() }
    }

    pub fn with_edge(&self, u: usize, v: usize) -> Graph {
        assert!(u != v && u < self.n() && v < self.n());
        let mut g = self.clone();
        if !g.has_edge(u, v) {
            g.adj[u] |= 1u128 << v;
            g.adj[v] |= 1u128 << u;
            g.edge_count += 1;
        }
        g
    }

    pub fn without_edge(&self, u: usize, v: usize) -> Graph {
        let mut g = self.clone();
        if g.has_edge(u, v) {
            g.adj[u] &= !(1u128 << v);
            g.adj[v] &= !(1u128 << u);
            g.edge_count -= 1;
        }
        g
    }

    /// Relabels so that old vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        let n = self.n();
        let mut adj = vec![0u128; n];
        for u in 0..n {
            adj[perm[u]] = BitIter(self.adj[u]).fold(0, |r, w| r | 1u128 << perm[w]);
        }
        Graph { adj, edge_count: self.edge_count }
    }

    /// Disjoint union, `other` shifted past `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let n = self.n();
        assert!(n + other.n() <= MAX_N);
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|r| r << n));
        Graph { adj, edge_count: self.edge_count + other.edge_count }
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n(), self.edges())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn build_rejects_bad_input() {
        assert_eq!(Graph::new(2, &[(0, 2)]), Err(GraphError::EndpointOutOfRange(2, 2)));
        assert_eq!(Graph::new(2, &[(1, 1)]), Err(GraphError::Loop(1)));
        assert_eq!(Graph::new(129, &[]), Err(GraphError::TooManyVertices(129)));
        assert!(Graph::new(128, &[(0, 127)]).is_ok());
    }

    #[test]
    fn duplicates_collapse() {
        let g = Graph::new(3, &[(0, 1), (1, 0), (0, 1), (1, 2)]).unwrap();
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn k1_and_c8() {
        let k1 = Graph::new(1, &[]).unwrap();
        assert_eq!(k1.degree_sequence(), vec![0]);
        assert!(k1.is_connected());
        assert_eq!(k1.girth(), GirthResult::Acyclic);
        let c8 = named::cycle(8);
        assert!(c8.degree_sequence().iter().all(|&d| d == 2));
        assert_eq!(c8.girth(), GirthResult::Finite(8));
    }

    #[test]
    fn histogram_errors_on_degree_four() {
        let star = Graph::new(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        assert_eq!(star.degree_histogram(), Err(GraphError::NotSubcubic(0, 4)));
    }

    #[test]
    fn cut_vertices_of_path_and_cycle() {
        let p = named::path(5);
        assert_eq!(p.cut_vertices().to_vec(), vec![1, 2, 3]);
        assert!(named::cycle(6).cut_vertices().is_empty());
        let two_triangles =
            Graph::new(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]).unwrap();
        assert_eq!(two_triangles.cut_vertices().to_vec(), vec![2]);
    }

    #[test]
    fn delete_one_vertex_of_c8() {
        let (p, map) = named::cycle(8).delete_set(VertexSet::singleton(3));
        assert_eq!(p.n(), 7);
        assert_eq!(p.edge_count(), 6);
        assert_eq!(p.girth(), GirthResult::Acyclic);
        assert!(p.is_connected());
        assert_eq!(map[3], None);
        assert_eq!(map[4], Some(3));
    }
}
