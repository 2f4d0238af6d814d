//! Planarity testing with a rotation-system witness, and face extraction.
//!
//! Each biconnected block is embedded by the Demoucron–Malgrange–Pertuiset
//! face-insertion method; block rotations are then concatenated at cut
//! vertices, which keeps the combined rotation system planar.

use std::collections::HashSet;

use graph_core::{BitIter, Graph, VertexSet};

/// Cyclic neighbor order at each vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    rot: Vec<Vec<usize>>,
}

/// A facial walk, as the cyclic list of darts (tail, head).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub darts: Vec<(usize, usize)>,
    /// Set only for the face around an isolated vertex.
    pub isolated: Option<usize>,
}

impl Face {
    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }

    /// Vertices in walk order, with repetitions.
    pub fn walk(&self) -> Vec<usize> {
        match self.isolated {
            Some(v) => vec![v],
            None => self.darts.iter().map(|d| d.0).collect(),
        }
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.walk().into_iter().collect()
    }

    /// Number of times `v` occurs on the walk.
    pub fn multiplicity(&self, v: usize) -> usize {
        self.darts.iter().filter(|d| d.0 == v).count()
    }

    /// True when no vertex repeats along the walk.
    pub fn is_cycle(&self) -> bool {
        let w = self.walk();
        w.len() >= 3 && self.vertex_set().len() == w.len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KuratowskiKind {
    K5,
    K33,
    Other,
}

/// Minimal nonplanar subgraph: deleting any of its edges makes it planar.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonPlanar {
    pub witness_edges: Vec<(usize, usize)>,
    pub kind: KuratowskiKind,
}

impl Embedding {
    pub fn from_rotations(rot: Vec<Vec<usize>>) -> Embedding {
        Embedding { rot }
    }

    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rot[v]
    }

    pub fn n(&self) -> usize {
        self.rot.len()
    }

    /// Neighbor following `u` in the rotation at `v`.
    pub fn succ(&self, v: usize, u: usize) -> usize {
        let r = &self.rot[v];
        let i = r.iter().position(|&x| x == u).expect("dart not in rotation");
        r[(i + 1) % r.len()]
    }

    /// Traces faces: dart (u,v) is followed by (v, succ_v(u)).
    pub fn faces(&self) -> Vec<Face> {
        let n = self.rot.len();
        let mut seen: HashSet<(usize, usize)> = HashSet::new();
        let mut out = Vec::new();
        for u in 0..n {
            if self.rot[u].is_empty() {
                out.push(Face { darts: Vec::new(), isolated: Some(u) });
                continue;
            }
            for &v in &self.rot[u] {
                if seen.contains(&(u, v)) {
                    continue;
                }
                let mut darts = Vec::new();
                let (mut a, mut b) = (u, v);
                while seen.insert((a, b)) {
                    darts.push((a, b));
                    let c = self.succ(b, a);
                    a = b;
                    b = c;
                }
                out.push(Face { darts, isolated: None });
            }
        }
        out
    }

    /// Checks that the rotations describe exactly the edges of `g`.
    pub fn matches(&self, g: &Graph) -> bool {
        self.rot.len() == g.n()
            && (0..g.n()).all(|v| {
                let r: VertexSet = self.rot[v].iter().copied().collect();
                r == g.neighbors(v) && r.len() == self.rot[v].len()
            })
    }

    /// Euler's formula summed over components: V − E + F = 2·C.
    pub fn euler_ok(&self, g: &Graph) -> bool {
        let c = g.components().len() as i64;
        let f = self.faces().len() as i64;
        g.n() as i64 - g.edge_count() as i64 + f == 2 * c
    }
}

/// Planar graphs with girth g satisfy |E| ≤ g(|V|−2)/(g−2) when they have a cycle.
pub fn edge_count_prefilter(g: &Graph) -> bool {
    let n = g.n();
    let m = g.edge_count();
    if n >= 3 && m > 3 * n - 6 {
        return false;
    }
    if let Some(gi) = g.girth().finite() {
        if n >= 3 && m * (gi - 2) > gi * (n - 2) {
            return false;
        }
    }
    true
}

pub fn is_planar(g: &Graph) -> bool {
    edge_count_prefilter(g) && embed_all(g).is_some()
}

/// Embeds `g` or returns a Kuratowski-style witness.
pub fn planarity_embed(g: &Graph) -> Result<Embedding, NonPlanar> {
    if let Some(e) = embed_all(g) {
        debug_assert!(e.matches(g) && e.euler_ok(g));
        return Ok(e);
    }
    Err(witness(g))
}

fn witness(g: &Graph) -> NonPlanar {
    let mut h = g.clone();
    for (u, v) in g.edges() {
        let t = h.without_edge(u, v);
        if embed_all(&t).is_none() {
            h = t;
        }
    }
    let branch: Vec<usize> = (0..h.n()).filter(|&v| h.degree(v) >= 3).collect();
    let kind = if branch.len() == 5 && branch.iter().all(|&v| h.degree(v) == 4) {
        KuratowskiKind::K5
    } else if branch.len() == 6 && branch.iter().all(|&v| h.degree(v) == 3) {
        KuratowskiKind::K33
    } else {
        KuratowskiKind::Other
    };
    NonPlanar { witness_edges: h.edges(), kind }
}

fn embed_all(g: &Graph) -> Option<Embedding> {
    let mut rot: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
    for block in blocks(g) {
        let local = embed_block(g.n(), &block)?;
        for (v, r) in local.into_iter().enumerate() {
            rot[v].extend(r);
        }
    }
    Some(Embedding { rot })
}

/// Biconnected blocks as edge lists (Hopcroft–Tarjan with an edge stack).
pub fn blocks(g: &Graph) -> Vec<Vec<(usize, usize)>> {
    let n = g.n();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut t = 0;
    let mut out = Vec::new();
    let mut estack: Vec<(usize, usize)> = Vec::new();
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = t;
        low[root] = t;
        t += 1;
        let mut stack: Vec<(usize, usize, u128)> = vec![(root, usize::MAX, g.row(root))];
        while let Some(top) = stack.last_mut() {
            let (u, p, rest) = *top;
            if rest == 0 {
                stack.pop();
                if let Some(&(pu, _, _)) = stack.last() {
                    low[pu] = low[pu].min(low[u]);
                    if low[u] >= disc[pu] {
                        let mut b = Vec::new();
                        while let Some(e) = estack.pop() {
                            b.push(e);
                            if e == (pu, u) {
                                break;
                            }
                        }
                        out.push(b);
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
                estack.push((u, w));
                stack.push((w, u, g.row(w)));
            } else if w != p && disc[w] < disc[u] {
                estack.push((u, w));
                low[u] = low[u].min(disc[w]);
            }
        }
    }
    out
}

fn key(u: usize, v: usize) -> (usize, usize) {
    (u.min(v), u.max(v))
}

/// Embeds one block given by its edges; returns rotations indexed by global vertex.
fn embed_block(n: usize, edges: &[(usize, usize)]) -> Option<Vec<Vec<usize>>> {
    let mut rot = vec![Vec::new(); n];
    if edges.len() == 1 {
        let (u, v) = edges[0];
        rot[u].push(v);
        rot[v].push(u);
        return Some(rot);
    }
    let mut adj = vec![0u128; n];
    for &(u, v) in edges {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    let verts: u128 = adj.iter().enumerate().filter(|(_, r)| **r != 0).fold(0, |s, (v, _)| s | 1 << v);

    // initial cycle: an edge plus a path avoiding it
    let (a, b) = edges[0];
    let path = bfs_path(&adj, b, |x| x == a, verts, Some((b, a)))?;
    let mut cycle = path.clone();
    cycle.pop();
    // cycle runs b .. (vertex before a), then a
    cycle.push(a);
    let mut faces: Vec<Vec<usize>> = vec![cycle.clone(), cycle.iter().rev().copied().collect()];
    let mut emb_v: u128 = cycle.iter().fold(0, |s, &v| s | 1 << v);
    let mut emb_e: HashSet<(usize, usize)> = HashSet::new();
    for i in 0..cycle.len() {
        emb_e.insert(key(cycle[i], cycle[(i + 1) % cycle.len()]));
    }

    while emb_e.len() < edges.len() {
        // fragments: (attachments, path-finder data)
        let mut frags: Vec<(u128, Fragment)> = Vec::new();
        for &(u, v) in edges {
            if emb_v >> u & 1 == 1 && emb_v >> v & 1 == 1 && !emb_e.contains(&key(u, v)) {
                frags.push((1 << u | 1 << v, Fragment::Chord(u, v)));
            }
        }
        let mut rest = verts & !emb_v;
        while rest != 0 {
            let s = rest.trailing_zeros() as usize;
            let mut comp = 1u128 << s;
            let mut frontier = comp;
            while frontier != 0 {
                let mut next = 0;
                for v in BitIter(frontier) {
                    next |= adj[v];
                }
                frontier = next & !emb_v & !comp;
                comp |= frontier;
            }
            rest &= !comp;
            let att = BitIter(comp).fold(0u128, |s, v| s | adj[v]) & emb_v;
            frags.push((att, Fragment::Bridge(comp)));
        }
        let face_sets: Vec<u128> = faces.iter().map(|f| f.iter().fold(0, |s, &v| s | 1 << v)).collect();
        let mut choice: Option<(usize, usize)> = None;
        for (i, (att, _)) in frags.iter().enumerate() {
            let ok: Vec<usize> = (0..faces.len()).filter(|&f| face_sets[f] & att == *att).collect();
            if ok.is_empty() {
                return None;
            }
            if ok.len() == 1 {
                choice = Some((i, ok[0]));
                break;
            }
            if choice.is_none() {
                choice = Some((i, ok[0]));
            }
        }
        let (fi, face_idx) = choice.expect("a fragment remains while edges remain");
        let p = match frags[fi].1 {
            Fragment::Chord(u, v) => vec![u, v],
            Fragment::Bridge(comp) => {
                let att = frags[fi].0;
                let a1 = att.trailing_zeros() as usize;
                let c = (adj[a1] & comp).trailing_zeros() as usize;
                let others = att & !(1 << a1);
                let inner = bfs_path(&adj, c, |x| adj[x] & others != 0, comp, None)?;
                let last = *inner.last().unwrap();
                let a2 = (adj[last] & others).trailing_zeros() as usize;
                let mut p = vec![a1];
                p.extend(inner);
                p.push(a2);
                p
            }
        };
        let f = faces.swap_remove(face_idx);
        let (x, y) = (p[0], *p.last().unwrap());
        let i = f.iter().position(|&v| v == x).unwrap();
        let j = f.iter().position(|&v| v == y).unwrap();
        let m = f.len();
        let interior = &p[1..p.len() - 1];
        // f1: x .. y along f, then back along the path
        let mut f1 = Vec::new();
        let mut k = i;
        loop {
            f1.push(f[k]);
            if k == j {
                break;
            }
            k = (k + 1) % m;
        }
        f1.extend(interior.iter().rev());
        // f2: y .. x along f, then forward along the path
        let mut f2 = Vec::new();
        let mut k = j;
        loop {
            f2.push(f[k]);
            if k == i {
                break;
            }
            k = (k + 1) % m;
        }
        f2.extend(interior.iter());
        faces.push(f1);
        faces.push(f2);
        for w in p.windows(2) {
            emb_e.insert(key(w[0], w[1]));
        }
        for &v in &p {
            emb_v |= 1 << v;
        }
    }

    // succ_v(u) = w for consecutive u → v → w on a face
    let mut succ: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for f in &faces {
        let m = f.len();
        for k in 0..m {
            let (u, v, w) = (f[(k + m - 1) % m], f[k], f[(k + 1) % m]);
            succ[v].push((u, w));
        }
    }
    for v in 0..n {
        if succ[v].is_empty() {
            continue;
        }
        let start = succ[v][0].0;
        let mut cur = start;
        loop {
            rot[v].push(cur);
            cur = succ[v].iter().find(|p| p.0 == cur).unwrap().1;
            if cur == start {
                break;
            }
        }
    }
    Some(rot)
}

enum Fragment {
    Chord(usize, usize),
    Bridge(u128),
}

/// Shortest path from `s` inside `allowed` to a vertex satisfying `goal`,
/// optionally forbidding one directed first step.
fn bfs_path(
    adj: &[u128],
    s: usize,
    goal: impl Fn(usize) -> bool,
    allowed: u128,
    forbid: Option<(usize, usize)>,
) -> Option<Vec<usize>> {
    let mut prev = vec![usize::MAX; adj.len()];
    let mut seen = 1u128 << s;
    let mut queue = vec![s];
    let mut head = 0;
    while head < queue.len() {
        let u = queue[head];
        head += 1;
        if goal(u) && !(u == s && forbid.is_some()) {
            let mut p = vec![u];
            let mut x = u;
            while x != s {
                x = prev[x];
                p.push(x);
            }
            p.reverse();
            return Some(p);
        }
        for w in BitIter(adj[u] & allowed & !seen) {
            if forbid == Some((u, w)) {
                continue;
            }
            seen |= 1 << w;
            prev[w] = u;
            queue.push(w);
        }
    }
    None
}

/// Tries every rotation system; only sensible for small graphs.
pub fn brute_force_embed(g: &Graph) -> Option<Embedding> {
    let base: Vec<Vec<usize>> = (0..g.n()).map(|v| g.neighbors(v).to_vec()).collect();
    let choices: Vec<Vec<Vec<usize>>> = base.iter().map(|r| cyclic_orders(r)).collect();
    let mut idx = vec![0usize; g.n()];
    loop {
        let rot: Vec<Vec<usize>> = (0..g.n()).map(|v| choices[v][idx[v]].clone()).collect();
        let e = Embedding { rot };
        if e.euler_ok(g) {
            return Some(e);
        }
        let mut k = 0;
        loop {
            if k == g.n() {
                return None;
            }
            idx[k] += 1;
            if idx[k] < choices[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// All cyclic orders of `items`, first element fixed.
fn cyclic_orders(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 2 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    let mut rest = items[1..].to_vec();
    permute(&mut rest, 0, &mut |p| {
        let mut r = vec![items[0]];
        r.extend_from_slice(p);
        out.push(r);
    });
    out
}

fn permute(a: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == a.len() {
        f(a);
        return;
    }
    for i in k..a.len() {
        a.swap(k, i);
        permute(a, k + 1, f);
        a.swap(k, i);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use graph_core::named;

    fn face_lengths(g: &Graph) -> Vec<usize> {
        let mut l: Vec<usize> = planarity_embed(g).unwrap().faces().iter().map(|f| f.len()).collect();
        l.sort();
        l
    }

    #[test]
    fn k4_has_four_triangles() {
        assert_eq!(face_lengths(&named::complete(4)), vec![3, 3, 3, 3]);
    }

    #[test]
    fn kuratowski_graphs_rejected() {
        let e = planarity_embed(&named::complete(5)).unwrap_err();
        assert_eq!(e.kind, KuratowskiKind::K5);
        let e = planarity_embed(&named::complete_bipartite(3, 3)).unwrap_err();
        assert_eq!(e.kind, KuratowskiKind::K33);
        assert_eq!(e.witness_edges.len(), 9);
    }

    #[test]
    fn petersen_is_nonplanar_with_k33_subdivision() {
        let e = planarity_embed(&named::petersen()).unwrap_err();
        assert_eq!(e.kind, KuratowskiKind::K33);
    }

    #[test]
    fn cycle_tree_and_cube_faces() {
        assert_eq!(face_lengths(&named::cycle(8)), vec![8, 8]);
        assert_eq!(face_lengths(&named::path(6)), vec![10]);
        assert_eq!(face_lengths(&named::cube()), vec![4; 6]);
        assert_eq!(face_lengths(&Graph::empty(1).unwrap()), vec![0]);
    }

    #[test]
    fn pendant_vertex_repeats_on_walk() {
        let g = named::cycle_star(4);
        let e = planarity_embed(&g).unwrap();
        let outer = e.faces().into_iter().find(|f| f.len() > 4).unwrap();
        assert_eq!(outer.multiplicity(0), 2);
        assert!(!outer.is_cycle());
    }
}
