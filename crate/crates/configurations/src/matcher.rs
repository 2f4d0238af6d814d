//! Finding catalog configurations in concrete graphs.

use std::collections::HashSet;

use discharging::{bad_faces_of, Bad8Face};
use graph_core::{Graph, VertexSet};
use planar::{Embedding, Face};

use crate::catalog::{catalog, ConfigEntry, FaceRule, Pattern, SequencePattern, Variant};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigHit {
    pub entry: String,
    /// Matched path, or the labeled face followed by matched bad-face walks.
    pub vertices: Vec<usize>,
    pub s: VertexSet,
    /// A dominating set of G[S] of size gamma_S.
    pub dominators: VertexSet,
    /// Edges (inside, outside) between S and G - S.
    pub boundary: Vec<(usize, usize)>,
}

impl ConfigHit {
    fn new(g: &Graph, entry: &str, vertices: Vec<usize>, s: VertexSet, dominators: VertexSet) -> ConfigHit {
        let mut boundary = Vec::new();
        for u in s.iter() {
            for v in g.neighbors(u).difference(s).iter() {
                boundary.push((u, v));
            }
        }
        ConfigHit { entry: entry.to_string(), vertices, s, dominators, boundary }
    }

    /// Boundary vertices with their degree in G and the number of S-neighbors.
    pub fn boundary_profile(&self, g: &Graph) -> Vec<(usize, usize, usize)> {
        let outside: VertexSet = self.boundary.iter().map(|e| e.1).collect();
        outside.iter().map(|v| (v, g.degree(v), g.neighbors(v).intersection(self.s).len())).collect()
    }
}

fn dominates_within(g: &Graph, d: VertexSet, s: VertexSet) -> bool {
    d.difference(s).is_empty() && s.iter().all(|v| d.contains(v) || !g.neighbors(v).intersection(d).is_empty())
}

/// One path match: the path and, per position, its off-path neighbors
/// (filled only where the pattern constrains them or they are requested).
type PathMatch = (Vec<usize>, Vec<Vec<usize>>);

fn off_neighbors(g: &Graph, path: &[usize], i: usize) -> Vec<usize> {
    let mut n = g.neighbors(path[i]);
    if i > 0 {
        n = n.without(path[i - 1]);
    }
    if i + 1 < path.len() {
        n = n.without(path[i + 1]);
    }
    n.to_vec()
}

fn offs_fit(g: &Graph, offs: &[usize], sets: &[crate::cost::DegSet]) -> bool {
    if offs.len() != sets.len() {
        return false;
    }
    match offs.len() {
        0 => true,
        1 => sets[0].contains(g.degree(offs[0])),
        2 => {
            let (a, b) = (g.degree(offs[0]), g.degree(offs[1]));
            (sets[0].contains(a) && sets[1].contains(b)) || (sets[0].contains(b) && sets[1].contains(a))
        }
        _ => {
            let d: Vec<usize> = offs.iter().map(|&v| g.degree(v)).collect();
            let mut idx: Vec<usize> = (0..d.len()).collect();
            permutations_any(&mut idx, 0, &|p| p.iter().enumerate().all(|(i, &j)| sets[i].contains(d[j])))
        }
    }
}

fn permutations_any(idx: &mut Vec<usize>, k: usize, f: &dyn Fn(&[usize]) -> bool) -> bool {
    if k == idx.len() {
        return f(idx);
    }
    for i in k..idx.len() {
        idx.swap(k, i);
        let ok = permutations_any(idx, k + 1, f);
        idx.swap(k, i);
        if ok {
            return true;
        }
    }
    false
}

fn finish_path(g: &Graph, p: &SequencePattern, path: &[usize], want: &[usize]) -> Option<Vec<Vec<usize>>> {
    let mut used: VertexSet = path.iter().copied().collect();
    let mut offs = vec![Vec::new(); path.len()];
    for (i, tok) in p.tokens.iter().enumerate() {
        if tok.offs.is_empty() && !want.contains(&i) {
            continue;
        }
        let o = off_neighbors(g, path, i);
        if !tok.offs.is_empty() && !offs_fit(g, &o, &tok.offs) {
            return None;
        }
        for &v in &o {
            if used.contains(v) {
                return None;
            }
            used = used.with(v);
        }
        offs[i] = o;
    }
    Some(offs)
}

fn extend(g: &Graph, p: &SequencePattern, want: &[usize], path: &mut Vec<usize>, out: &mut Vec<PathMatch>) {
    let i = path.len();
    if i == p.tokens.len() {
        if let Some(offs) = finish_path(g, p, path, want) {
            out.push((path.clone(), offs));
        }
        return;
    }
    let last = *path.last().unwrap();
    for w in g.neighbors(last).iter() {
        if g.degree(w) == p.tokens[i].deg && !path.contains(&w) {
            path.push(w);
            extend(g, p, want, path, out);
            path.pop();
        }
    }
}

/// All matches, one per undirected path.
fn path_matches(g: &Graph, p: &SequencePattern, want: &[usize]) -> Vec<PathMatch> {
    let mut raw = Vec::new();
    for v in 0..g.n() {
        if g.degree(v) == p.tokens[0].deg {
            let mut path = vec![v];
            extend(g, p, want, &mut path, &mut raw);
        }
    }
    let mut seen = HashSet::new();
    raw.into_iter()
        .filter(|(path, _)| {
            let rev: Vec<usize> = path.iter().rev().copied().collect();
            seen.insert(if rev < *path { rev } else { path.clone() })
        })
        .collect()
}

/// Hits of a bare sequence pattern; S is the path itself.
pub fn match_sequence(g: &Graph, p: &SequencePattern) -> Vec<ConfigHit> {
    let name = p.to_string();
    path_matches(g, p, &[])
        .into_iter()
        .map(|(path, _)| {
            let s: VertexSet = path.iter().copied().collect();
            ConfigHit::new(g, &name, path, s, VertexSet::EMPTY)
        })
        .collect()
}

fn sequence_hits(g: &Graph, e: &ConfigEntry, out: &mut Vec<ConfigHit>) {
    let Pattern::Sequence { pattern, s_path, s_offs, dom } = &e.pattern else { return };
    for (path, offs) in path_matches(g, pattern, s_offs) {
        let mut s: VertexSet = s_path.iter().map(|&i| path[i]).collect();
        for &i in s_offs {
            s = s.union(offs[i].iter().copied().collect());
        }
        let d: VertexSet = dom.iter().map(|&i| path[i]).collect();
        if dominates_within(g, d, s) {
            out.push(ConfigHit::new(g, &e.name, path, s, d));
        }
    }
}

fn third(g: &Graph, v: usize, a: usize, b: usize) -> Option<usize> {
    g.neighbors(v).without(a).without(b).first()
}

fn closed(g: &Graph, vs: &[usize]) -> VertexSet {
    g.closed_neighborhood(vs.iter().copied().collect())
}

fn face_hits(g: &Graph, faces: &[Face], bad: &[Bad8Face], e: &ConfigEntry, out: &mut Vec<ConfigHit>) {
    let Pattern::Face(rule) = &e.pattern else { return };
    let mut seen: HashSet<u128> = HashSet::new();
    let mut push = |vertices: Vec<usize>, s: VertexSet, d: VertexSet, out: &mut Vec<ConfigHit>| {
        if dominates_within(g, d, s) && seen.insert(s.0) {
            out.push(ConfigHit::new(g, &e.name, vertices, s, d));
        }
    };
    match rule {
        FaceRule::ContributingNeighbors => {
            for b in bad {
                let w = b.walk;
                let (Some(w3), Some(w4)) = (third(g, w[2], w[1], w[3]), third(g, w[3], w[2], w[4])) else { continue };
                let sees_two = |x: usize| g.neighbors(x).iter().any(|y| g.degree(y) == 2);
                if w3 == w4 || g.degree(w3) != 3 || g.degree(w4) != 3 || !sees_two(w3) || !sees_two(w4) {
                    continue;
                }
                let s = closed(g, &[w[0], w3, w4]).union([w[4], w[5], w[6]].into_iter().collect());
                let d: VertexSet = [w[0], w[5], w3, w4].into_iter().collect();
                let mut vs = w.to_vec();
                vs.extend([w3, w4]);
                push(vs, s, d, out);
            }
        }
        FaceRule::SharedV3 | FaceRule::SharedV4 => {
            let k = if *rule == FaceRule::SharedV3 { 2 } else { 3 };
            for i in 0..bad.len() {
                for j in i + 1..bad.len() {
                    let (a, b) = (&bad[i], &bad[j]);
                    if a.walk[k] != b.walk[k] {
                        continue;
                    }
                    let mut s: VertexSet = a.walk.iter().chain(b.walk.iter()).copied().collect();
                    let d: VertexSet = if k == 2 {
                        let (Some(y), Some(z)) =
                            (third(g, a.walk[5], a.walk[4], a.walk[6]), third(g, b.walk[5], b.walk[4], b.walk[6]))
                        else {
                            continue;
                        };
                        s = s.with(y).with(z);
                        [a.walk[0], a.walk[2], a.walk[5], b.walk[5]].into_iter().collect()
                    } else {
                        [a.walk[0], a.walk[3], a.walk[5], b.walk[0]].into_iter().collect()
                    };
                    let vs = a.walk.iter().chain(b.walk.iter()).copied().collect();
                    push(vs, s, d, out);
                }
            }
        }
        FaceRule::Labeled { degrees, pairs, oriented, face_dom, bad_dom } => {
            let len = degrees.len();
            for (fi, f) in faces.iter().enumerate() {
                if f.len() != len || !f.is_cycle() || bad.iter().any(|b| b.face == fi) {
                    continue;
                }
                let walk = f.walk();
                for rev in [false, true] {
                    for r in 0..len {
                        let lab: Vec<usize> = (0..len)
                            .map(|i| if rev { walk[(r + len - i) % len] } else { walk[(r + i) % len] })
                            .collect();
                        if (0..len).any(|i| g.degree(lab[i]) != degrees[i]) {
                            continue;
                        }
                        let mut used: Vec<usize> = Vec::new();
                        for (pi, &(x, y)) in pairs.iter().enumerate() {
                            let found = bad.iter().position(|b| {
                                let (c3, c4) = b.contributing;
                                b.face != fi
                                    && if *oriented && pi == 0 {
                                        c3 == lab[y] && c4 == lab[x]
                                    } else {
                                        (c3, c4) == (lab[x], lab[y]) || (c3, c4) == (lab[y], lab[x])
                                    }
                            });
                            match found {
                                Some(k) if !used.contains(&k) => used.push(k),
                                _ => break,
                            }
                        }
                        if used.len() != pairs.len() {
                            continue;
                        }
                        let mut d: VertexSet = face_dom.iter().map(|&i| lab[i]).collect();
                        let mut vs = lab.clone();
                        let mut s: VertexSet = lab.iter().copied().collect();
                        for &k in &used {
                            let w = bad[k].walk;
                            d = d.with(w[bad_dom[0]]).with(w[bad_dom[1]]);
                            s = s.union(w.iter().copied().collect());
                            vs.extend(w);
                        }
                        s = s.union(g.closed_neighborhood(d));
                        push(vs, s, d, out);
                    }
                }
            }
        }
    }
}

/// All hits of `entries`; `faces` is needed only for face-context entries.
pub fn find_in(g: &Graph, faces: Option<&[Face]>, entries: &[ConfigEntry]) -> Vec<ConfigHit> {
    let mut out = Vec::new();
    let bad = faces.map(|f| bad_faces_of(g, f)).unwrap_or_default();
    for e in entries {
        match (&e.pattern, faces) {
            (Pattern::Sequence { .. }, _) => sequence_hits(g, e, &mut out),
            (Pattern::Face(_), Some(f)) => face_hits(g, f, &bad, e, &mut out),
            (Pattern::Face(_), None) => {}
        }
    }
    out
}

pub fn find_configurations(g: &Graph, e: &Embedding, variant: Variant) -> Vec<ConfigHit> {
    let entries = catalog(variant);
    let faces = entries.iter().any(|x| x.needs_faces()).then(|| e.faces());
    find_in(g, faces.as_deref(), &entries)
}

/// Re-derives the hit from scratch.
pub fn recheck_hit(g: &Graph, e: &Embedding, variant: Variant, hit: &ConfigHit) -> bool {
    let Some(entry) = catalog(variant).into_iter().find(|x| x.name == hit.entry) else { return false };
    let faces = entry.needs_faces().then(|| e.faces());
    find_in(g, faces.as_deref(), std::slice::from_ref(&entry))
        .iter()
        .any(|h| h.s == hit.s && h.dominators == hit.dominators && h.vertices == hit.vertices)
}
