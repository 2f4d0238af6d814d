//! Charges on embedded graphs: initial charges, bad 8-faces, the discharging
//! rules and post-rule verification.
//!
//! Vertices start at `2 deg - 6` and faces at `len - 6`; for a connected plane
//! graph the total is -12.  Rule 1 has every face send 1 to each 2-vertex
//! occurrence on its walk.  The girth-8 rule set adds rule 2: a face sends 1
//! to every bad 8-face (other than itself) whose two contributing vertices
//! both lie on it.

use std::collections::HashMap;
use std::fmt;

use domination::{fraction_string, qi, Q};
use graph_core::Graph;
use planar::{Embedding, Face};
use thiserror::Error;

pub const BAD_PATTERN: [usize; 8] = [2, 2, 3, 3, 2, 3, 3, 3];

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DischargeError {
    #[error("graph is not connected")]
    Disconnected,
    #[error("embedding does not match the graph")]
    EmbeddingMismatch,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Ruleset {
    Girth9,
    Girth8,
}

impl std::str::FromStr for Ruleset {
    type Err = String;
    fn from_str(s: &str) -> Result<Ruleset, String> {
        match s {
            "girth9" => Ok(Ruleset::Girth9),
            "girth8" => Ok(Ruleset::Girth8),
            _ => Err(format!("unknown ruleset {s:?}")),
        }
    }
}

impl fmt::Display for Ruleset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Ruleset::Girth9 => "girth9",
            Ruleset::Girth8 => "girth8",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Element {
    Vertex(usize),
    Face(usize),
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Vertex(v) => write!(f, "v{v}"),
            Element::Face(i) => write!(f, "f{i}"),
        }
    }
}

/// Face ids index `Embedding::faces()` of the embedding used.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChargeLedger {
    pub vertex: Vec<Q>,
    pub face: Vec<Q>,
    pub total: Q,
}

impl ChargeLedger {
    fn new(vertex: Vec<Q>, face: Vec<Q>) -> ChargeLedger {
        let total = vertex.iter().chain(face.iter()).fold(qi(0), |a, b| a + b);
        ChargeLedger { vertex, face, total }
    }

    fn retotal(&mut self) {
        self.total = self.vertex.iter().chain(self.face.iter()).fold(qi(0), |a, b| a + b);
    }

    pub fn get(&self, e: Element) -> &Q {
        match e {
            Element::Vertex(v) => &self.vertex[v],
            Element::Face(i) => &self.face[i],
        }
    }

    /// Elements with negative charge, vertices first.
    pub fn negatives(&self) -> Vec<(Element, Q)> {
        let z = qi(0);
        let vs = self.vertex.iter().enumerate().map(|(v, c)| (Element::Vertex(v), c));
        let fs = self.face.iter().enumerate().map(|(i, c)| (Element::Face(i), c));
        vs.chain(fs).filter(|(_, c)| **c < z).map(|(e, c)| (e, c.clone())).collect()
    }

    pub fn vertex_strings(&self) -> Vec<String> {
        self.vertex.iter().map(fraction_string).collect()
    }

    pub fn face_strings(&self) -> Vec<String> {
        self.face.iter().map(fraction_string).collect()
    }
}

/// A bad 8-face labeled so that `walk[i]` is v_{i+1} and the degrees read
/// `BAD_PATTERN`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bad8Face {
    pub face: usize,
    pub walk: [usize; 8],
    /// (v3, v4).
    pub contributing: (usize, usize),
    /// The face on the other side of the edge v3v4.
    pub contributing_face: usize,
}

fn check(g: &Graph, e: &Embedding) -> Result<(), DischargeError> {
    if !e.matches(g) {
        return Err(DischargeError::EmbeddingMismatch);
    }
    if !g.is_connected() {
        return Err(DischargeError::Disconnected);
    }
    Ok(())
}

pub fn initial_charges(g: &Graph, e: &Embedding) -> Result<ChargeLedger, DischargeError> {
    check(g, e)?;
    Ok(initial_from_faces(g, &e.faces()))
}

fn initial_from_faces(g: &Graph, faces: &[Face]) -> ChargeLedger {
    let vertex = (0..g.n()).map(|v| qi(2 * g.degree(v) as i64 - 6)).collect();
    let face = faces.iter().map(|f| qi(f.len() as i64 - 6)).collect();
    ChargeLedger::new(vertex, face)
}

fn dart_faces(faces: &[Face]) -> HashMap<(usize, usize), usize> {
    let mut m = HashMap::new();
    for (i, f) in faces.iter().enumerate() {
        for &d in &f.darts {
            m.insert(d, i);
        }
    }
    m
}

/// Labels a walk against `BAD_PATTERN` in either direction.  The pattern has
/// no rotational or reflective symmetry, so the labeling is unique.
pub fn bad_labeling(g: &Graph, walk: &[usize]) -> Option<[usize; 8]> {
    if walk.len() != 8 {
        return None;
    }
    for rev in [false, true] {
        for r in 0..8 {
            let lab: [usize; 8] = std::array::from_fn(|i| {
                if rev {
                    walk[(r + 8 - i) % 8]
                } else {
                    walk[(r + i) % 8]
                }
            });
            if (0..8).all(|i| g.degree(lab[i]) == BAD_PATTERN[i]) {
                return Some(lab);
            }
        }
    }
    None
}

/// Bad 8-faces among `faces`.  Only faces whose walk is a simple 8-cycle
/// qualify.
pub fn bad_faces_of(g: &Graph, faces: &[Face]) -> Vec<Bad8Face> {
    let by_dart = dart_faces(faces);
    let mut out = Vec::new();
    for (i, f) in faces.iter().enumerate() {
        if f.len() != 8 || !f.is_cycle() {
            continue;
        }
        if let Some(walk) = bad_labeling(g, &f.walk()) {
            let (a, b) = (walk[2], walk[3]);
            let other = if by_dart.get(&(a, b)) == Some(&i) { by_dart[&(b, a)] } else { by_dart[&(a, b)] };
            out.push(Bad8Face { face: i, walk, contributing: (a, b), contributing_face: other });
        }
    }
    out
}

pub fn detect_bad_8_faces(g: &Graph, e: &Embedding) -> Vec<Bad8Face> {
    bad_faces_of(g, &e.faces())
}

/// Faces other than `b` itself that contain both contributing vertices of `b`.
pub fn senders_to(faces: &[Face], b: &Bad8Face) -> Vec<usize> {
    let (x, y) = b.contributing;
    (0..faces.len())
        .filter(|&i| i != b.face)
        .filter(|&i| {
            let s = faces[i].vertex_set();
            s.contains(x) && s.contains(y)
        })
        .collect()
}

fn discharge(g: &Graph, faces: &[Face], ruleset: Ruleset) -> (ChargeLedger, ChargeLedger, Vec<Bad8Face>) {
    let init = initial_from_faces(g, faces);
    let mut fin = init.clone();
    for (i, f) in faces.iter().enumerate() {
        for v in f.walk() {
            if f.isolated.is_none() && g.degree(v) == 2 {
                fin.face[i] -= qi(1);
                fin.vertex[v] += qi(1);
            }
        }
    }
    let bad = if ruleset == Ruleset::Girth8 { bad_faces_of(g, faces) } else { Vec::new() };
    for b in &bad {
        for s in senders_to(faces, b) {
            fin.face[s] -= qi(1);
            fin.face[b.face] += qi(1);
        }
    }
    fin.retotal();
    (init, fin, bad)
}

pub fn apply_discharging(g: &Graph, e: &Embedding, ruleset: Ruleset) -> Result<ChargeLedger, DischargeError> {
    check(g, e)?;
    Ok(discharge(g, &e.faces(), ruleset).1)
}

/// Per-face count of 2-vertex walk occurrences (x) and incident bad 8-faces
/// (y), with the bound the rule set expects for faces of that length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceCount {
    pub face: usize,
    pub len: usize,
    pub twos: usize,
    pub bad_incident: usize,
    pub is_bad: bool,
    pub limit: Option<usize>,
}

impl FaceCount {
    pub fn violated(&self) -> bool {
        self.limit.is_some_and(|l| self.twos + self.bad_incident > l)
    }
}

fn limit_for(len: usize, is_bad: bool, ruleset: Ruleset) -> Option<usize> {
    match len {
        k if k >= 11 => Some(k / 2),
        10 => Some(4),
        9 => Some(3),
        8 if ruleset == Ruleset::Girth8 => Some(if is_bad { 3 } else { 2 }),
        _ => None,
    }
}

pub fn face_counts(g: &Graph, faces: &[Face], bad: &[Bad8Face], ruleset: Ruleset) -> Vec<FaceCount> {
    let mut incident = vec![0usize; faces.len()];
    if ruleset == Ruleset::Girth8 {
        for b in bad {
            for s in senders_to(faces, b) {
                incident[s] += 1;
            }
        }
    }
    faces
        .iter()
        .enumerate()
        .map(|(i, f)| {
            let is_bad = bad.iter().any(|b| b.face == i);
            let twos = if f.isolated.is_some() { 0 } else { f.walk().iter().filter(|&&v| g.degree(v) == 2).count() };
            FaceCount { face: i, len: f.len(), twos, bad_incident: incident[i], is_bad, limit: limit_for(f.len(), is_bad, ruleset) }
        })
        .collect()
}

/// Pairs of bad 8-faces sharing a contributing vertex.
pub fn shared_contributing(bad: &[Bad8Face]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..bad.len() {
        for j in i + 1..bad.len() {
            let (a, b) = bad[i].contributing;
            let (c, d) = bad[j].contributing;
            if a == c || a == d || b == c || b == d {
                out.push((bad[i].face, bad[j].face));
            }
        }
    }
    out
}

#[derive(Debug, Clone)]
pub struct DischargeReport {
    pub ruleset: Ruleset,
    pub faces: Vec<Vec<usize>>,
    pub initial: ChargeLedger,
    pub after: ChargeLedger,
    pub negatives: Vec<(Element, Q)>,
    pub bad_faces: Vec<Bad8Face>,
    pub face_counts: Vec<FaceCount>,
    pub shared_contributing: Vec<(usize, usize)>,
}

impl DischargeReport {
    pub fn conserved(&self) -> bool {
        self.initial.total == self.after.total
    }

    pub fn count_violations(&self) -> Vec<&FaceCount> {
        self.face_counts.iter().filter(|c| c.violated()).collect()
    }
}

pub fn verify_discharging(g: &Graph, e: &Embedding, ruleset: Ruleset) -> Result<DischargeReport, DischargeError> {
    check(g, e)?;
    let faces = e.faces();
    let (initial, after, bad) = discharge(g, &faces, ruleset);
    let bad_for_counts = if ruleset == Ruleset::Girth8 { bad.clone() } else { bad_faces_of(g, &faces) };
    Ok(DischargeReport {
        ruleset,
        faces: faces.iter().map(|f| f.walk()).collect(),
        negatives: after.negatives(),
        face_counts: face_counts(g, &faces, &bad_for_counts, ruleset),
        shared_contributing: shared_contributing(&bad_for_counts),
        initial,
        after,
        bad_faces: bad,
    })
}

/// An 8-cycle with pendant edges at v3, v4, v6, v7, v8, giving one bad face.
pub fn bad_face_instance() -> Graph {
    let mut edges: Vec<(usize, usize)> = (0..8).map(|i| (i, (i + 1) % 8)).collect();
    for (k, &i) in [2usize, 3, 5, 6, 7].iter().enumerate() {
        edges.push((i, 8 + k));
    }
    Graph::new(13, &edges).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use graph_core::named;
    use planar::planarity_embed;

    fn embed(g: &Graph) -> Embedding {
        planarity_embed(g).unwrap()
    }

    #[test]
    fn cube_initial() {
        let g = named::cube();
        let l = initial_charges(&g, &embed(&g)).unwrap();
        assert!(l.vertex.iter().all(|c| *c == qi(0)));
        assert!(l.face.iter().all(|c| *c == qi(-2)));
        assert_eq!(l.total, qi(-12));
    }

    #[test]
    fn c8_discharge() {
        let g = named::cycle(8);
        let e = embed(&g);
        let l = initial_charges(&g, &e).unwrap();
        assert!(l.vertex.iter().all(|c| *c == qi(-2)));
        assert_eq!(l.face, vec![qi(2), qi(2)]);
        let a = apply_discharging(&g, &e, Ruleset::Girth9).unwrap();
        assert!(a.vertex.iter().all(|c| *c == qi(0)));
        assert_eq!(a.face, vec![qi(-6), qi(-6)]);
        assert_eq!(a.total, qi(-12));
        assert!(detect_bad_8_faces(&g, &e).is_empty());
    }

    #[test]
    fn two_vertex_on_one_face_receives_two() {
        let g = named::path(3);
        let a = apply_discharging(&g, &embed(&g), Ruleset::Girth9).unwrap();
        assert_eq!(a.vertex[1], qi(0));
        assert_eq!(a.total, qi(-12));
    }

    #[test]
    fn disconnected_rejected() {
        let g = named::path(2).disjoint_union(&named::path(2));
        assert_eq!(initial_charges(&g, &embed(&g)), Err(DischargeError::Disconnected));
    }

    #[test]
    fn constructed_bad_face() {
        let g = bad_face_instance();
        let e = embed(&g);
        let bad = detect_bad_8_faces(&g, &e);
        assert_eq!(bad.len(), 1);
        let b = &bad[0];
        assert_eq!(b.walk, [0, 1, 2, 3, 4, 5, 6, 7]);
        assert_eq!(b.contributing, (2, 3));
        let faces = e.faces();
        assert_ne!(b.contributing_face, b.face);
        assert_eq!(faces[b.contributing_face].len(), 8 + 2 * 5);
        let before = apply_discharging(&g, &e, Ruleset::Girth9).unwrap();
        let after = apply_discharging(&g, &e, Ruleset::Girth8).unwrap();
        assert_eq!(after.face[b.face].clone() - before.face[b.face].clone(), qi(1));
        assert_eq!(after.total, qi(-12));
    }

    #[test]
    fn nine_cycle_not_bad() {
        let g = named::cycle(9);
        assert!(detect_bad_8_faces(&g, &embed(&g)).is_empty());
    }

    #[test]
    fn fraction_strings() {
        let g = named::cycle(8);
        let r = verify_discharging(&g, &embed(&g), Ruleset::Girth9).unwrap();
        assert_eq!(r.after.face_strings(), vec!["-6/1", "-6/1"]);
        assert_eq!(r.negatives.len(), 2);
        assert!(r.conserved());
    }
}
