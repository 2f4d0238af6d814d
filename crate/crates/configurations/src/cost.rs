//! Weight/cost calculus in scaled units.
//!
//! Costs are kept symbolically as gap vectors over g1 = w0-w1, g2 = w1-w2,
//! g3 = w2-w3.  A vertex of degree d that loses j neighbors changes weight by
//! w_{d-j} - w_d = g_{d-j+1} + ... + g_d.  For monotone weights all gaps are
//! nonnegative, so componentwise domination of gap vectors is sound and the
//! worst cases can be Pareto-pruned.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use domination::{qi, WeightVector, Q};
use graph_core::{Graph, VertexSet};

use crate::ConfigError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CostContext {
    pub w: WeightVector,
    pub scale: Q,
}

impl CostContext {
    pub fn new(w: WeightVector, scale: Q) -> Result<CostContext, ConfigError> {
        if !w.is_monotone() || *w.get(3) < qi(0) || scale <= qi(0) {
            return Err(ConfigError::InvalidWeights(w.to_string()));
        }
        Ok(CostContext { w, scale })
    }

    pub fn thm1() -> CostContext {
        CostContext { w: WeightVector::thm1(), scale: qi(20) }
    }

    pub fn thm2() -> CostContext {
        CostContext { w: WeightVector::thm2(), scale: qi(17) }
    }

    /// Scaled gaps (g1, g2, g3).
    pub fn gaps(&self) -> [Q; 3] {
        std::array::from_fn(|i| (self.w.get(i).clone() - self.w.get(i + 1).clone()) * self.scale.clone())
    }

    pub fn scaled_weight(&self, d: usize) -> Q {
        self.w.get(d).clone() * self.scale.clone()
    }

    pub fn eval_gap(&self, g: &Gap) -> Q {
        let gs = self.gaps();
        (0..3).fold(qi(0), |a, i| a + gs[i].clone() * qi(g.0[i]))
    }

    /// Scaled weight of a multiset given by counts per degree.
    pub fn eval_counts(&self, c: &[i64; 4]) -> Q {
        (0..4).fold(qi(0), |a, d| a + self.scaled_weight(d) * qi(c[d]))
    }
}

/// Coefficients on (g1, g2, g3).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Gap(pub [i64; 3]);

impl Gap {
    pub const ZERO: Gap = Gap([0, 0, 0]);

    /// Gap vector of a degree-`d` vertex losing `j` neighbors.
    pub fn loss(d: usize, j: usize) -> Gap {
        let mut g = [0i64; 3];
        for k in d - j + 1..=d {
            g[k - 1] += 1;
        }
        Gap(g)
    }

    pub fn dominates(self, o: Gap) -> bool {
        (0..3).all(|i| self.0[i] >= o.0[i])
    }

    /// The same cost as a linear form over (w0, w1, w2, w3).
    pub fn linear_form(self) -> [i64; 4] {
        let [a, b, d] = self.0;
        [a, b - a, d - b, -d]
    }
}

impl std::ops::Add for Gap {
    type Output = Gap;

    fn add(self, o: Gap) -> Gap {
        Gap([self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2]])
    }
}

impl fmt::Display for Gap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.0[0], self.0[1], self.0[2])
    }
}

/// Keeps the maximal elements, sorted.
pub fn pareto(v: impl IntoIterator<Item = Gap>) -> Vec<Gap> {
    let all: BTreeSet<Gap> = v.into_iter().collect();
    all.iter().copied().filter(|&g| !all.iter().any(|&h| h != g && h.dominates(g))).collect()
}

/// Allowed degrees, as a bit mask over 1..=3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DegSet(pub u8);

impl DegSet {
    pub const D1: DegSet = DegSet(0b0010);
    pub const D2: DegSet = DegSet(0b0100);
    pub const D3: DegSet = DegSet(0b1000);
    pub const D23: DegSet = DegSet(0b1100);
    pub const ANY: DegSet = DegSet(0b1110);

    pub fn contains(self, d: usize) -> bool {
        d < 8 && self.0 >> d & 1 == 1
    }

    pub fn degrees(self) -> impl Iterator<Item = usize> {
        (1..=3).filter(move |&d| self.contains(d))
    }
}

impl fmt::Display for DegSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if *self == DegSet::ANY {
            return f.write_str("*");
        }
        for d in self.degrees() {
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

/// Worst-case boundary description of a configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CostBound {
    /// Distinct boundary vertices, each losing one edge, with degree caps.
    Slots { slots: Vec<DegSet>, max_deg1: Option<usize>, max_deg2: Option<usize> },
    /// Independent groups whose costs add.
    Sum(Vec<CostBound>),
    /// `k` boundary edges ending at 2- or 3-vertices, with limits on how many
    /// boundary vertices lose more than one edge.
    Edges { k: usize, max_doubles: Option<usize>, max_double22: Option<usize>, triples: bool },
}

impl CostBound {
    pub fn slots(slots: &[DegSet]) -> CostBound {
        CostBound::Slots { slots: slots.to_vec(), max_deg1: None, max_deg2: None }
    }

    pub fn edges(k: usize) -> CostBound {
        CostBound::Edges { k, max_doubles: None, max_double22: None, triples: true }
    }

    /// Maximal gap vectors over every boundary the description allows.
    pub fn gaps(&self) -> Vec<Gap> {
        match self {
            CostBound::Slots { slots, max_deg1, max_deg2 } => {
                let mut out = Vec::new();
                slot_rec(slots, 0, Gap::ZERO, 0, 0, *max_deg1, *max_deg2, &mut out);
                pareto(out)
            }
            CostBound::Sum(parts) => {
                let mut acc = vec![Gap::ZERO];
                for p in parts {
                    let g = p.gaps();
                    acc = pareto(acc.iter().flat_map(|a| g.iter().map(move |b| *a + *b)));
                }
                acc
            }
            CostBound::Edges { k, max_doubles, max_double22, triples } => {
                edge_gaps(*k, *max_doubles, *max_double22, *triples, &mut HashMap::new())
            }
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn slot_rec(
    slots: &[DegSet],
    i: usize,
    acc: Gap,
    n1: usize,
    n2: usize,
    m1: Option<usize>,
    m2: Option<usize>,
    out: &mut Vec<Gap>,
) {
    if i == slots.len() {
        out.push(acc);
        return;
    }
    for d in slots[i].degrees() {
        let (a, b) = (n1 + (d == 1) as usize, n2 + (d == 2) as usize);
        if m1.is_some_and(|m| a > m) || m2.is_some_and(|m| b > m) {
            continue;
        }
        slot_rec(slots, i + 1, acc + Gap::loss(d, 1), a, b, m1, m2, out);
    }
}

type EdgeMemo = HashMap<(usize, Option<usize>, Option<usize>), Vec<Gap>>;

/// Pareto set of gap vectors for `rem` boundary edges, given how many
/// doubles (all, and at 2-vertices) are still allowed.  `None` is unlimited.
fn edge_gaps(
    rem: usize,
    doubles: Option<usize>,
    d22: Option<usize>,
    triples: bool,
    memo: &mut EdgeMemo,
) -> Vec<Gap> {
    if rem == 0 {
        return vec![Gap::ZERO];
    }
    if let Some(v) = memo.get(&(rem, doubles, d22)) {
        return v.clone();
    }
    let dec = |m: Option<usize>| m.map(|x| x - 1);
    let mut cands = Vec::new();
    let mut add = |piece: Gap, sub: Vec<Gap>| cands.extend(sub.into_iter().map(|g| g + piece));
    for d in [2, 3] {
        add(Gap::loss(d, 1), edge_gaps(rem - 1, doubles, d22, triples, memo));
    }
    if rem >= 2 && doubles != Some(0) {
        if d22 != Some(0) {
            add(Gap::loss(2, 2), edge_gaps(rem - 2, dec(doubles), dec(d22), triples, memo));
        }
        add(Gap::loss(3, 2), edge_gaps(rem - 2, dec(doubles), d22, triples, memo));
    }
    if rem >= 3 && triples {
        add(Gap::loss(3, 3), edge_gaps(rem - 3, doubles, d22, triples, memo));
    }
    let v = pareto(cands);
    memo.insert((rem, doubles, d22), v.clone());
    v
}

/// Scaled weight change of a degree-`d` vertex losing `j` neighbors.
pub fn cost_contribution(ctx: &CostContext, d: usize, j: usize) -> Result<Q, ConfigError> {
    if d > 3 {
        return Err(ConfigError::NotSubcubic(usize::MAX, d));
    }
    if j > d {
        return Err(ConfigError::LostExceedsDegree { d, j });
    }
    Ok(ctx.eval_gap(&Gap::loss(d, j)))
}

/// Scaled c(S): weight of G-S in G-S minus its weight inside G.
pub fn cost_of_removal(g: &Graph, s: VertexSet, ctx: &CostContext) -> Result<Q, ConfigError> {
    if s.is_empty() {
        return Err(ConfigError::EmptyS);
    }
    if let Some(v) = (0..g.n()).find(|&v| g.degree(v) > 3) {
        return Err(ConfigError::NotSubcubic(v, g.degree(v)));
    }
    let mut c = qi(0);
    for v in g.vertices().difference(s).iter() {
        let after = g.neighbors(v).difference(s).len();
        c += ctx.scaled_weight(after) - ctx.scaled_weight(g.degree(v));
    }
    Ok(c)
}

/// Single-edge unit and per-pair surplus used by the edge-count bound.
fn edge_units(ctx: &CostContext) -> (Q, Q) {
    let [g1, g2, g3] = ctx.gaps();
    let u = if g2 > g3 { g2.clone() } else { g3.clone() };
    let two = qi(2) * u.clone();
    let three = qi(3) * u.clone();
    let mut s = qi(0);
    for c in [g1.clone() + g2.clone() - two, g1 + g2 + g3 - three] {
        if c > s {
            s = c;
        }
    }
    (u, s)
}

/// Edge-count bound on c(S) when every boundary vertex has degree 2 or 3:
/// `4k + floor(k/2)`, or with `l` edges known to end at 2-vertices,
/// `4k + max(floor(l/2) + floor((k-l)/3), floor((l-1)/2) + floor((k-l+1)/3))`.
/// In other contexts 4 and 1 become the single-edge unit and pair surplus.
pub fn cost_upper_bound_edges(ctx: &CostContext, k: usize, l: Option<usize>) -> Result<Q, ConfigError> {
    let (u, s) = edge_units(ctx);
    let k = k as i64;
    let extra = match l {
        None => k.div_euclid(2),
        Some(l) => {
            let l = l as i64;
            if l > k {
                return Err(ConfigError::EdgeCount { k: k as usize, l: l as usize });
            }
            let a = l.div_euclid(2) + (k - l).div_euclid(3);
            let b = (l - 1).div_euclid(2) + (k - l + 1).div_euclid(3);
            a.max(b)
        }
    };
    Ok(u * qi(k) + s * qi(extra))
}
