//! Pipelines behind the `discharge-lab` command: enumerate, solve, check and
//! report as JSON lines.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use configurations::{find_configurations, Variant};
use discharging::{verify_discharging, DischargeReport};
use domination::{check_bound, q, qi, WeightVector, Q};
use enumerate::{enumerate_subcubic, EnumFilter};
use graph_core::{named, Graph, GraphError, GirthResult};
use planar::planarity_embed;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

pub const TOOL: &str = "discharge-lab";
pub const THREADS_ENV: &str = "DISCHARGE_LAB_THREADS";

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("invalid filter: {0}")]
    InvalidFilter(String),
    #[error("{0}")]
    Graph(#[from] GraphError),
    #[error("graph {0} is not planar")]
    NonPlanar(String),
    #[error("{0}")]
    Input(String),
}

/// Sizes the global worker pool from `DISCHARGE_LAB_THREADS` when set.
pub fn configure_threads() -> Result<(), HarnessError> {
    let Ok(v) = std::env::var(THREADS_ENV) else { return Ok(()) };
    let n: usize = v.trim().parse().map_err(|_| HarnessError::Input(format!("{THREADS_ENV}={v} is not a count")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| HarnessError::Input(e.to_string()))
}

fn frac(x: &Q) -> String {
    x.to_string()
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct FilterEcho {
    pub max_n: usize,
    pub min_girth: Option<usize>,
    pub planar: bool,
    pub connected: bool,
    pub include_acyclic: bool,
}

impl FilterEcho {
    pub fn new(f: &EnumFilter, include_acyclic: bool) -> FilterEcho {
        FilterEcho {
            max_n: f.max_n,
            min_girth: f.min_girth,
            planar: f.require_planar,
            connected: f.require_connected,
            include_acyclic,
        }
    }
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq, Default)]
pub struct Meta {
    pub tool: String,
    pub version: String,
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub filter: Option<FilterEcho>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weights: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scale: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub strict: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub variant: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Meta {
    pub fn new(command: &str) -> Meta {
        Meta {
            tool: TOOL.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            ..Meta::default()
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize, PartialEq, Eq, Default)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    #[default]
    Ok,
    Violation,
    /// K1: equality instead of strict inequality.
    EqualityException,
    Witnessed,
    Unwitnessed,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct DischargeSummary {
    pub ruleset: String,
    pub faces: usize,
    pub initial_total: String,
    pub final_total: String,
    pub negatives: Vec<String>,
    pub bad_faces: usize,
    pub count_violations: usize,
}

impl DischargeSummary {
    pub fn new(r: &DischargeReport) -> DischargeSummary {
        DischargeSummary {
            ruleset: r.ruleset.to_string(),
            faces: r.faces.len(),
            initial_total: frac(&r.initial.total),
            final_total: frac(&r.after.total),
            negatives: r.negatives.iter().map(|(e, c)| format!("{e}:{c}")).collect(),
            bad_faces: r.bad_faces.len(),
            count_violations: r.count_violations().len(),
        }
    }
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq, Default)]
pub struct GraphRecord {
    pub graph6: String,
    pub n: usize,
    pub girth: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma: Option<usize>,
    /// Witness for gamma, so a violation can be re-checked.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dominating_set: Option<Vec<usize>>,
    /// w(G) as an exact fraction.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<String>,
    /// w(G) - gamma.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub margin: Option<String>,
    /// W * gamma and W * w(G) for the run's scale W.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scaled: Option<(String, String)>,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closed_form_ok: Option<bool>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub hits: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub discharge: Option<DischargeSummary>,
}

impl GraphRecord {
    fn base(g: &Graph) -> GraphRecord {
        GraphRecord { graph6: codec::emit_graph6(g), n: g.n(), girth: g.girth().to_string(), ..GraphRecord::default() }
    }
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq, Default)]
pub struct OrderCount {
    pub n: usize,
    pub graphs: usize,
    pub violations: usize,
    pub exceptions: usize,
    pub unwitnessed: usize,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq, Default)]
pub struct Aggregate {
    pub graphs: usize,
    pub violations: usize,
    pub exceptions: usize,
    pub unwitnessed: usize,
    pub per_order: Vec<OrderCount>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
}

impl Aggregate {
    pub fn of(records: &[GraphRecord]) -> Aggregate {
        let mut by: BTreeMap<usize, OrderCount> = BTreeMap::new();
        for r in records {
            let c = by.entry(r.n).or_insert_with(|| OrderCount { n: r.n, ..OrderCount::default() });
            c.graphs += 1;
            match r.verdict {
                Verdict::Violation => c.violations += 1,
                Verdict::EqualityException => c.exceptions += 1,
                Verdict::Unwitnessed => c.unwitnessed += 1,
                _ => {}
            }
        }
        let per_order: Vec<OrderCount> = by.into_values().collect();
        Aggregate {
            graphs: per_order.iter().map(|c| c.graphs).sum(),
            violations: per_order.iter().map(|c| c.violations).sum(),
            exceptions: per_order.iter().map(|c| c.exceptions).sum(),
            unwitnessed: per_order.iter().map(|c| c.unwitnessed).sum(),
            per_order,
            elapsed_ms: None,
        }
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("n,graphs,violations,exceptions,unwitnessed\n");
        for c in &self.per_order {
            s.push_str(&format!("{},{},{},{},{}\n", c.n, c.graphs, c.violations, c.exceptions, c.unwitnessed));
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunReport {
    pub meta: Meta,
    pub records: Vec<GraphRecord>,
    pub aggregate: Aggregate,
}

#[derive(Serialize)]
#[serde(tag = "type", rename_all = "lowercase")]
enum Line<'a> {
    Meta(&'a Meta),
    Graph(&'a GraphRecord),
    Aggregate(&'a Aggregate),
}

impl RunReport {
    pub fn new(meta: Meta, records: Vec<GraphRecord>) -> RunReport {
        let aggregate = Aggregate::of(&records);
        RunReport { meta, records, aggregate }
    }

    pub fn violations(&self) -> impl Iterator<Item = &GraphRecord> {
        self.records.iter().filter(|r| r.verdict == Verdict::Violation)
    }

    /// Meta line, one line per graph, then the aggregate.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        let mut push = |l: Line| {
            out.push_str(&serde_json::to_string(&l).expect("report serializes"));
            out.push('\n');
        };
        push(Line::Meta(&self.meta));
        for r in &self.records {
            push(Line::Graph(r));
        }
        push(Line::Aggregate(&self.aggregate));
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    pub strict: bool,
    /// Count K1 as an ordinary graph instead of the equality exception.
    pub include_k1: bool,
    pub include_acyclic: bool,
}

impl Default for VerifyOptions {
    fn default() -> VerifyOptions {
        VerifyOptions { strict: true, include_k1: false, include_acyclic: true }
    }
}

/// Checks `W * gamma(G) < W * w(G)` (or `<=`) on each graph, in input order.
pub fn verify_graphs(
    graphs: &[Graph],
    w: &WeightVector,
    scale: &Q,
    opts: VerifyOptions,
) -> Result<Vec<GraphRecord>, HarnessError> {
    graphs
        .par_iter()
        .filter(|g| opts.include_acyclic || g.girth() != GirthResult::Acyclic)
        .map(|g| {
            let v = check_bound(g, w)?;
            let mut r = GraphRecord::base(g);
            r.verdict = if g.n() == 1 && !opts.include_k1 && !v.ok(opts.strict) {
                Verdict::EqualityException
            } else if v.ok(opts.strict) {
                Verdict::Ok
            } else {
                Verdict::Violation
            };
            r.gamma = Some(v.gamma);
            r.dominating_set = Some(v.dominating_set.to_vec());
            r.scaled = Some((frac(&(scale * qi(v.gamma as i64))), frac(&(scale * &v.weighted_order))));
            r.bound = Some(frac(&v.weighted_order));
            r.margin = Some(frac(&v.margin));
            Ok(r)
        })
        .collect()
}

pub fn verify_theorem(
    filter: &EnumFilter,
    w: &WeightVector,
    scale: &Q,
    opts: VerifyOptions,
) -> Result<RunReport, HarnessError> {
    let graphs: Vec<Graph> = enumerate_subcubic(filter).collect();
    let records = verify_graphs(&graphs, w, scale, opts)?;
    let mut meta = Meta::new("verify");
    meta.filter = Some(FilterEcho::new(filter, opts.include_acyclic));
    meta.weights = Some(w.to_string());
    meta.scale = Some(frac(scale));
    meta.strict = Some(opts.strict);
    if !opts.include_k1 {
        meta.notes.push("K1 meets the bound with equality and is reported as equality-exception".into());
    }
    if opts.include_acyclic {
        meta.notes.push("acyclic graphs count as satisfying every girth bound".into());
    }
    Ok(RunReport::new(meta, records))
}

/// Catalog hits and discharging outcome on each planar graph.  A graph with
/// no hit must end with negative charge somewhere, since the total is -12.
pub fn witness_graphs(graphs: &[Graph], variant: Variant) -> Result<Vec<GraphRecord>, HarnessError> {
    graphs
        .par_iter()
        .map(|g| {
            let e = planarity_embed(g).map_err(|_| HarnessError::NonPlanar(codec::emit_graph6(g)))?;
            let mut hits: Vec<String> = Vec::new();
            for h in find_configurations(g, &e, variant) {
                if !hits.contains(&h.entry) {
                    hits.push(h.entry);
                }
            }
            let d = verify_discharging(g, &e, variant.ruleset()).map_err(|x| HarnessError::Input(x.to_string()))?;
            let mut r = GraphRecord::base(g);
            r.verdict = if hits.is_empty() { Verdict::Unwitnessed } else { Verdict::Witnessed };
            r.hits = hits;
            r.discharge = Some(DischargeSummary::new(&d));
            Ok(r)
        })
        .collect()
}

/// Runs `witness_graphs` over the enumeration of graphs with a cycle.
pub fn witness_structure(filter: &EnumFilter, variant: Variant) -> Result<RunReport, HarnessError> {
    if !filter.require_planar || !filter.require_connected {
        return Err(HarnessError::InvalidFilter("witness runs need connected planar graphs".into()));
    }
    if filter.min_girth.is_none_or(|k| k < variant.min_girth()) {
        return Err(HarnessError::InvalidFilter(format!("{} needs girth >= {}", variant.name(), variant.min_girth())));
    }
    let graphs: Vec<Graph> = enumerate_subcubic(filter).filter(|g| g.girth() != GirthResult::Acyclic).collect();
    let records = witness_graphs(&graphs, variant)?;
    let mut meta = Meta::new("witness");
    meta.filter = Some(FilterEcho::new(filter, false));
    meta.variant = Some(variant.name().to_string());
    Ok(RunReport::new(meta, records))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    CycleStar,
    H,
    G1,
    G2,
}

impl FromStr for Family {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Family, HarnessError> {
        match s {
            "c-star" => Ok(Family::CycleStar),
            "h-n" => Ok(Family::H),
            "g1" => Ok(Family::G1),
            "g2" => Ok(Family::G2),
            _ => Err(HarnessError::Input(format!("unknown family {s:?}"))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::CycleStar => "c-star",
            Family::H => "h-n",
            Family::G1 => "g1",
            Family::G2 => "g2",
        })
    }
}

impl Family {
    /// The member graph, its expected gamma and its weighted order under the
    /// first weight vector.
    pub fn member(self, n: usize) -> Result<(Graph, usize, Q), HarnessError> {
        let ni = n as i64;
        match self {
            Family::CycleStar if n >= 3 => Ok((named::cycle_star(n), n, q(11 * ni, 10))),
            Family::H if n >= 3 => Ok((named::h_n(n), 4 * n, q(81 * ni, 20))),
            Family::G1 => Ok((named::g1(), 2, q(39, 20))),
            Family::G2 => Ok((named::g2(), 4, q(39, 10))),
            _ => Err(HarnessError::Input(format!("{self} needs n >= 3"))),
        }
    }
}

/// Builds each member, solves gamma exactly and compares with the closed forms.
pub fn reproduce_families(family: Family, ns: &[usize]) -> Result<RunReport, HarnessError> {
    let w = WeightVector::thm1();
    let mut records = Vec::new();
    for &n in ns {
        let (g, gamma, bound) = family.member(n)?;
        let mut r = verify_graphs(std::slice::from_ref(&g), &w, &qi(1), VerifyOptions::default())?.remove(0);
        r.family = Some(format!("{family}({n})"));
        r.closed_form_ok = Some(r.gamma == Some(gamma) && r.bound.as_deref() == Some(frac(&bound).as_str()));
        r.scaled = None;
        records.push(r);
    }
    let mut meta = Meta::new("families");
    meta.weights = Some(w.to_string());
    Ok(RunReport::new(meta, records))
}

/// Random spanning tree with degree cap 3, then random extra edges kept only
/// while the graph stays planar.
pub fn random_connected_planar_subcubic<R: Rng>(rng: &mut R, n: usize) -> Graph {
    let mut g = Graph::empty(n).expect("n within capacity");
    for v in 1..n {
        loop {
            let u = rng.gen_range(0..v);
            if g.degree(u) < 3 {
                g = g.with_edge(u, v);
                break;
            }
        }
    }
    for _ in 0..rng.gen_range(0..=n) {
        let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if u == v || g.has_edge(u, v) || g.degree(u) >= 3 || g.degree(v) >= 3 {
            continue;
        }
        let h = g.with_edge(u, v);
        if planar::is_planar(&h) {
            g = h;
        }
    }
    g
}
