//! Linear constraints on weight vectors and an exact LP over them.
//!
//! Weights are normalized by w0 = 1, so the free variables are (w1, w2, w3).
//! Every catalog case contributes `(ws - cost) . w >= gamma_S`, which must hold
//! for the entry to stay reducible under `w`.

use std::fmt;
use std::str::FromStr;

use configurations::{catalog, Variant};
use domination::{qi, WeightVector, Q};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

mod simplex;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source {
    Normalization,
    Monotone,
    Entry { name: String, case: usize },
    Family(String),
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Source::Normalization => f.write_str("normalization"),
            Source::Monotone => f.write_str("monotone"),
            Source::Entry { name, case } => write!(f, "entry {name} case {case}"),
            Source::Family(s) => write!(f, "family {s}"),
        }
    }
}

/// `coeffs . (w0, w1, w2, w3) >= rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: [Q; 4],
    pub rhs: Q,
    pub source: Source,
}

impl Constraint {
    pub fn new(coeffs: [i64; 4], rhs: Q, source: Source) -> Constraint {
        Constraint { coeffs: coeffs.map(qi), rhs, source }
    }

    pub fn lhs(&self, w: &WeightVector) -> Q {
        (0..4).fold(qi(0), |a, i| a + self.coeffs[i].clone() * w.get(i).clone())
    }

    pub fn slack(&self, w: &WeightVector) -> Q {
        self.lhs(w) - self.rhs.clone()
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} >= {}", linear_string(&self.coeffs), self.rhs)
    }
}

fn linear_string(c: &[Q; 4]) -> String {
    let mut s = String::new();
    for (i, a) in c.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let mag = a.abs();
        if s.is_empty() {
            if a.is_negative() {
                s.push('-');
            }
        } else {
            s.push_str(if a.is_negative() { " - " } else { " + " });
        }
        if mag != qi(1) {
            s.push_str(&mag.to_string());
            s.push('*');
        }
        s.push_str(&format!("w{i}"));
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ConstraintSet {
    pub label: String,
    pub rows: Vec<Constraint>,
}

impl ConstraintSet {
    /// Normalization w0 = 1 and 1 >= w1 >= w2 >= w3 >= 0.
    pub fn base(label: &str) -> ConstraintSet {
        let mut rows = vec![
            Constraint::new([1, 0, 0, 0], qi(1), Source::Normalization),
            Constraint::new([-1, 0, 0, 0], qi(-1), Source::Normalization),
        ];
        for i in 0..3 {
            let mut c = [0; 4];
            c[i] = 1;
            c[i + 1] = -1;
            rows.push(Constraint::new(c, qi(0), Source::Monotone));
        }
        rows.push(Constraint::new([0, 0, 0, 1], qi(0), Source::Monotone));
        ConstraintSet { label: label.to_string(), rows }
    }

    pub fn push(&mut self, c: Constraint) {
        self.rows.push(c);
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("# constraints {}\n", self.label);
        for (i, c) in self.rows.iter().enumerate() {
            s.push_str(&format!("{i:>4}  {c}  # {}\n", c.source));
        }
        s
    }
}

/// Cycle with a pendant at every vertex: forces w1 + w3 >= 1.
pub fn cycle_star_family() -> Constraint {
    Constraint::new([0, 1, 0, 1], qi(1), Source::Family("cycle-star".into()))
}

/// The H_n family without a girth condition: forces w2 + 10 w3 >= 4.
pub fn h_family() -> Constraint {
    Constraint::new([0, 0, 1, 10], qi(4), Source::Family("h-n".into()))
}

/// Rows that keep every catalog entry of `variant` reducible.
pub fn generate_constraints(variant: Variant, include_tight_families: bool) -> ConstraintSet {
    let mut cs = ConstraintSet::base(variant.name());
    for e in catalog(variant) {
        for (case, (ws, gap)) in e.forms().into_iter().enumerate() {
            let lf = gap.linear_form();
            let c = std::array::from_fn(|i| ws[i] - lf[i]);
            cs.push(Constraint::new(c, qi(e.gamma_s as i64), Source::Entry { name: e.name.clone(), case }));
        }
    }
    if include_tight_families {
        cs.push(cycle_star_family());
    }
    cs
}

/// Base rows plus both tight families, for graphs with no girth condition.
pub fn no_girth_constraints() -> ConstraintSet {
    let mut cs = ConstraintSet::base("no-girth");
    cs.push(cycle_star_family());
    cs.push(h_family());
    cs
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Feasibility {
    /// Indices of violated rows with their (negative) slack.
    pub violated: Vec<(usize, Q)>,
    /// Indices of rows holding with equality.
    pub binding: Vec<usize>,
}

impl Feasibility {
    pub fn feasible(&self) -> bool {
        self.violated.is_empty()
    }
}

pub fn is_feasible(cs: &ConstraintSet, w: &WeightVector) -> Feasibility {
    let mut violated = Vec::new();
    let mut binding = Vec::new();
    for (i, c) in cs.rows.iter().enumerate() {
        let s = c.slack(w);
        if s.is_negative() {
            violated.push((i, s));
        } else if s.is_zero() {
            binding.push(i);
        }
    }
    Feasibility { violated, binding }
}

/// Linear objective over (w0, w1, w2, w3).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Objective(pub [Q; 4]);

impl Objective {
    pub fn w(i: usize) -> Objective {
        let mut c = [qi(0), qi(0), qi(0), qi(0)];
        c[i] = qi(1);
        Objective(c)
    }

    pub fn eval(&self, w: &WeightVector) -> Q {
        (0..4).fold(qi(0), |a, i| a + self.0[i].clone() * w.get(i).clone())
    }
}

impl fmt::Display for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&linear_string(&self.0))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("bad objective: {0}")]
pub struct ObjectiveParseError(pub String);

/// Parses `c1,c2,c3` (coefficients of w1, w2, w3) or expressions such as
/// `w3`, `w2 + 6*w3` or `1/2 w1 - w3`.  An all-zero objective is rejected.
impl FromStr for Objective {
    type Err = ObjectiveParseError;

    fn from_str(s: &str) -> Result<Objective, ObjectiveParseError> {
        let err = || ObjectiveParseError(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err());
        }
        let o = if compact.contains(',') { parse_coefficients(&compact) } else { parse_expression(&compact) };
        match o {
            Some(o) if !o.0.iter().all(Zero::is_zero) => Ok(o),
            _ => Err(err()),
        }
    }
}

fn parse_coefficients(s: &str) -> Option<Objective> {
    let v: Vec<Q> = s.split(',').map(|p| p.parse().ok()).collect::<Option<_>>()?;
    let [a, b, c]: [Q; 3] = v.try_into().ok()?;
    Some(Objective([qi(0), a, b, c]))
}

fn parse_expression(compact: &str) -> Option<Objective> {
    let mut c = [qi(0), qi(0), qi(0), qi(0)];
    let mut terms = Vec::new();
    let mut cur = String::new();
    for ch in compact.chars() {
        if (ch == '+' || ch == '-') && !cur.is_empty() {
            terms.push(std::mem::take(&mut cur));
        }
        cur.push(ch);
    }
    terms.push(cur);
    for t in terms {
        let (neg, body) = match t.strip_prefix('-') {
            Some(b) => (true, b),
            None => (false, t.strip_prefix('+').unwrap_or(&t)),
        };
        let at = body.find('w')?;
        let idx: usize = body[at + 1..].parse().ok()?;
        if idx > 3 {
            return None;
        }
        let coef = body[..at].trim_end_matches('*');
        let mut k = if coef.is_empty() { qi(1) } else { coef.parse::<Q>().ok()? };
        if neg {
            k = -k;
        }
        c[idx] += k;
    }
    Some(Objective(c))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum LpError {
    #[error("constraints are infeasible")]
    Infeasible,
    #[error("objective is unbounded below")]
    Unbounded,
    #[error("coefficients too large for vertex enumeration")]
    TooLarge,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Method {
    #[default]
    Simplex,
    Vertices,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Optimum {
    /// Lexicographically smallest optimal point.
    pub w: WeightVector,
    pub value: Q,
    /// Indices of rows holding with equality at `w`.
    pub binding: Vec<usize>,
}

impl Optimum {
    pub fn binding_sources<'a>(&self, cs: &'a ConstraintSet) -> Vec<&'a Source> {
        self.binding.iter().map(|&i| &cs.rows[i].source).collect()
    }
}

/// A row over (w1, w2, w3) after substituting w0 = 1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) struct Row {
    pub a: [Q; 3],
    pub b: Q,
}

/// Substitutes w0 = 1, adds w >= 0 and drops implied rows.  Rows without
/// variables are checked directly.
fn reduce(cs: &ConstraintSet) -> Result<Vec<Row>, LpError> {
    let mut rows = Vec::new();
    for c in &cs.rows {
        let a = [c.coeffs[1].clone(), c.coeffs[2].clone(), c.coeffs[3].clone()];
        let b = c.rhs.clone() - c.coeffs[0].clone();
        if a.iter().all(Zero::is_zero) {
            if b.is_positive() {
                return Err(LpError::Infeasible);
            }
            continue;
        }
        rows.push(Row { a, b });
    }
    for i in 0..3 {
        let mut a = [qi(0), qi(0), qi(0)];
        a[i] = qi(1);
        rows.push(Row { a, b: qi(0) });
    }
    rows.sort();
    rows.dedup();
    Ok(prune(&rows))
}

pub fn minimize(cs: &ConstraintSet, obj: &Objective) -> Result<Optimum, LpError> {
    minimize_with(cs, obj, Method::Simplex)
}

pub fn minimize_with(cs: &ConstraintSet, obj: &Objective, method: Method) -> Result<Optimum, LpError> {
    let rows = reduce(cs)?;
    let c = [obj.0[1].clone(), obj.0[2].clone(), obj.0[3].clone()];
    let x = match method {
        Method::Simplex => lex_simplex(&rows, &c)?,
        Method::Vertices => vertex_min(&rows, &c)?,
    };
    let w = WeightVector::new([qi(1), x[0].clone(), x[1].clone(), x[2].clone()]);
    let value = obj.eval(&w);
    let binding = is_feasible(cs, &w).binding;
    Ok(Optimum { w, value, binding })
}

/// Optimum, then successive minimization of w1, w2, w3 on the optimal face.
fn lex_simplex(rows: &[Row], c: &[Q; 3]) -> Result<[Q; 3], LpError> {
    let mut rows = rows.to_vec();
    let mut objs = vec![c.clone()];
    for i in 0..3 {
        let mut e = [qi(0), qi(0), qi(0)];
        e[i] = qi(1);
        objs.push(e);
    }
    let mut x = None;
    for o in objs {
        let (v, sol) = solve_incremental(&rows, &o)?;
        rows.push(Row { a: o.clone().map(|t| -t), b: -v });
        x = Some(sol);
    }
    Ok(x.unwrap())
}

/// Solves on the rows with b <= 0 first and adds the most violated row until the
/// point is feasible for all of them.  Each subset is a relaxation, so
/// infeasibility and optimality carry over.
fn solve_incremental(rows: &[Row], c: &[Q; 3]) -> Result<(Q, [Q; 3]), LpError> {
    let mut active: Vec<bool> = rows.iter().map(|r| !r.b.is_positive()).collect();
    loop {
        let sub: Vec<Row> = rows.iter().zip(&active).filter(|p| *p.1).map(|p| p.0.clone()).collect();
        let (v, x) = match simplex::solve(&sub, c) {
            Err(LpError::Unbounded) if active.iter().any(|a| !a) => {
                active.iter_mut().for_each(|a| *a = true);
                continue;
            }
            r => r?,
        };
        let mut worst: Option<(usize, Q)> = None;
        for (i, r) in rows.iter().enumerate() {
            let slack = (0..3).fold(-r.b.clone(), |a, t| a + r.a[t].clone() * x[t].clone());
            if !active[i] && slack.is_negative() && worst.as_ref().is_none_or(|w| slack < w.1) {
                worst = Some((i, slack));
            }
        }
        match worst {
            Some((i, _)) => active[i] = true,
            None => return Ok((v, x)),
        }
    }
}

/// Drops rows implied by another row under w >= 0: `a' >= a` and `b' <= b`.
fn prune(rows: &[Row]) -> Vec<Row> {
    let implied = |r: &Row, by: &Row| (0..3).all(|i| r.a[i] >= by.a[i]) && r.b <= by.b;
    let mut keep: Vec<Row> = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        let dominated = rows.iter().enumerate().any(|(j, o)| {
            j != i && implied(r, o) && (!implied(o, r) || j < i)
        });
        if !dominated {
            keep.push(r.clone());
        }
    }
    keep
}

type IRow = ([i128; 3], i128);

/// Clears denominators row by row; the vertex search runs on integers.
fn integer_rows(rows: &[Row]) -> Result<Vec<IRow>, LpError> {
    const LIMIT: i128 = 1 << 20;
    rows.iter()
        .map(|r| {
            let l = r.a.iter().chain([&r.b]).fold(BigInt::one(), |l, x| l.lcm(x.denom()));
            let conv = |x: &Q| {
                (x * Q::from_integer(l.clone())).to_integer().to_i128().filter(|v| v.abs() <= LIMIT).ok_or(LpError::TooLarge)
            };
            Ok(([conv(&r.a[0])?, conv(&r.a[1])?, conv(&r.a[2])?], conv(&r.b)?))
        })
        .collect()
}

fn det3(m: &[[i128; 3]; 3]) -> i128 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Intersection point of three planes as (numerators, positive denominator).
fn solve3(r: [&IRow; 3]) -> Option<([i128; 3], i128)> {
    let m = [r[0].0, r[1].0, r[2].0];
    let d = det3(&m);
    if d == 0 {
        return None;
    }
    let sign = d.signum();
    let num = std::array::from_fn(|col| {
        let mut mc = m;
        for k in 0..3 {
            mc[k][col] = r[k].1;
        }
        det3(&mc) * sign
    });
    Some((num, d * sign))
}

fn dot(a: &[i128; 3], x: &[i128; 3]) -> i128 {
    a[0] * x[0] + a[1] * x[1] + a[2] * x[2]
}

/// Minimum over the vertices of the polyhedron, then a check of the
/// recession cone for unboundedness.
fn vertex_min(rows: &[Row], c: &[Q; 3]) -> Result<[Q; 3], LpError> {
    let rows = integer_rows(rows)?;
    let val = |x: &[Q; 3]| (0..3).fold(qi(0), |a, i| a + c[i].clone() * x[i].clone());
    let mut best: Option<(Q, [Q; 3])> = None;
    let n = rows.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let Some((num, d)) = solve3([&rows[i], &rows[j], &rows[k]]) else { continue };
                if !rows.iter().all(|(a, b)| dot(a, &num) >= b * d) {
                    continue;
                }
                let x = num.map(|t| Q::new(BigInt::from(t), BigInt::from(d)));
                let v = val(&x);
                let better = match &best {
                    None => true,
                    Some((bv, bx)) => v < *bv || (v == *bv && x < *bx),
                };
                if better {
                    best = Some((v, x));
                }
            }
        }
    }
    let (_, x) = best.ok_or(LpError::Infeasible)?;
    // Every set contains w >= 0, so the recession cone {d : a.d >= 0} is
    // pointed and its extreme rays lie on two tight homogeneous rows.
    for i in 0..n {
        for j in i + 1..n {
            let (p, q) = (&rows[i].0, &rows[j].0);
            let d = [p[1] * q[2] - p[2] * q[1], p[2] * q[0] - p[0] * q[2], p[0] * q[1] - p[1] * q[0]];
            if d == [0, 0, 0] {
                continue;
            }
            for d in [d, d.map(|t| -t)] {
                if rows.iter().all(|(a, _)| dot(a, &d) >= 0) && val(&d.map(|t| Q::from_integer(BigInt::from(t)))).is_negative() {
                    return Err(LpError::Unbounded);
                }
            }
        }
    }
    Ok(x)
}
