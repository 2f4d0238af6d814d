//! Reducible configurations: the cost calculus, a machine-readable catalog,
//! an arithmetic checker and a matcher over concrete graphs.
//!
//! An entry is reducible when `W * gamma_S <= w_S - c_max` in every listed
//! case: a minimal counterexample would need the strict reverse inequality.

pub mod catalog;
pub mod cost;
pub mod matcher;

use std::fmt;

use domination::Q;
use thiserror::Error;

pub use catalog::{catalog, catalog_text, ConfigEntry, FaceRule, Pattern, SequencePattern, Token, Variant, WsCase};
pub use cost::{
    cost_contribution, cost_of_removal, cost_upper_bound_edges, pareto, CostBound, CostContext, DegSet, Gap,
};
pub use matcher::{find_configurations, find_in, match_sequence, recheck_hit, ConfigHit};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("vertex {0} has degree {1} > 3")]
    NotSubcubic(usize, usize),
    #[error("S is empty")]
    EmptyS,
    #[error("a degree-{d} vertex cannot lose {j} neighbors")]
    LostExceedsDegree { d: usize, j: usize },
    #[error("l = {l} exceeds k = {k}")]
    EdgeCount { k: usize, l: usize },
    #[error("weights {0} are not a nonnegative nonincreasing vector")]
    InvalidWeights(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Reducibility {
    Reducible,
    /// How far `w_S - c_max` falls short of `W * gamma_S`.
    NotReducible(Q),
}

/// Arithmetic of one entry at the worst (smallest) case.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntryCheck {
    pub name: String,
    /// W * gamma_S.
    pub lhs: Q,
    pub ws: Q,
    pub cost: Q,
    /// ws - cost.
    pub value: Q,
    pub worst_gap: Gap,
    pub verdict: Reducibility,
}

impl EntryCheck {
    pub fn reducible(&self) -> bool {
        self.verdict == Reducibility::Reducible
    }

    pub fn margin(&self) -> Q {
        self.value.clone() - self.lhs.clone()
    }

    /// `ws-cost=value >= lhs`.
    pub fn line(&self) -> String {
        let rel = if self.reducible() { ">=" } else { "<" };
        format!("{}-{}={} {} {}", num(&self.ws), num(&self.cost), num(&self.value), rel, num(&self.lhs))
    }
}

fn num(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

impl fmt::Display for EntryCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.name, self.line())
    }
}

pub fn check_entry_arithmetic(e: &ConfigEntry, ctx: &CostContext) -> EntryCheck {
    let lhs = ctx.scale.clone() * domination::qi(e.gamma_s as i64);
    let mut best: Option<(Q, Q, Q, Gap)> = None;
    for (ws, gap) in e.forms() {
        let w = ctx.eval_counts(&ws);
        let c = ctx.eval_gap(&gap);
        let v = w.clone() - c.clone();
        if best.as_ref().is_none_or(|b| v < b.2) {
            best = Some((w, c, v, gap));
        }
    }
    let (ws, cost, value, worst_gap) = best.expect("entry without cases");
    let verdict =
        if lhs <= value { Reducibility::Reducible } else { Reducibility::NotReducible(lhs.clone() - value.clone()) };
    EntryCheck { name: e.name.clone(), lhs, ws, cost, value, worst_gap, verdict }
}

pub fn check_catalog(variant: Variant) -> Vec<EntryCheck> {
    let ctx = variant.ctx();
    catalog(variant).iter().map(|e| check_entry_arithmetic(e, &ctx)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use domination::qi;
    use graph_core::{named, Graph, VertexSet};

    fn triple(c: &EntryCheck) -> (i64, i64, i64, i64) {
        let i = |x: &Q| -> i64 { x.numer().try_into().unwrap() };
        (i(&c.ws), i(&c.cost), i(&c.value), i(&c.lhs))
    }

    #[test]
    fn table_one() {
        let ctx = CostContext::thm1();
        let got: Vec<Q> = [(1, 1), (2, 1), (2, 2), (3, 1), (3, 2), (3, 3)]
            .iter()
            .map(|&(d, j)| cost_contribution(&ctx, d, j).unwrap())
            .collect();
        assert_eq!(got, [5, 4, 9, 4, 8, 13].map(qi).to_vec());
        for d in 0..=3 {
            assert_eq!(cost_contribution(&ctx, d, 0).unwrap(), qi(0));
        }
        assert_eq!(cost_contribution(&ctx, 1, 2), Err(ConfigError::LostExceedsDegree { d: 1, j: 2 }));
    }

    #[test]
    fn edge_bound() {
        let ctx = CostContext::thm1();
        assert_eq!(cost_upper_bound_edges(&ctx, 14, None).unwrap(), qi(63));
        assert_eq!(cost_upper_bound_edges(&ctx, 16, None).unwrap(), qi(72));
        assert_eq!(cost_upper_bound_edges(&ctx, 0, None).unwrap(), qi(0));
        assert!(cost_upper_bound_edges(&ctx, 3, Some(4)).is_err());
        for k in 0..20 {
            let knap = CostBound::edges(k).gaps().iter().map(|g| ctx.eval_gap(g)).max().unwrap();
            assert_eq!(knap, cost_upper_bound_edges(&ctx, k, None).unwrap());
        }
    }

    #[test]
    fn removal_cost_examples() {
        let ctx = CostContext::thm1();
        // leaf 0 - 2-vertex 1 - leaf 2 : S = {0,1}, w = 2 has degree 1
        let g = named::path(3);
        assert_eq!(cost_of_removal(&g, VertexSet::from_iter([0, 1]), &ctx).unwrap(), qi(5));
        assert_eq!(cost_of_removal(&g, g.vertices(), &ctx).unwrap(), qi(0));
        assert_eq!(cost_of_removal(&g, VertexSet::EMPTY, &ctx), Err(ConfigError::EmptyS));
        // leaf-3-2 with both boundary vertices leaves
        let h = Graph::new(5, &[(0, 1), (1, 2), (1, 3), (2, 4)]).unwrap();
        assert_eq!(cost_of_removal(&h, VertexSet::from_iter([0, 1, 2]), &ctx).unwrap(), qi(10));
    }

    #[test]
    fn girth9_thm1_lines() {
        let lines: Vec<_> = check_catalog(Variant::Girth9Thm1).iter().map(triple).collect();
        assert_eq!(
            lines,
            vec![
                (26, 5, 21, 20),
                (37, 5, 32, 20),
                (33, 10, 23, 20),
                (58, 18, 40, 40),
                (33, 10, 23, 20),
                (36, 16, 20, 20),
                (36, 16, 20, 20),
                (58, 16, 42, 40)
            ]
        );
    }

    #[test]
    fn girth8_face_lines() {
        let checks = check_catalog(Variant::Girth8Thm1);
        assert_eq!(checks.len(), 16);
        let lines: Vec<_> = checks[8..].iter().map(triple).map(|t| (t.0, t.1, t.2)).collect();
        assert_eq!(
            lines,
            vec![(118, 37, 81), (114, 33, 81), (111, 24, 87), (146, 46, 100), (146, 46, 100), (203, 63, 140), (253, 72, 181), (214, 63, 151)]
        );
        assert!(checks.iter().all(|c| c.reducible()));
    }

    #[test]
    fn girth9_thm2_all_reducible() {
        let checks = check_catalog(Variant::Girth9Thm2);
        assert_eq!(checks.len(), 15);
        for c in &checks {
            assert!(c.reducible(), "{c}");
        }
        let v: Vec<i64> = checks.iter().map(|c| triple(c).2).collect();
        assert_eq!(v, vec![18, 28, 20, 34, 19, 17, 34, 35, 21, 36, 35, 34, 35, 34, 17]);
    }

    #[test]
    fn line_format() {
        let c = &check_catalog(Variant::Girth9Thm1)[0];
        assert_eq!(c.line(), "26-5=21 >= 20");
    }

    #[test]
    fn not_reducible_reports_shortfall() {
        let e = &catalog(Variant::Girth9Thm1)[0];
        let w = domination::WeightVector::new([qi(1), qi(1) / qi(2), qi(1) / qi(2), qi(1) / qi(3)]);
        let ctx = CostContext::new(w, qi(6)).unwrap();
        let c = check_entry_arithmetic(e, &ctx);
        // ws = 6, worst cost = 3, value 3 < 6
        assert_eq!(c.verdict, Reducibility::NotReducible(qi(3)));
    }

    #[test]
    fn pattern_parse_roundtrip() {
        let p: SequencePattern = "2 2 3:23 3:1,3".parse().unwrap();
        assert_eq!(p.to_string(), "2 2 3:23 3:1,3");
        assert!("".parse::<SequencePattern>().is_err());
        assert!("4".parse::<SequencePattern>().is_err());
    }

    #[test]
    fn catalog_text_lists_every_entry() {
        for v in Variant::ALL {
            let t = catalog_text(v);
            assert!(t.starts_with("# catalog v1 "));
            assert_eq!(t.matches("\nentry ").count(), catalog(v).len());
        }
    }
}
