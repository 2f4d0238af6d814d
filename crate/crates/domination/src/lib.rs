//! Exact domination numbers and the weighted-order bound.

use std::fmt;
use std::str::FromStr;

use graph_core::{BitIter, Graph, GraphError, VertexSet};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Exact fraction string, always with a denominator: "-12/1".
pub fn fraction_string(x: &Q) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

fn closed_rows(g: &Graph) -> Vec<u128> {
    (0..g.n()).map(|v| g.row(v) | 1u128 << v).collect()
}

pub fn is_dominating(g: &Graph, d: VertexSet) -> bool {
    g.closed_neighborhood(d) == g.vertices()
}

/// Smallest dominating set by trying all subsets in order of size.
pub fn gamma_bruteforce_set(g: &Graph) -> VertexSet {
    let n = g.n();
    let nb = closed_rows(g);
    let full = VertexSet::full(n).0;
    for k in 0..=n {
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            let cover = idx.iter().fold(0u128, |c, &v| c | nb[v]);
            if cover == full {
                return idx.into_iter().collect();
            }
            // next k-combination
            let mut i = k;
            while i > 0 && idx[i - 1] == n - k + i - 1 {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            idx[i - 1] += 1;
            for j in i..k {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    unreachable!("V(G) dominates itself")
}

pub fn gamma_bruteforce(g: &Graph) -> usize {
    gamma_bruteforce_set(g).len()
}

struct Solver {
    nb: Vec<u128>,
    // vertices sharing a possible dominator with v
    nb2: Vec<u128>,
}

impl Solver {
    fn new(g: &Graph) -> Solver {
        let nb = closed_rows(g);
        let nb2 = nb.iter().map(|&r| BitIter(r).fold(0u128, |a, u| a | nb[u])).collect();
        Solver { nb, nb2 }
    }

    fn greedy(&self, mut undom: u128) -> u128 {
        let mut pick = 0u128;
        while undom != 0 {
            let u = (0..self.nb.len())
                .max_by_key(|&u| ((self.nb[u] & undom).count_ones(), std::cmp::Reverse(u)))
                .unwrap();
            pick |= 1 << u;
            undom &= !self.nb[u];
        }
        pick
    }

    fn lower_bound(&self, undom: u128) -> usize {
        // undominated vertices with disjoint closed neighborhoods need distinct dominators
        let mut zone = 0u128;
        let mut packing = 0;
        for v in BitIter(undom) {
            if self.nb[v] & zone == 0 {
                packing += 1;
                zone |= self.nb[v];
            }
        }
        let cover = BitIter(zone | undom)
            .flat_map(|v| BitIter(self.nb[v]))
            .map(|u| (self.nb[u] & undom).count_ones())
            .max()
            .unwrap_or(1)
            .max(1);
        packing.max((undom.count_ones()).div_ceil(cover) as usize)
    }

    /// Groups of undominated vertices that can never share a dominator.
    fn parts(&self, undom: u128) -> Vec<u128> {
        let mut left = undom;
        let mut out = Vec::new();
        while left != 0 {
            let mut comp = left & left.wrapping_neg();
            let mut frontier = comp;
            while frontier != 0 {
                let reach = BitIter(frontier).fold(0u128, |a, v| a | self.nb2[v]) & left;
                frontier = reach & !comp;
                comp |= reach;
            }
            left &= !comp;
            out.push(comp);
        }
        out
    }

    /// Optimal dominator set for `undom` if one of size < `budget` exists.
    fn cover(&self, undom: u128, budget: usize) -> Option<u128> {
        if undom == 0 {
            return Some(0);
        }
        if budget == 0 || self.lower_bound(undom) >= budget {
            return None;
        }
        let parts = self.parts(undom);
        if parts.len() > 1 {
            let lbs: Vec<usize> = parts.iter().map(|&p| self.lower_bound(p)).collect();
            let total: usize = lbs.iter().sum();
            if total >= budget {
                return None;
            }
            let mut slack = budget - 1 - total;
            let mut acc = 0u128;
            for (i, &p) in parts.iter().enumerate() {
                let s = self.cover(p, lbs[i] + slack + 1)?;
                slack -= s.count_ones() as usize - lbs[i];
                acc |= s;
            }
            return Some(acc);
        }
        // minimum-degree undominated vertex: fewest ways to dominate it
        let v = BitIter(undom).min_by_key(|&v| self.nb[v].count_ones()).unwrap();
        let mut cands: Vec<(u32, usize)> =
            BitIter(self.nb[v]).map(|u| ((self.nb[u] & undom).count_ones(), u)).collect();
        cands.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        let mut best = None;
        let mut budget = budget;
        for i in 0..cands.len() {
            let u = cands[i].1;
            let gain = self.nb[u] & undom;
            // skip u when another candidate covers a superset of what u covers
            let dominated = cands.iter().enumerate().any(|(j, &(_, w))| {
                let gw = self.nb[w] & undom;
                j != i && gain & !gw == 0 && (gain != gw || j < i)
            });
            if dominated {
                continue;
            }
            if let Some(s) = self.cover(undom & !gain, budget - 1) {
                budget = s.count_ones() as usize + 1;
                best = Some(s | 1 << u);
            }
        }
        best
    }
}

/// Minimum dominating set by branch and bound.
pub fn gamma_exact_set(g: &Graph) -> VertexSet {
    let s = Solver::new(g);
    let full = g.vertices().0;
    let greedy = s.greedy(full);
    VertexSet(s.cover(full, greedy.count_ones() as usize).unwrap_or(greedy))
}

pub fn gamma_exact(g: &Graph) -> usize {
    gamma_exact_set(g).len()
}

/// One rational weight per vertex degree 0..=3.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightVector(pub [Q; 4]);

impl WeightVector {
    pub fn new(w: [Q; 4]) -> WeightVector {
        WeightVector(w)
    }

    /// (1, 3/4, 11/20, 7/20), written 20, 15, 11, 7 over 20.
    pub fn thm1() -> WeightVector {
        WeightVector([qi(1), q(3, 4), q(11, 20), q(7, 20)])
    }

    /// (1, 13/17, 9/17, 6/17).
    pub fn thm2() -> WeightVector {
        WeightVector([qi(1), q(13, 17), q(9, 17), q(6, 17)])
    }

    pub fn get(&self, d: usize) -> &Q {
        &self.0[d]
    }

    pub fn is_monotone(&self) -> bool {
        let w = &self.0;
        w[0] >= w[1] && w[1] >= w[2] && w[2] >= w[3] && !w[3].is_negative()
    }

    /// Least common denominator of the four entries.
    pub fn natural_scale(&self) -> BigInt {
        use num_integer::Integer;
        self.0.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()))
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse weight vector {0:?}: expected thm1, thm2 or four comma-separated rationals")]
pub struct WeightParseError(pub String);

impl FromStr for WeightVector {
    type Err = WeightParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "thm1" => return Ok(WeightVector::thm1()),
            "thm2" => return Ok(WeightVector::thm2()),
            _ => {}
        }
        let parts: Result<Vec<Q>, _> = s.split(',').map(|p| p.trim().parse::<Q>()).collect();
        match parts {
            Ok(v) if v.len() == 4 => Ok(WeightVector([v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone()])),
            _ => Err(WeightParseError(s.to_string())),
        }
    }
}

/// Σ w_i · n_i(G).
pub fn weighted_order(g: &Graph, w: &WeightVector) -> Result<Q, GraphError> {
    let h = g.degree_histogram()?;
    Ok((0..4).fold(Q::zero(), |acc, d| acc + w.get(d) * qi(h[d] as i64)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundVerdict {
    pub gamma: usize,
    pub dominating_set: VertexSet,
    pub weighted_order: Q,
    /// w(G) − γ(G).
    pub margin: Q,
    pub strict_ok: bool,
    pub nonstrict_ok: bool,
}

impl BoundVerdict {
    pub fn ok(&self, strict: bool) -> bool {
        if strict {
            self.strict_ok
        } else {
            self.nonstrict_ok
        }
    }
}

/// Compares γ(G) with w(G); both strict and non-strict outcomes are recorded.
pub fn check_bound(g: &Graph, w: &WeightVector) -> Result<BoundVerdict, GraphError> {
    let weighted = weighted_order(g, w)?;
    let d = gamma_exact_set(g);
    let margin = &weighted - qi(d.len() as i64);
    Ok(BoundVerdict {
        gamma: d.len(),
        dominating_set: d,
        strict_ok: margin.is_positive(),
        nonstrict_ok: !margin.is_negative(),
        weighted_order: weighted,
        margin,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use graph_core::named;

    #[test]
    fn small_values() {
        assert_eq!(gamma_bruteforce(&Graph::empty(0).unwrap()), 0);
        assert_eq!(gamma_exact(&Graph::empty(0).unwrap()), 0);
        assert_eq!(gamma_bruteforce(&Graph::empty(1).unwrap()), 1);
        assert_eq!(gamma_bruteforce(&named::path(4)), 2);
        assert_eq!(gamma_bruteforce(&named::cycle_star(8)), 8);
        assert_eq!(gamma_exact(&named::g1()), 2);
        assert_eq!(gamma_exact(&named::g2()), 4);
    }

    #[test]
    fn weighted_orders() {
        let t1 = WeightVector::thm1();
        assert_eq!(weighted_order(&named::cycle_star(8), &t1).unwrap(), q(44, 5));
        assert_eq!(weighted_order(&named::cycle_star(9), &t1).unwrap(), q(99, 10));
        assert_eq!(weighted_order(&named::g2(), &t1).unwrap(), q(39, 10));
        assert_eq!(weighted_order(&named::g1(), &t1).unwrap(), q(39, 20));
    }

    #[test]
    fn verdicts() {
        let t1 = WeightVector::thm1();
        let v = check_bound(&named::cycle_star(8), &t1).unwrap();
        assert!(v.strict_ok);
        assert_eq!(v.margin, q(4, 5));
        let k1 = check_bound(&Graph::empty(1).unwrap(), &t1).unwrap();
        assert!(!k1.strict_ok && k1.nonstrict_ok);
        assert!(!check_bound(&named::g1(), &t1).unwrap().nonstrict_ok);
    }

    #[test]
    fn parse_weights() {
        assert_eq!("thm1".parse::<WeightVector>().unwrap(), WeightVector::thm1());
        assert_eq!("1, 13/17, 9/17, 6/17".parse::<WeightVector>().unwrap(), WeightVector::thm2());
        assert!("1,2,3".parse::<WeightVector>().is_err());
        assert_eq!(WeightVector::thm1().natural_scale(), BigInt::from(20));
        assert_eq!(fraction_string(&qi(-12)), "-12/1");
    }

    #[test]
    fn scaled_thm1_order() {
        let g = named::g2();
        let h = g.degree_histogram().unwrap();
        let scaled = 20 * h[0] + 15 * h[1] + 11 * h[2] + 7 * h[3];
        assert_eq!(weighted_order(&g, &WeightVector::thm1()).unwrap() * qi(20), qi(scaled as i64));
    }
}
