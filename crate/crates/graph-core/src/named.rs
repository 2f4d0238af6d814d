//! Named graphs and families used across the workbench.

use crate::Graph;

pub fn path(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::new(n, &edges).unwrap()
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3);
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::new(n, &edges).unwrap()
}

pub fn complete(n: usize) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    Graph::new(n, &edges).unwrap()
}

pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let mut edges = Vec::new();
    for u in 0..a {
        for v in 0..b {
            edges.push((u, a + v));
        }
    }
    Graph::new(a + b, &edges).unwrap()
}

pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    Graph::new(10, &edges).unwrap()
}

/// The 3-cube Q3.
pub fn cube() -> Graph {
    let mut edges = Vec::new();
    for u in 0..8usize {
        for b in 0..3 {
            let v = u ^ (1 << b);
            if u < v {
                edges.push((u, v));
            }
        }
    }
    Graph::new(8, &edges).unwrap()
}

/// C_n with a pendant leaf on every cycle vertex; cycle vertices are 0..n.
pub fn cycle_star(n: usize) -> Graph {
    let mut edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    edges.extend((0..n).map(|i| (i, n + i)));
    Graph::new(2 * n, &edges).unwrap()
}

/// Five vertices, girth 3, domination number 2.
pub fn g1() -> Graph {
    Graph::new(5, &[(0, 2), (2, 4), (4, 1), (1, 3), (3, 0), (0, 4), (2, 1)]).unwrap()
}

/// Vertex of `g2()` that `h_n` attaches to the cycle.
pub const G2_ATTACH: usize = 3;

/// Ten vertices, girth 4, domination number 4; 2-vertices are 3 and 9.
pub fn g2() -> Graph {
    Graph::new(10, &G2_EDGES).unwrap()
}

const G2_EDGES: [(usize, usize); 14] = [
    (0, 2),
    (4, 1),
    (1, 3),
    (3, 0),
    (0, 4),
    (2, 1),
    (2, 5),
    (5, 7),
    (7, 9),
    (9, 8),
    (8, 6),
    (6, 4),
    (5, 8),
    (7, 6),
];

/// Cycle C_n whose i-th vertex is joined to a 2-vertex of the i-th copy of `g2()`.
/// Cycle vertices come first, then the copies in blocks of ten.
pub fn h_n(n: usize) -> Graph {
    assert!(n >= 3);
    let mut edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    for i in 0..n {
        let base = n + 10 * i;
        edges.extend(G2_EDGES.iter().map(|&(u, v)| (base + u, base + v)));
        edges.push((i, base + G2_ATTACH));
    }
    Graph::new(11 * n, &edges).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::GirthResult;

    #[test]
    fn petersen_girth() {
        assert_eq!(petersen().girth(), GirthResult::Finite(5));
    }

    #[test]
    fn fig12_graphs() {
        assert_eq!(g1().degree_histogram().unwrap(), [0, 0, 1, 4]);
        assert_eq!(g1().girth(), GirthResult::Finite(3));
        assert_eq!(g2().degree_histogram().unwrap(), [0, 0, 2, 8]);
        assert_eq!(g2().girth(), GirthResult::Finite(4));
    }

    #[test]
    fn h_n_counts() {
        for n in 3..7 {
            let h = h_n(n);
            assert_eq!(h.degree_histogram().unwrap(), [0, 0, n, 10 * n]);
            assert!(h.is_connected());
        }
    }

    #[test]
    fn cycle_star_counts() {
        assert_eq!(cycle_star(8).degree_histogram().unwrap(), [0, 8, 0, 8]);
    }
}
