//! Exact canonical labeling by partition refinement and individualization.
//!
//! Every leaf of the search tree yields a relabeled adjacency matrix; the
//! lexicographically smallest one is the canonical form.  There is no
//! automorphism pruning, which is fine for the subcubic graphs of interest.

use graph_core::{BitIter, Graph};

/// Equal for two graphs iff they are isomorphic (respecting vertex colors).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalLabel(pub Vec<u8>);

type Partition = Vec<Vec<usize>>;

fn refine(g: &Graph, mut cells: Partition) -> Partition {
    let n = g.n();
    let mut cell_of = vec![0usize; n];
    loop {
        for (i, c) in cells.iter().enumerate() {
            for &v in c {
                cell_of[v] = i;
            }
        }
        let before = cells.len();
        let mut next: Partition = Vec::with_capacity(n);
        for c in &cells {
            if c.len() == 1 {
                next.push(c.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<usize>, usize)> = c
                .iter()
                .map(|&v| {
                    let mut s: Vec<usize> = BitIter(g.row(v)).map(|w| cell_of[w]).collect();
                    s.sort_unstable();
                    (s, v)
                })
                .collect();
            keyed.sort();
            let mut start = 0;
            for k in 1..=keyed.len() {
                if k == keyed.len() || keyed[k].0 != keyed[start].0 {
                    next.push(keyed[start..k].iter().map(|p| p.1).collect());
                    start = k;
                }
            }
        }
        cells = next;
        if cells.len() == before {
            return cells;
        }
    }
}

fn leaf_rows(g: &Graph, cells: &Partition) -> (Vec<usize>, Vec<u128>) {
    let n = g.n();
    let mut lab = vec![0usize; n];
    for (i, c) in cells.iter().enumerate() {
        lab[c[0]] = i;
    }
    let mut rows = vec![0u128; n];
    for v in 0..n {
        rows[lab[v]] = BitIter(g.row(v)).fold(0, |r, w| r | 1u128 << lab[w]);
    }
    (lab, rows)
}

fn search(g: &Graph, cells: Partition, best: &mut Option<(Vec<u128>, Vec<usize>)>) {
    let cells = refine(g, cells);
    let target = cells
        .iter()
        .enumerate()
        .filter(|(_, c)| c.len() > 1)
        .min_by_key(|(i, c)| (c.len(), *i))
        .map(|(i, _)| i);
    match target {
        None => {
            let (lab, rows) = leaf_rows(g, &cells);
            if best.as_ref().is_none_or(|b| rows < b.0) {
                *best = Some((rows, lab));
            }
        }
        Some(t) => {
            for &v in &cells[t] {
                let mut child = cells[..t].to_vec();
                child.push(vec![v]);
                child.push(cells[t].iter().copied().filter(|&w| w != v).collect());
                child.extend_from_slice(&cells[t + 1..]);
                search(g, child, best);
            }
        }
    }
}

/// Returns `lab` with `lab[v]` the canonical position of `v`, and the label.
/// Colors are part of the invariant: only color-preserving maps count.
pub fn canonical_labeling(g: &Graph, colors: Option<&[u8]>) -> (Vec<usize>, CanonicalLabel) {
    let n = g.n();
    let color = |v: usize| colors.map_or(0, |c| c[v]);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (color(v), g.degree(v)));
    let mut cells: Partition = Vec::new();
    for &v in &order {
        match cells.last_mut() {
            Some(c) if (color(c[0]), g.degree(c[0])) == (color(v), g.degree(v)) => c.push(v),
            _ => cells.push(vec![v]),
        }
    }
    let mut best = None;
    if n > 0 {
        search(g, cells, &mut best);
    }
    let (rows, lab) = best.unwrap_or_default();
    let mut bytes = vec![n as u8];
    if let Some(c) = colors {
        let mut by_pos = vec![0u8; n];
        for v in 0..n {
            by_pos[lab[v]] = c[v];
        }
        bytes.extend(by_pos);
    }
    for r in rows {
        bytes.extend_from_slice(&r.to_le_bytes()[..n.div_ceil(8)]);
    }
    (lab, CanonicalLabel(bytes))
}

pub fn canonical_form(g: &Graph) -> CanonicalLabel {
    canonical_labeling(g, None).1
}

/// The graph relabeled into canonical order.
pub fn canonical_graph(g: &Graph) -> Graph {
    let (lab, _) = canonical_labeling(g, None);
    g.permuted(&lab)
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.n() == b.n() && a.edge_count() == b.edge_count() && canonical_form(a) == canonical_form(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use graph_core::named;

    #[test]
    fn relabeled_cycle_has_same_label() {
        let c8 = named::cycle(8);
        let perm = [3, 7, 1, 0, 6, 2, 5, 4];
        assert_eq!(canonical_form(&c8), canonical_form(&c8.permuted(&perm)));
    }

    #[test]
    fn path_and_claw_differ() {
        assert_ne!(canonical_form(&named::path(4)), canonical_form(&named::complete_bipartite(1, 3)));
    }

    #[test]
    fn colors_distinguish_orbits() {
        let p3 = named::path(3);
        let end = canonical_labeling(&p3, Some(&[1, 0, 0])).1;
        let other_end = canonical_labeling(&p3, Some(&[0, 0, 1])).1;
        let mid = canonical_labeling(&p3, Some(&[0, 1, 0])).1;
        assert_eq!(end, other_end);
        assert_ne!(end, mid);
    }

    #[test]
    fn canonical_graph_is_a_relabeling() {
        let g = named::g2();
        let c = canonical_graph(&g);
        assert_eq!(canonical_form(&c), canonical_form(&g));
        assert_eq!(canonical_graph(&c), c);
    }
}
