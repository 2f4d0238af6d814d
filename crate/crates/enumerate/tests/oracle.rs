use std::collections::HashSet;

use enumerate::{canonical_form, enumerate_by_order, EnumFilter};
use graph_core::Graph;

/// All labeled graphs on n vertices passing `keep`, bucketed by canonical form.
fn brute_force_classes(n: usize, keep: impl Fn(&Graph) -> bool) -> usize {
    let pairs: Vec<(usize, usize)> = (1..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    let mut classes = HashSet::new();
    for mask in 0u64..(1 << pairs.len()) {
        let mut deg = [0u8; 8];
        let mut ok = true;
        let mut edges = Vec::new();
        for (k, &(i, j)) in pairs.iter().enumerate() {
            if mask >> k & 1 == 1 {
                deg[i] += 1;
                deg[j] += 1;
                if deg[i] > 3 || deg[j] > 3 {
                    ok = false;
                    break;
                }
                edges.push((i, j));
            }
        }
        if !ok {
            continue;
        }
        let g = Graph::new(n, &edges).unwrap();
        if keep(&g) {
            classes.insert(canonical_form(&g));
        }
    }
    classes.len()
}

fn check(f: EnumFilter) {
    let levels = enumerate_by_order(&f);
    for (i, level) in levels.iter().enumerate() {
        let n = i + 1;
        let want = brute_force_classes(n, |g| EnumFilter { max_n: n, ..f }.accepts(g));
        assert_eq!(level.len(), want, "order {n}, filter {f:?}");
        let labels: HashSet<_> = level.iter().map(canonical_form).collect();
        assert_eq!(labels.len(), level.len());
        assert!(level.iter().all(|g| g.n() == n && f.accepts(g)));
    }
}

#[test]
fn connected_counts_match_brute_force() {
    check(EnumFilter::connected(7));
}

#[test]
fn planar_and_girth_filters_match_brute_force() {
    check(EnumFilter::connected(7).planar());
    check(EnumFilter::connected(7).girth(4));
    check(EnumFilter::connected(7).girth(6).planar());
}

#[test]
fn disconnected_generation_matches_brute_force() {
    let f = EnumFilter { max_n: 6, min_girth: None, require_planar: false, require_connected: false };
    check(f);
}

#[test]
fn eleven_graphs_on_four_vertices() {
    assert_eq!(brute_force_classes(4, |_| true), 11);
}

#[test]
fn no_isomorphic_pairs_up_to_ten() {
    let levels = enumerate_by_order(&EnumFilter::connected(10).planar());
    let counts: Vec<usize> = levels.iter().map(|l| l.len()).collect();
    for l in &levels {
        let labels: HashSet<_> = l.iter().map(canonical_form).collect();
        assert_eq!(labels.len(), l.len());
    }
    assert!(counts[9] > 0);
}

#[test]
fn stable_order_is_reproducible() {
    let f = EnumFilter::connected(9).planar();
    let a: Vec<String> = enumerate::enumerate_subcubic(&f).map(|g| codec::emit_graph6(&g)).collect();
    let b: Vec<String> = enumerate::enumerate_subcubic(&f).map(|g| codec::emit_graph6(&g)).collect();
    assert_eq!(a, b);
}
