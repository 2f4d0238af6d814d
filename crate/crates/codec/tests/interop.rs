use codec::{emit_graph6, parse_graph6};
use graph_core::Graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

// Independent decoder: expand every data byte into a bit string first.
fn reference_decode(line: &str) -> (usize, Vec<(usize, usize)>) {
    let b = line.as_bytes();
    let (n, data) = if b[0] == 126 {
        let n = ((b[1] - 63) as usize) * 4096 + ((b[2] - 63) as usize) * 64 + (b[3] - 63) as usize;
        (n, &b[4..])
    } else {
        ((b[0] - 63) as usize, &b[1..])
    };
    let bits: Vec<bool> = data
        .iter()
        .flat_map(|&c| (0..6).rev().map(move |k| (c - 63) >> k & 1 == 1))
        .collect();
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bits[k] {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    edges.sort();
    (n, edges)
}

#[test]
fn matches_reference_generator_samples() {
    let data = include_str!("data/reference_samples.tsv");
    let mut count = 0;
    for line in data.lines() {
        let mut parts = line.split('\t');
        let g6 = parts.next().unwrap();
        let n: usize = parts.next().unwrap().parse().unwrap();
        let edges: Vec<(usize, usize)> = parts
            .next()
            .unwrap_or("")
            .split_whitespace()
            .map(|t| {
                let (a, b) = t.split_once('-').unwrap();
                (a.parse().unwrap(), b.parse().unwrap())
            })
            .collect();
        let expected = Graph::new(n, &edges).unwrap();
        assert_eq!(parse_graph6(g6).unwrap(), expected, "{g6}");
        assert_eq!(emit_graph6(&expected), g6);
        count += 1;
    }
    assert_eq!(count, 60);
}

#[test]
fn all_graphs_on_four_vertices_agree_with_reference_decoder() {
    for mask in 0u32..64 {
        let pairs = [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 3)];
        let edges: Vec<_> = pairs.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &p)| p).collect();
        let g = Graph::new(4, &edges).unwrap();
        let s = emit_graph6(&g);
        let (n, mut e) = reference_decode(&s);
        e.sort();
        let mut want = edges.clone();
        want.sort();
        assert_eq!((n, e), (4, want));
        assert_eq!(parse_graph6(&s).unwrap(), g);
    }
}

#[test]
fn random_subcubic_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..1000 {
        let n = rng.gen_range(0..=20);
        let mut g = Graph::empty(n).unwrap();
        for _ in 0..2 * n {
            if n < 2 {
                break;
            }
            let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
            if u != v && g.degree(u) < 3 && g.degree(v) < 3 {
                g = g.with_edge(u, v);
            }
        }
        let s = emit_graph6(&g);
        assert_eq!(parse_graph6(&s).unwrap(), g);
        assert_eq!(reference_decode(&s).1, g.edges());
    }
}

#[test]
fn emit_is_injective_on_labeled_graphs_up_to_five() {
    let mut seen = std::collections::HashSet::new();
    let pairs: Vec<(usize, usize)> = (1..5).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    for mask in 0u32..(1 << pairs.len()) {
        let edges: Vec<_> = pairs.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &p)| p).collect();
        assert!(seen.insert(emit_graph6(&Graph::new(5, &edges).unwrap())));
    }
    assert_eq!(seen.len(), 1024);
}
