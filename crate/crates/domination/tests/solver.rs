use domination::{gamma_bruteforce, gamma_exact, gamma_exact_set, is_dominating, q, weighted_order, WeightVector};
use graph_core::{named, Graph, VertexSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_subcubic(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    let mut g = Graph::empty(n).unwrap();
    for _ in 0..rng.gen_range(0..=2 * n) {
        let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if u != v && g.degree(u) < 3 && g.degree(v) < 3 {
            g = g.with_edge(u, v);
        }
    }
    g
}

#[test]
fn branch_and_bound_matches_brute_force_on_random_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..1000 {
        let n = rng.gen_range(1..=20);
        let g = random_subcubic(&mut rng, n);
        let d = gamma_exact_set(&g);
        assert!(is_dominating(&g, d));
        assert_eq!(d.len(), gamma_bruteforce(&g), "{g:?}");
    }
}

#[test]
fn subadditivity_over_random_splits() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for _ in 0..300 {
        let n = rng.gen_range(2..=16);
        let g = random_subcubic(&mut rng, n);
        let s: VertexSet = (0..n).filter(|_| rng.gen_bool(0.4)).collect();
        let (rest, _) = g.delete_set(s);
        let (inside, _) = g.induced(s);
        assert!(gamma_exact(&g) <= gamma_exact(&rest) + gamma_exact(&inside));
    }
}

#[test]
fn ore_bound_on_graphs_without_isolated_vertices() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..500 {
        let n = rng.gen_range(2..=18);
        let g = random_subcubic(&mut rng, n);
        if g.is_connected() {
            assert!(2 * gamma_exact(&g) <= n);
        }
    }
}

#[test]
fn h_n_family() {
    for n in 3..=6 {
        let h = named::h_n(n);
        assert_eq!(gamma_exact(&h), 4 * n);
        assert_eq!(weighted_order(&h, &WeightVector::thm1()).unwrap(), q(81 * n as i64, 20));
    }
}

#[test]
fn cycle_star_family() {
    for n in 3..=12 {
        assert_eq!(gamma_exact(&named::cycle_star(n)), n);
    }
}
