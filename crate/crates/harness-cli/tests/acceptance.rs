//! Acceptance gate: one PASS/FAIL line per criterion.  Every comparison is
//! exact; the only tolerances are the wall-clock budgets below.

use std::process::Command;
use std::time::{Duration, Instant};

use configurations::{cost_contribution, CostContext, Variant};
use discharging::{verify_discharging, Ruleset};
use domination::{gamma_bruteforce, gamma_exact, q, qi, WeightVector};
use enumerate::{enumerate_subcubic, is_isomorphic, EnumFilter};
use graph_core::{named, Graph};
use harness_cli::*;
use planar::planarity_embed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use weights::{generate_constraints, is_feasible, minimize, minimize_with, Method, Objective, Optimum, Source};

const CATALOG_BUDGET: Duration = Duration::from_secs(1);
const FAMILIES_BUDGET: Duration = Duration::from_secs(600);
const EXHAUSTIVE_BUDGET: Duration = Duration::from_secs(1800);
const COUNTEREXAMPLE_BUDGET: Duration = Duration::from_secs(3600);
const WEIGHTS_BUDGET: Duration = Duration::from_secs(1);

const RANDOM_CHARGE_GRAPHS: usize = 10_000;
const RANDOM_CHARGE_MAX_N: usize = 24;
const EXHAUSTIVE_MAX_N: usize = 16;
const COUNTEREXAMPLE_MAX_N: usize = 11;
const ORACLE_EXHAUSTIVE_MAX_N: usize = 10;
const ORACLE_RANDOM: usize = 1000;
const ORACLE_RANDOM_MAX_N: usize = 20;
const CODEC_MAX_N: usize = 7;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, budget: Duration) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t <= budget, || format!("took {t:?}, budget {budget:?}"))
}

fn catalog_lines() -> Outcome {
    let start = Instant::now();
    let expect: [(&str, &[&str]); 2] = [
        (
            "girth9-thm1",
            &[
                "(1,2): 26-5=21 >= 20",
                "(1,3,1): 37-5=32 >= 20",
                "(1,3,2): 33-10=23 >= 20",
                "(1,3,3,1): 58-18=40 >= 40",
                "(2,2,2): 33-10=23 >= 20",
                "leaf-star: 36-16=20 >= 20",
                "(2,3,2): 36-16=20 >= 20",
                "(2,2,3,3,2,2): 58-16=42 >= 40",
            ],
        ),
        (
            "girth8-thm1",
            &[
                "contributing-neighbors: 118-37=81",
                "shared-v3: 114-33=81",
                "shared-v4: 111-24=87",
                "good8-twos-adjacent-a: 146-46=100",
                "good8-twos-adjacent-b: 146-46=100",
                "good8-one-two: 203-63=140",
                "good8-all-three: 253-72=181",
                "good9-two-twos: 214-63=151",
            ],
        ),
    ];
    let mut total = 0;
    for (variant, lines) in expect {
        let out = Command::new(env!("CARGO_BIN_EXE_discharge-lab"))
            .args(["check-catalog", "--variant", variant])
            .output()
            .map_err(|e| e.to_string())?;
        ensure(out.status.success(), || format!("{variant}: exit {:?}", out.status.code()))?;
        let text = String::from_utf8_lossy(&out.stdout);
        for want in lines {
            ensure(text.lines().any(|l| l.starts_with(want)), || format!("{variant}: missing {want:?}"))?;
            total += 1;
        }
    }
    within(start, CATALOG_BUDGET)?;
    Ok(format!("{total} closing inequalities reproduced exactly"))
}

fn table_one() -> Outcome {
    let ctx = CostContext::thm1();
    let want: [&[i64]; 3] = [&[0, 5], &[0, 4, 9], &[0, 4, 8, 13]];
    for (i, row) in want.iter().enumerate() {
        let d = i + 1;
        for (j, &v) in row.iter().enumerate() {
            let got = cost_contribution(&ctx, d, j).map_err(|e| e.to_string())?;
            ensure(got == qi(v), || format!("c({d},{j}) = {got}, want {v}"))?;
        }
    }
    Ok("(0,5 / 0,4,9 / 0,4,8,13)".into())
}

fn families() -> Outcome {
    let start = Instant::now();
    let mut runs = vec![
        (Family::CycleStar, 8, 8, q(44, 5)),
        (Family::CycleStar, 9, 9, q(99, 10)),
        (Family::G1, 0, 2, q(39, 20)),
        (Family::G2, 0, 4, q(39, 10)),
    ];
    for n in 3..=6 {
        runs.push((Family::H, n, 4 * n, q(81 * n as i64, 20)));
    }
    for (fam, n, gamma, bound) in runs {
        let r = reproduce_families(fam, &[n]).map_err(|e| e.to_string())?;
        let rec = &r.records[0];
        let label = rec.family.clone().unwrap_or_default();
        ensure(rec.gamma == Some(gamma), || format!("{label}: gamma {:?}, want {gamma}", rec.gamma))?;
        ensure(rec.bound.as_deref() == Some(bound.to_string().as_str()), || {
            format!("{label}: bound {:?}, want {bound}", rec.bound)
        })?;
        let tight = matches!(fam, Family::G1 | Family::G2);
        let exceeds = qi(gamma as i64) > bound;
        ensure(tight == exceeds, || format!("{label}: gamma vs bound has the wrong side"))?;
    }
    within(start, FAMILIES_BUDGET)?;
    Ok(format!("C8*, C9*, G1, G2, H_3..H_6 exact in {:?}", start.elapsed()))
}

fn exhaustive() -> Outcome {
    let start = Instant::now();
    let mut parts = Vec::new();
    for (girth, w, name) in [(8, WeightVector::thm1(), "thm1"), (9, WeightVector::thm2(), "thm2")] {
        let f = EnumFilter::connected(EXHAUSTIVE_MAX_N).planar().girth(girth);
        let scale = qi(if name == "thm1" { 20 } else { 17 });
        let r = verify_theorem(&f, &w, &scale, VerifyOptions::default()).map_err(|e| e.to_string())?;
        let bad: Vec<&str> = r.violations().map(|x| x.graph6.as_str()).collect();
        ensure(bad.is_empty(), || format!("{name} girth>={girth}: violations {bad:?}"))?;
        let exceptions: Vec<usize> =
            r.records.iter().filter(|x| x.verdict == Verdict::EqualityException).map(|x| x.n).collect();
        ensure(exceptions == [1], || format!("{name}: exceptions at orders {exceptions:?}"))?;
        parts.push(format!("{name} girth>={girth}: {} graphs", r.aggregate.graphs));
    }
    within(start, EXHAUSTIVE_BUDGET)?;
    Ok(format!("{}; 0 violations, K1 flagged; {:?}", parts.join(", "), start.elapsed()))
}

fn counterexamples() -> Outcome {
    let start = Instant::now();
    let f = EnumFilter::connected(COUNTEREXAMPLE_MAX_N).planar();
    let r = verify_theorem(&f, &WeightVector::thm1(), &qi(20), VerifyOptions::default()).map_err(|e| e.to_string())?;
    let found: Vec<Graph> =
        r.violations().map(|x| codec::parse_graph6(&x.graph6).expect("own output parses")).collect();
    let want = [named::g1(), named::g2()];
    let matched = found.len() == 2 && want.iter().all(|w| found.iter().any(|g| is_isomorphic(g, w)));
    ensure(matched, || {
        format!("violations {:?}", r.violations().map(|x| x.graph6.clone()).collect::<Vec<_>>())
    })?;
    within(start, COUNTEREXAMPLE_BUDGET)?;
    Ok(format!("{} graphs, violations = {{G1, G2}}", r.aggregate.graphs))
}

fn witness() -> Outcome {
    let mut parts = Vec::new();
    for (girth, v) in [(9, Variant::Girth9Thm1), (8, Variant::Girth8Thm1)] {
        let f = EnumFilter::connected(EXHAUSTIVE_MAX_N).planar().girth(girth);
        let r = witness_structure(&f, v).map_err(|e| e.to_string())?;
        let miss: Vec<&str> =
            r.records.iter().filter(|x| x.verdict == Verdict::Unwitnessed).map(|x| x.graph6.as_str()).collect();
        ensure(miss.is_empty(), || format!("{}: no hit on {miss:?}", v.name()))?;
        parts.push(format!("{}: {} graphs", v.name(), r.aggregate.graphs));
    }
    Ok(format!("{}; every graph has a catalog hit", parts.join(", ")))
}

fn charges() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for i in 0..RANDOM_CHARGE_GRAPHS {
        let n = rng.gen_range(1..=RANDOM_CHARGE_MAX_N);
        let g = random_connected_planar_subcubic(&mut rng, n);
        let e = planarity_embed(&g).map_err(|_| format!("graph {i} not planar"))?;
        for rs in [Ruleset::Girth9, Ruleset::Girth8] {
            let r = verify_discharging(&g, &e, rs).map_err(|x| x.to_string())?;
            ensure(r.initial.total == qi(-12) && r.after.total == qi(-12), || {
                format!("{} {rs}: totals {} -> {}", codec::emit_graph6(&g), r.initial.total, r.after.total)
            })?;
        }
    }
    Ok(format!("{RANDOM_CHARGE_GRAPHS} graphs, n <= {RANDOM_CHARGE_MAX_N}, total -12 before and after"))
}

fn binding_list(cs: &weights::ConstraintSet, o: &Optimum) -> String {
    o.binding.iter().map(|&i| format!("[{}  # {}]", cs.rows[i], cs.rows[i].source)).collect::<Vec<_>>().join(" ")
}

fn weight_optimization() -> Outcome {
    let start = Instant::now();
    let runs = [
        (Variant::Girth8Thm1, Objective::w(3), WeightVector::thm1()),
        (Variant::Girth9Thm2, "w2 + 6*w3".parse::<Objective>().expect("objective"), WeightVector::thm2()),
    ];
    let mut sets = Vec::new();
    for (v, obj, want) in &runs {
        let cs = generate_constraints(*v, true);
        let o = minimize(&cs, obj).map_err(|e| format!("{}: {e}", v.name()))?;
        ensure(o.w == *want, || format!("{}: optimum {} != {want}; binding {}", v.name(), o.w, binding_list(&cs, &o)))?;
        sets.push((cs, obj.clone(), o));
    }
    let cs = generate_constraints(Variant::Girth8Thm1, true);
    let f = is_feasible(&cs, &WeightVector::new([qi(1), q(1, 2), q(1, 2), q(1, 3)]));
    let star = f.violated.iter().any(|(i, _)| cs.rows[*i].source == Source::Family("cycle-star".into()));
    ensure(!f.feasible() && star, || "(1, 1/2, 1/2, 1/3) not rejected by the cycle-star row".into())?;
    within(start, WEIGHTS_BUDGET)?;
    for (cs, obj, o) in &sets {
        let other = minimize_with(cs, obj, Method::Vertices).map_err(|e| e.to_string())?;
        ensure(other == *o, || format!("vertex enumeration disagrees on {}", cs.label))?;
    }
    Ok("(1, 3/4, 11/20, 7/20), (1, 13/17, 9/17, 6/17); cycle-star rejects (1, 1/2, 1/2, 1/3)".into())
}

fn random_graph(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    let p: f64 = rng.gen_range(0.05..0.5);
    let mut g = Graph::empty(n).expect("small n");
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g = g.with_edge(u, v);
            }
        }
    }
    g
}

fn oracle() -> Outcome {
    let f = EnumFilter::connected(ORACLE_EXHAUSTIVE_MAX_N);
    let mut count = 0;
    for g in enumerate_subcubic(&f) {
        ensure(gamma_exact(&g) == gamma_bruteforce(&g), || format!("mismatch on {}", codec::emit_graph6(&g)))?;
        count += 1;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..ORACLE_RANDOM {
        let n = rng.gen_range(1..=ORACLE_RANDOM_MAX_N);
        let g = random_graph(&mut rng, n);
        ensure(gamma_exact(&g) == gamma_bruteforce(&g), || format!("mismatch on {}", codec::emit_graph6(&g)))?;
    }
    Ok(format!("{count} enumerated graphs (n <= {ORACLE_EXHAUSTIVE_MAX_N}) and {ORACLE_RANDOM} random graphs agree"))
}

fn codec_checks() -> Outcome {
    let f = EnumFilter { max_n: CODEC_MAX_N, min_girth: None, require_planar: false, require_connected: false };
    let mut count = 0;
    for g in enumerate_subcubic(&f) {
        let s = codec::emit_graph6(&g);
        let back = codec::parse_graph6(&s).map_err(|e| e.to_string())?;
        ensure(back == g && codec::emit_graph6(&back) == s, || format!("round trip failed on {s}"))?;
        count += 1;
    }
    let samples = include_str!("../../codec/tests/data/reference_samples.tsv");
    let mut n_samples = 0;
    for line in samples.lines().filter(|l| !l.trim().is_empty()) {
        let cols: Vec<&str> = line.split('\t').collect();
        let n: usize = cols[1].parse().map_err(|_| format!("bad sample line {line:?}"))?;
        let edges: Vec<(usize, usize)> = cols
            .get(2)
            .map(|e| {
                e.split_whitespace()
                    .map(|p| {
                        let (a, b) = p.split_once('-').expect("edge a-b");
                        (a.parse().expect("vertex"), b.parse().expect("vertex"))
                    })
                    .collect()
            })
            .unwrap_or_default();
        let want = Graph::new(n, &edges).map_err(|e| e.to_string())?;
        let got = codec::parse_graph6(cols[0]).map_err(|e| format!("{}: {e}", cols[0]))?;
        ensure(got == want && codec::emit_graph6(&want) == cols[0], || format!("sample {} differs", cols[0]))?;
        n_samples += 1;
    }
    Ok(format!("{count} graphs round-trip; {n_samples} reference samples byte-identical"))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("catalog arithmetic", catalog_lines),
        ("cost table", table_one),
        ("tight families", families),
        ("exhaustive theorem check", exhaustive),
        ("counterexample search", counterexamples),
        ("proof-logic witness", witness),
        ("discharging invariants", charges),
        ("weight optimization", weight_optimization),
        ("gamma oracle", oracle),
        ("graph6 codec", codec_checks),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let r = f();
        let t = start.elapsed();
        match r {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{t:.2?}]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail} [{t:.2?}]", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
