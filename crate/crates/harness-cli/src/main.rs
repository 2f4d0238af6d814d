use std::io::{self, BufRead, Write};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use configurations::{check_catalog, Variant};
use discharging::{verify_discharging, Ruleset};
use domination::{gamma_bruteforce, gamma_exact, WeightVector, Q};
use enumerate::{enumerate_exact, enumerate_subcubic, EnumFilter};
use graph_core::Graph;
use harness_cli::*;
use planar::planarity_embed;
use serde_json::json;
use weights::{generate_constraints, is_feasible, minimize_with, no_girth_constraints, ConstraintSet, Method, Objective};

#[derive(Parser)]
#[command(name = "discharge-lab", version, about = "Domination bounds for subcubic planar graphs: search and checks")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum GammaMethod {
    Bb,
    Brute,
}

#[derive(clap::Args)]
struct Source {
    /// Read graph6 lines from stdin instead of enumerating.
    #[arg(long)]
    stdin: bool,
    #[arg(long)]
    max_n: Option<usize>,
    #[arg(long)]
    min_girth: Option<usize>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Enumerate subcubic graphs as graph6.
    Gen {
        #[arg(long)]
        max_n: Option<usize>,
        #[arg(long)]
        exact_n: Option<usize>,
        #[arg(long)]
        min_girth: Option<usize>,
        #[arg(long)]
        planar: bool,
        #[arg(long)]
        connected: bool,
    },
    /// Domination number of each graph6 line on stdin.
    Gamma {
        #[arg(long, value_enum, default_value = "bb")]
        method: GammaMethod,
    },
    /// Check the weighted bound on connected planar subcubic graphs.
    Verify {
        #[arg(long, default_value = "thm1")]
        weights: String,
        /// Defaults to the least common denominator of the weights.
        #[arg(long)]
        scale: Option<String>,
        #[arg(long)]
        strict: bool,
        #[command(flatten)]
        source: Source,
        /// Treat K1 like any other graph.
        #[arg(long)]
        include_k1: bool,
        #[arg(long)]
        exclude_acyclic: bool,
        /// Also write per-order aggregate counts as CSV.
        #[arg(long)]
        csv: Option<std::path::PathBuf>,
        /// Add wall-clock time to the aggregate (makes output run-dependent).
        #[arg(long)]
        timing: bool,
    },
    /// Catalog hits per graph.
    Match {
        #[arg(long)]
        variant: Variant,
        #[command(flatten)]
        source: Source,
    },
    /// Charges before and after discharging per graph.
    Discharge {
        #[arg(long)]
        ruleset: Ruleset,
        #[command(flatten)]
        source: Source,
    },
    /// Constraint set on the weights, with a feasibility check or an optimum.
    Weights {
        /// A catalog variant or no-girth.
        #[arg(long)]
        variant: String,
        #[arg(long)]
        tight_families: bool,
        #[arg(long, conflicts_with = "minimize", required_unless_present = "minimize")]
        check: Option<String>,
        /// Coefficients "c1,c2,c3" of w1, w2, w3 or an expression like "w2 + 6*w3".
        #[arg(long)]
        minimize: Option<String>,
    },
    /// Per-entry reducibility arithmetic in scaled integers.
    CheckCatalog {
        #[arg(long)]
        variant: Variant,
    },
    /// Tight families with closed-form checks.
    Families {
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = 3)]
        n: usize,
    },
}

type Res = Result<ExitCode, HarnessError>;

fn usage(msg: impl Into<String>) -> HarnessError {
    HarnessError::Input(msg.into())
}

fn read_stdin() -> Result<Vec<Graph>, HarnessError> {
    let mut out = Vec::new();
    for (i, line) in io::stdin().lock().lines().enumerate() {
        let line = line.map_err(|e| usage(e.to_string()))?;
        let t = line.trim();
        if t.is_empty() {
            continue;
        }
        out.push(codec::parse_graph6(t).map_err(|e| usage(format!("line {}: {e}", i + 1)))?);
    }
    Ok(out)
}

/// Connected planar graphs from stdin or the enumerator.
fn graphs_from(src: &Source, default_girth: Option<usize>) -> Result<(Vec<Graph>, Option<EnumFilter>), HarnessError> {
    if src.stdin {
        return Ok((read_stdin()?, None));
    }
    let max_n = src.max_n.ok_or_else(|| usage("give --max-n N or --stdin"))?;
    let mut f = EnumFilter::connected(max_n).planar();
    f.min_girth = src.min_girth.or(default_girth);
    Ok((enumerate_subcubic(&f).collect(), Some(f)))
}

fn emit(s: &str) -> io::Result<()> {
    let mut out = io::stdout().lock();
    out.write_all(s.as_bytes())?;
    out.flush()
}

fn io_err(e: io::Error) -> HarnessError {
    usage(e.to_string())
}

fn gen(max_n: Option<usize>, exact_n: Option<usize>, min_girth: Option<usize>, planar: bool, connected: bool) -> Res {
    let n = exact_n.or(max_n).ok_or_else(|| usage("give --max-n or --exact-n"))?;
    let f = EnumFilter { max_n: n, min_girth, require_planar: planar, require_connected: connected };
    let graphs: Vec<Graph> = match exact_n {
        Some(n) => enumerate_exact(&f, n),
        None => enumerate_subcubic(&f).collect(),
    };
    let mut s = String::new();
    for g in &graphs {
        s.push_str(&codec::emit_graph6(g));
        s.push('\n');
    }
    emit(&s).map_err(io_err)?;
    Ok(ExitCode::SUCCESS)
}

fn gamma(method: GammaMethod) -> Res {
    let mut s = String::new();
    for g in read_stdin()? {
        let k = match method {
            GammaMethod::Bb => gamma_exact(&g),
            GammaMethod::Brute => gamma_bruteforce(&g),
        };
        s.push_str(&format!("{}\t{k}\n", codec::emit_graph6(&g)));
    }
    emit(&s).map_err(io_err)?;
    Ok(ExitCode::SUCCESS)
}

#[allow(clippy::too_many_arguments)]
fn verify(
    weights: &str,
    scale: Option<&str>,
    strict: bool,
    source: &Source,
    include_k1: bool,
    exclude_acyclic: bool,
    csv: Option<&std::path::Path>,
    timing: bool,
) -> Res {
    let start = Instant::now();
    let w: WeightVector = weights.parse().map_err(|e: domination::WeightParseError| usage(e.to_string()))?;
    let scale: Q = match scale {
        Some(s) => s.parse().map_err(|_| usage(format!("bad scale {s:?}")))?,
        None => Q::from_integer(w.natural_scale()),
    };
    let opts = VerifyOptions { strict, include_k1, include_acyclic: !exclude_acyclic };
    let mut report = if source.stdin {
        let graphs = read_stdin()?;
        let mut meta = Meta::new("verify");
        meta.weights = Some(w.to_string());
        meta.scale = Some(scale.to_string());
        meta.strict = Some(strict);
        RunReport::new(meta, verify_graphs(&graphs, &w, &scale, opts)?)
    } else {
        let max_n = source.max_n.ok_or_else(|| usage("give --max-n N or --stdin"))?;
        let mut f = EnumFilter::connected(max_n).planar();
        f.min_girth = source.min_girth;
        verify_theorem(&f, &w, &scale, opts)?
    };
    if timing {
        report.aggregate.elapsed_ms = Some(start.elapsed().as_millis());
    }
    if let Some(p) = csv {
        std::fs::write(p, report.aggregate.to_csv()).map_err(io_err)?;
    }
    emit(&report.to_json_lines()).map_err(io_err)?;
    Ok(if report.aggregate.violations > 0 { ExitCode::from(1) } else { ExitCode::SUCCESS })
}

fn match_cmd(variant: Variant, source: &Source) -> Res {
    let (graphs, _) = graphs_from(source, Some(variant.min_girth()))?;
    let mut s = String::new();
    for g in &graphs {
        let e = planarity_embed(g).map_err(|_| HarnessError::NonPlanar(codec::emit_graph6(g)))?;
        let hits: Vec<_> = configurations::find_configurations(g, &e, variant)
            .iter()
            .map(|h| json!({"entry": h.entry, "vertices": h.vertices, "s": h.s.to_vec(), "dominators": h.dominators.to_vec()}))
            .collect();
        s.push_str(&json!({"graph6": codec::emit_graph6(g), "variant": variant.name(), "hits": hits}).to_string());
        s.push('\n');
    }
    emit(&s).map_err(io_err)?;
    Ok(ExitCode::SUCCESS)
}

fn discharge(ruleset: Ruleset, source: &Source) -> Res {
    let (graphs, _) = graphs_from(source, None)?;
    let mut s = String::new();
    let mut broken = false;
    for g in &graphs {
        let e = planarity_embed(g).map_err(|_| HarnessError::NonPlanar(codec::emit_graph6(g)))?;
        let r = verify_discharging(g, &e, ruleset).map_err(|x| usage(x.to_string()))?;
        broken |= !r.conserved();
        let bad: Vec<_> = r.bad_faces.iter().map(|b| json!({"face": b.face, "walk": b.walk, "contributing": [b.contributing.0, b.contributing.1], "contributing_face": b.contributing_face})).collect();
        s.push_str(
            &json!({
                "graph6": codec::emit_graph6(g),
                "ruleset": ruleset.to_string(),
                "faces": r.faces,
                "initial": {"vertex": r.initial.vertex_strings(), "face": r.initial.face_strings(), "total": r.initial.total.to_string()},
                "final": {"vertex": r.after.vertex_strings(), "face": r.after.face_strings(), "total": r.after.total.to_string()},
                "negatives": r.negatives.iter().map(|(e, c)| format!("{e}:{c}")).collect::<Vec<_>>(),
                "bad_faces": bad,
                "count_violations": r.count_violations().iter().map(|c| c.face).collect::<Vec<_>>(),
                "conserved": r.conserved(),
            })
            .to_string(),
        );
        s.push('\n');
    }
    emit(&s).map_err(io_err)?;
    Ok(if broken { ExitCode::from(1) } else { ExitCode::SUCCESS })
}

fn constraint_set(variant: &str, tight: bool) -> Result<ConstraintSet, HarnessError> {
    if variant == "no-girth" {
        return Ok(no_girth_constraints());
    }
    let v: Variant = variant.parse().map_err(|_| usage(format!("unknown variant {variant:?}")))?;
    Ok(generate_constraints(v, tight))
}

fn weights_cmd(variant: &str, tight: bool, check: Option<&str>, minimize: Option<&str>) -> Res {
    let cs = constraint_set(variant, tight)?;
    let mut s = cs.to_text();
    let code = if let Some(wtext) = check {
        let w: WeightVector = wtext.parse().map_err(|e: domination::WeightParseError| usage(e.to_string()))?;
        let f = is_feasible(&cs, &w);
        s.push_str(&format!("check {w}: {}\n", if f.feasible() { "feasible" } else { "infeasible" }));
        for (i, slack) in &f.violated {
            s.push_str(&format!("violated {i}: {}  slack {slack}  # {}\n", cs.rows[*i], cs.rows[*i].source));
        }
        for i in &f.binding {
            s.push_str(&format!("binding {i}: {}  # {}\n", cs.rows[*i], cs.rows[*i].source));
        }
        if f.feasible() { 0 } else { 1 }
    } else {
        let text = minimize.expect("clap requires one of check/minimize");
        let obj: Objective = text.parse().map_err(|e: weights::ObjectiveParseError| usage(e.to_string()))?;
        let a = minimize_with(&cs, &obj, Method::Simplex);
        let b = minimize_with(&cs, &obj, Method::Vertices);
        match (&a, &b) {
            (Ok(x), Ok(y)) if x == y => {
                s.push_str(&format!("minimize {obj}: value {} at {}\n", x.value, x.w));
                for &i in &x.binding {
                    s.push_str(&format!("binding {i}: {}  # {}\n", cs.rows[i], cs.rows[i].source));
                }
                0
            }
            (Err(x), Err(y)) if x == y => {
                s.push_str(&format!("minimize {obj}: {x}\n"));
                1
            }
            _ => {
                s.push_str(&format!("minimize {obj}: methods disagree: simplex {a:?}, vertices {b:?}\n"));
                1
            }
        }
    };
    emit(&s).map_err(io_err)?;
    Ok(ExitCode::from(code))
}

fn check_catalog_cmd(variant: Variant) -> Res {
    let checks = check_catalog(variant);
    let mut s = format!("# {} scale {}\n", variant.name(), variant.ctx().scale);
    for c in &checks {
        s.push_str(&format!("{c}\t{}\n", if c.reducible() { "reducible" } else { "NOT reducible" }));
    }
    emit(&s).map_err(io_err)?;
    Ok(if checks.iter().all(|c| c.reducible()) { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn families(family: &str, n: usize) -> Res {
    let fam: Family = family.parse()?;
    let r = reproduce_families(fam, &[n])?;
    emit(&r.to_json_lines()).map_err(io_err)?;
    Ok(if r.records.iter().all(|x| x.closed_form_ok == Some(true)) { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn run(cli: Cli) -> Res {
    configure_threads()?;
    match cli.cmd {
        Cmd::Gen { max_n, exact_n, min_girth, planar, connected } => gen(max_n, exact_n, min_girth, planar, connected),
        Cmd::Gamma { method } => gamma(method),
        Cmd::Verify { weights, scale, strict, source, include_k1, exclude_acyclic, csv, timing } => verify(
            &weights,
            scale.as_deref(),
            strict,
            &source,
            include_k1,
            exclude_acyclic,
            csv.as_deref(),
            timing,
        ),
        Cmd::Match { variant, source } => match_cmd(variant, &source),
        Cmd::Discharge { ruleset, source } => discharge(ruleset, &source),
        Cmd::Weights { variant, tight_families, check, minimize } => {
            weights_cmd(&variant, tight_families, check.as_deref(), minimize.as_deref())
        }
        Cmd::CheckCatalog { variant } => check_catalog_cmd(variant),
        Cmd::Families { family, n } => families(&family, n),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
