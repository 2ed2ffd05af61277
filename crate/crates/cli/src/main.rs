//! `cdt`: bounds, constructions, graph analysis, exhaustive search and
//! verification suites for clique densities in `G(Δ, ω)`.
//!
//! Exit codes: 0 success, 2 invalid arguments, 3 malformed graph6 input,
//! 4 search cap exceeded, 5 a verification check failed.

mod report;

use std::io::{self, BufRead, Write};
use std::process::ExitCode;
use std::time::Instant;

use cdt_core::canon::canonical_graph;
use cdt_core::clique::{check_class, clique_count, clique_number, density, is_perfect_vertex, vertex_weights};
use cdt_core::search::{best_up_to, probe_conjecture, Options, Probe, SearchSpec, DEFAULT_CAP};
use cdt_core::turan::{bounds_report, bt_graph, g_star, lower_bound_graph, turan_graph};
use cdt_core::verify::{run_suite, Suite};
use cdt_core::{graph6, Error, Graph, Rational};
use clap::{Parser, Subcommand};
use serde_json::json;

use report::{bound_outputs, rat, search_outputs, suite_outputs, ReportDocument};

#[derive(Parser, Debug)]
#[command(name = "cdt", version, about = "Clique densities under degree and clique-number bounds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Lower, upper and proven exact values of the density supremum.
    Bounds {
        #[arg(short = 't', default_value_t = 3)]
        t: usize,
        #[arg(short = 'd', long = "delta", required_unless_present = "table")]
        delta: Option<usize>,
        #[arg(short = 'w', long = "omega", required_unless_present = "table")]
        omega: Option<usize>,
        /// CSV sweep, one row per (Δ, ω) with 3 ≤ ω ≤ Δ + 1.
        #[arg(long, conflicts_with = "json")]
        table: bool,
        #[arg(long, default_value_t = 3)]
        delta_min: usize,
        #[arg(long, default_value_t = 10)]
        delta_max: usize,
        #[arg(long, default_value_t = 3)]
        omega_min: usize,
        #[arg(long, default_value_t = 10)]
        omega_max: usize,
        #[arg(long)]
        json: bool,
    },
    /// Print a named construction as canonical graph6.
    Construct {
        #[command(subcommand)]
        kind: Construction,
    },
    /// Report clique statistics for graph6 lines read from stdin.
    Analyze {
        #[arg(short = 't', default_value_t = 3)]
        t: usize,
        /// Class `Δ ω` for the perfect-vertex test.
        #[arg(long, num_args = 2, value_names = ["DELTA", "OMEGA"])]
        class: Option<Vec<usize>>,
        #[arg(long)]
        json: bool,
    },
    /// Exhaustive search for the largest density at each order.
    Search {
        #[arg(short = 'n', conflicts_with_all = ["n_min", "n_max"], required_unless_present = "n_max")]
        n: Option<usize>,
        #[arg(long, requires = "n_max")]
        n_min: Option<usize>,
        #[arg(long)]
        n_max: Option<usize>,
        #[arg(short = 'd', long = "delta")]
        delta: usize,
        #[arg(short = 'w', long = "omega")]
        omega: usize,
        #[arg(short = 't', default_value_t = 3)]
        t: usize,
        /// Worker threads (0 = all cores).
        #[arg(long, default_value_t = 0)]
        threads: usize,
        /// Largest order allowed (at most 16).
        #[arg(long = "override-cap", env = "CDT_MAX_N", default_value_t = DEFAULT_CAP)]
        cap: usize,
        /// Skip subtrees that cannot reach this density, e.g. `15/8`.
        #[arg(long)]
        prune_target: Option<Rational>,
        /// Maximum number of witnesses listed per order.
        #[arg(long, default_value_t = 64)]
        witness_limit: usize,
        #[arg(long)]
        json: bool,
    },
    /// Run a verification suite; exits 5 if any check fails.
    Verify {
        #[arg(value_parser = parse_suite)]
        suite: Suite,
        #[arg(long, default_value_t = 0)]
        threads: usize,
        #[arg(long)]
        json: bool,
    },
    /// Run a conjecture probe and report the outcome.
    Probe {
        #[command(subcommand)]
        probe: ProbeKind,
    },
}

#[derive(Subcommand, Debug)]
enum Construction {
    /// Turán graph T(n, r).
    Turan { n: usize, r: usize },
    /// Lower bound graph L(Δ, ω).
    Lbg { delta: usize, omega: usize },
    /// BT(k).
    Bt { k: usize },
    /// G*.
    Gstar,
}

#[derive(Subcommand, Debug)]
enum ProbeKind {
    /// Does anything in G(7, 3) beat ρ_3(BT(3)) = 40/11?
    Bt3 {
        #[arg(long, default_value_t = 10)]
        n_cap: usize,
        #[arg(long = "override-cap", env = "CDT_MAX_N", default_value_t = DEFAULT_CAP)]
        cap: usize,
        #[arg(long, default_value_t = 0)]
        threads: usize,
        #[arg(long)]
        json: bool,
    },
    /// Best witnesses per order for one triple.
    Attainment {
        #[arg(short = 't')]
        t: usize,
        #[arg(short = 'd', long = "delta")]
        delta: usize,
        #[arg(short = 'w', long = "omega")]
        omega: usize,
        #[arg(long, default_value_t = 9)]
        n_cap: usize,
        #[arg(long = "override-cap", env = "CDT_MAX_N", default_value_t = DEFAULT_CAP)]
        cap: usize,
        #[arg(long, default_value_t = 0)]
        threads: usize,
        #[arg(long)]
        json: bool,
    },
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// A failure with its exit code.
struct Exit {
    code: u8,
    message: String,
}

impl Exit {
    fn usage(message: impl Into<String>) -> Self {
        Exit {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<Error> for Exit {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::CapExceeded { .. } => 4,
            Error::Graph6(_) => 3,
            _ => 2,
        };
        Exit {
            code,
            message: e.to_string(),
        }
    }
}

type CmdResult = Result<(), Exit>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Bounds {
            t,
            delta,
            omega,
            table,
            delta_min,
            delta_max,
            omega_min,
            omega_max,
            json,
        } => {
            if table {
                cmd_table(t, delta_min..=delta_max, omega_min..=omega_max)
            } else {
                cmd_bounds(t, delta.expect("required"), omega.expect("required"), json)
            }
        }
        Command::Construct { kind } => cmd_construct(kind),
        Command::Analyze { t, class, json } => cmd_analyze(t, class.map(|c| (c[0], c[1])), json),
        Command::Search {
            n,
            n_min,
            n_max,
            delta,
            omega,
            t,
            threads,
            cap,
            prune_target,
            witness_limit,
            json,
        } => {
            let (lo, hi) = match (n, n_min, n_max) {
                (Some(n), _, _) => (n, n),
                (None, lo, Some(hi)) => (lo.unwrap_or(1), hi),
                _ => unreachable!("clap requires -n or --n-max"),
            };
            let spec = SearchSpec::range(lo, hi, delta, omega, t)
                .threads(threads)
                .cap(cap)
                .prune_target(prune_target)
                .witness_limit(witness_limit);
            cmd_search(spec, json)
        }
        Command::Verify { suite, threads, json } => cmd_verify(suite, threads, json),
        Command::Probe { probe } => cmd_probe(probe),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

fn emit(text: &str) {
    let mut out = io::stdout().lock();
    // a closed pipe is not an error worth reporting
    let _ = writeln!(out, "{text}");
}

fn cmd_bounds(t: usize, delta: usize, omega: usize, json: bool) -> CmdResult {
    let start = Instant::now();
    let r = bounds_report(t, delta, omega)?;
    if json {
        let doc = ReportDocument::new(
            "bounds",
            json!({ "t": t, "delta": delta, "omega": omega }),
            bound_outputs(&r),
            start.elapsed(),
        )
        .witnesses(r.witness.iter().cloned().collect())
        .provenance(vec![r.provenance.as_str().to_string()]);
        emit(&doc.to_pretty());
        return Ok(());
    }
    let mut lines = vec![
        format!(
            "t={} Δ={} ω={} (Δ = {}·{} + {})",
            r.t,
            r.max_degree,
            r.clique_bound,
            r.decomposition.a,
            r.clique_bound - 1,
            r.decomposition.b
        ),
        format!("lower  {}", r.lower),
        format!("upper  {}", r.upper),
    ];
    match &r.exact {
        Some(e) => lines.push(format!("exact  {e} ({})", r.provenance.as_str())),
        None => lines.push("exact  unknown".to_string()),
    }
    if let Some(w) = &r.witness {
        lines.push(format!("witness {w}"));
    }
    if r.exact.is_none() && r.best_known > r.lower {
        lines.push(format!("best known {}", r.best_known));
    }
    for note in &r.notes {
        lines.push(format!("note: {note}"));
    }
    emit(&lines.join("\n"));
    Ok(())
}

fn cmd_table(
    t: usize,
    deltas: std::ops::RangeInclusive<usize>,
    omegas: std::ops::RangeInclusive<usize>,
) -> CmdResult {
    let mut rows = vec!["t,delta,omega,a,b,lower,upper,exact,provenance".to_string()];
    for delta in deltas {
        for omega in omegas.clone() {
            if omega < 2 || omega > delta + 1 || t > omega {
                continue;
            }
            let r = bounds_report(t, delta, omega)?;
            rows.push(format!(
                "{t},{delta},{omega},{},{},{},{},{},{}",
                r.decomposition.a,
                r.decomposition.b,
                r.lower,
                r.upper,
                r.exact.as_ref().map(|e| e.to_string()).unwrap_or_default(),
                r.provenance.as_str()
            ));
        }
    }
    emit(&rows.join("\n"));
    Ok(())
}

fn cmd_construct(kind: Construction) -> CmdResult {
    let g = match kind {
        Construction::Turan { n, r } => turan_graph(n, r)?,
        Construction::Lbg { delta, omega } => lower_bound_graph(delta, omega)?,
        Construction::Bt { k } => bt_graph(k)?,
        Construction::Gstar => g_star(),
    };
    emit(&graph6::encode(&canonical_graph(&g)));
    Ok(())
}

fn read_graphs() -> Result<Vec<(usize, Graph)>, Exit> {
    let mut graphs = Vec::new();
    for (i, line) in io::stdin().lock().lines().enumerate() {
        let line_no = i + 1;
        let line = line.map_err(|e| Exit::usage(format!("reading stdin: {e}")))?;
        let text = line.trim();
        if text.is_empty() {
            eprintln!("warning: line {line_no} is empty, skipped");
            continue;
        }
        let g = graph6::decode(text).map_err(|e| Exit {
            code: 3,
            message: format!("line {line_no}: malformed graph6 {text:?}: {e}"),
        })?;
        graphs.push((line_no, g));
    }
    Ok(graphs)
}

fn cmd_analyze(t: usize, class: Option<(usize, usize)>, json: bool) -> CmdResult {
    let start = Instant::now();
    let graphs = read_graphs()?;
    let mut reports = Vec::new();
    let mut text = Vec::new();
    for (line, g) in &graphs {
        let n = g.order();
        let k = clique_count(g, t);
        let rho: Option<Rational> = density(g, t).ok();
        let weights = vertex_weights(g, t);
        let perfect: Option<Vec<usize>> = match class {
            Some((d, w)) if check_class(g, d, w).is_ok() => Some(
                (0..n)
                    .filter(|&v| is_perfect_vertex(g, v, d, w).unwrap_or(false))
                    .collect(),
            ),
            _ => None,
        };
        let in_class = class.map(|(d, w)| check_class(g, d, w).is_ok());
        let form = graph6::encode(&canonical_graph(g));
        reports.push(json!({
            "line": line,
            "graph6": graph6::encode(g),
            "canonical": form,
            "n": n,
            "max_degree": g.max_degree(),
            "clique_number": clique_number(g),
            "k_t": k,
            "density": rho.as_ref().map_or(serde_json::Value::Null, rat),
            "vertex_weights": weights,
            "in_class": in_class,
            "perfect_vertices": perfect,
        }));
        let mut block = vec![
            format!("line {line}: {}", graph6::encode(g)),
            format!("  n={n} Δ={} ω={}", g.max_degree(), clique_number(g)),
            format!(
                "  k_{t}={k} ρ_{t}={}",
                rho.map_or_else(|| "undefined".to_string(), |r| r.to_string())
            ),
            format!(
                "  k_{t}(v): {}",
                weights.iter().map(u64::to_string).collect::<Vec<_>>().join(" ")
            ),
        ];
        if let Some((d, w)) = class {
            block.push(match &perfect {
                None => format!("  not in G({d},{w})"),
                Some(p) if p.is_empty() => format!("  perfect in G({d},{w}): none"),
                Some(p) => format!(
                    "  perfect in G({d},{w}): {}",
                    p.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
                ),
            });
        }
        text.push(block.join("\n"));
    }
    if json {
        let witnesses = graphs.iter().map(|(_, g)| graph6::encode(&canonical_graph(g))).collect();
        let doc = ReportDocument::new(
            "analyze",
            json!({ "t": t, "class": class.map(|(d, w)| json!({ "delta": d, "omega": w })) }),
            json!({ "graphs": reports }),
            start.elapsed(),
        )
        .witnesses(witnesses);
        emit(&doc.to_pretty());
    } else if !text.is_empty() {
        emit(&text.join("\n"));
    }
    Ok(())
}

fn cmd_search(spec: SearchSpec, json: bool) -> CmdResult {
    let start = Instant::now();
    let r = best_up_to(&spec)?;
    if json {
        let doc = ReportDocument::new(
            "search",
            serde_json::to_value(&spec).expect("spec serializes"),
            search_outputs(&r),
            start.elapsed(),
        )
        .witnesses(report::best_witnesses(&r))
        .provenance(vec![r.exact_provenance.as_str().to_string()]);
        emit(&doc.to_pretty());
        return Ok(());
    }
    let t = spec.t;
    let mut lines = vec![format!(
        "G({},{}) t={} n={}..={}{}",
        spec.max_degree,
        spec.clique_bound,
        t,
        spec.n_min,
        spec.n_max,
        if r.pruned { " (pruned)" } else { "" }
    )];
    lines.push(format!("{:>3} {:>10} {:>8} {:>10} {:>9}", "n", "graphs", format!("max k_{t}"), format!("max ρ_{t}"), "witnesses"));
    for l in &r.levels {
        lines.push(format!(
            "{:>3} {:>10} {:>8} {:>10} {:>9}",
            l.n,
            l.graphs_enumerated,
            l.max_count.map_or("-".to_string(), |k| k.to_string()),
            l.max_density.as_ref().map_or("-".to_string(), |d| d.to_string()),
            l.witness_count
        ));
    }
    if let (Some(best), Some(n)) = (&r.best_density, r.best_n) {
        lines.push(format!("best {best} at n={n}"));
    }
    if let Some(lower) = &r.lower_bound {
        lines.push(format!("lower bound {lower}"));
    }
    if let Some(exact) = &r.exact {
        lines.push(format!("exact {exact} ({})", r.exact_provenance.as_str()));
    }
    for w in report::best_witnesses(&r) {
        lines.push(format!("witness {w}"));
    }
    emit(&lines.join("\n"));
    Ok(())
}

fn cmd_verify(suite: Suite, threads: usize, json: bool) -> CmdResult {
    let start = Instant::now();
    let r = run_suite(suite, &Options::with_threads(threads))?;
    if json {
        let counterexamples = r.checks.iter().filter_map(|c| c.counterexample.clone()).collect();
        let doc = ReportDocument::new("verify", json!({ "suite": suite.as_str() }), suite_outputs(&r), start.elapsed())
            .witnesses(counterexamples);
        emit(&doc.to_pretty());
    } else {
        let mut lines = Vec::new();
        for c in &r.checks {
            let status = match (c.passed, c.gating) {
                (true, _) => "PASS",
                (false, true) => "FAIL",
                (false, false) => "INFO",
            };
            lines.push(format!("[{status}] {} ({} cases)", c.name, c.cases));
            if !c.detail.is_empty() && !c.passed {
                lines.push(format!("       {}", c.detail));
            }
            if let Some(g) = &c.counterexample {
                lines.push(format!("       counterexample {g}"));
            }
        }
        lines.push(format!(
            "{}: {}",
            suite.as_str(),
            if r.passed { "all gating checks passed" } else { "FAILED" }
        ));
        emit(&lines.join("\n"));
    }
    if r.passed {
        Ok(())
    } else {
        Err(Exit {
            code: 5,
            message: format!("suite {} has failing checks", suite.as_str()),
        })
    }
}

fn cmd_probe(kind: ProbeKind) -> CmdResult {
    let start = Instant::now();
    let (probe, n_cap, cap, threads, json) = match kind {
        ProbeKind::Bt3 {
            n_cap,
            cap,
            threads,
            json,
        } => (Probe::Bt3, n_cap, cap, threads, json),
        ProbeKind::Attainment {
            t,
            delta,
            omega,
            n_cap,
            cap,
            threads,
            json,
        } => (
            Probe::Attainment {
                t,
                max_degree: delta,
                clique_bound: omega,
            },
            n_cap,
            cap,
            threads,
            json,
        ),
    };
    let r = probe_conjecture(probe, n_cap, &Options { threads, cap })?;
    if json {
        let outputs = json!({
            "probe": probe.name(),
            "target": report::opt_rat(r.target.as_ref()),
            "exceeded": r.exceeded,
            "attained_at_11": r.attained_at_11,
            "bt3_unique_at_11": r.bt3_unique_at_11,
            "search": search_outputs(&r.search),
        });
        let doc = ReportDocument::new(
            "probe",
            json!({ "probe": probe, "n_cap": n_cap }),
            outputs,
            start.elapsed(),
        )
        .witnesses(report::best_witnesses(&r.search));
        emit(&doc.to_pretty());
        return Ok(());
    }
    let mut lines = vec![format!("probe {} up to n={n_cap}", probe.name())];
    for l in &r.search.levels {
        lines.push(format!(
            "  n={:<2} best {:<8} ({} graphs, {} maximizers)",
            l.n,
            l.max_density.as_ref().map_or("-".to_string(), |d| d.to_string()),
            l.graphs_enumerated,
            l.witness_count
        ));
    }
    if let Some(target) = &r.target {
        let verdict = match r.exceeded {
            Some(true) => "exceeded",
            _ => "not exceeded",
        };
        lines.push(format!("target {target}: {verdict}"));
    }
    if let Some(attained) = r.attained_at_11 {
        lines.push(format!("n=11 maximum equals target: {attained}"));
        lines.push(format!("BT(3) unique maximizer at n=11: {}", r.bt3_unique_at_11 == Some(true)));
    }
    emit(&lines.join("\n"));
    Ok(())
}
