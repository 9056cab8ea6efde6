use mindeg_core::counting::{copies_through_edge, enumerate_spanning_copies, Target};
use mindeg_core::formulas::{
    argmax_contribution, check_regular_pattern, contribution_distribution, cor1_expected_matchings,
    cor2_matching_fraction, cor3_hamcycle_fraction, general_copy_probability,
    remark_nonregular_expectation, thm1_fraction, thm2_expected_matchings, thm3_expected_matchings,
};
use mindeg_core::model::rational::{from_biguint, to_f64};
use mindeg_core::model::{parse_graph, Graph};
use mindeg_core::process::{
    monte_carlo_expected_count, monte_carlo_inclusion, stopping_time_summary,
};
use mindeg_core::verify::{run_suite, Suite};
use mindeg_core::{Ambient, Error, ExactRational};
use serde_json::json;

use crate::report::{
    to_json, CheckReport, DistributionReport, DistributionRow, EvalReport, Exact, SimulateReport,
    VerifySummary,
};
use crate::spec::{resolve, Builder};
use crate::{DistributionArgs, EvalTarget, FormatArg, SimulateArgs, TargetArg};

pub const EXIT_VERIFY: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_DOMAIN: u8 = 3;

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
    /// Report still written to stdout before exiting.
    pub stdout: Option<String>,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_USAGE,
            message: message.into(),
            stdout: None,
        }
    }

    fn domain(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_DOMAIN,
            message: message.into(),
            stdout: None,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError {
            code: if e.is_domain() {
                EXIT_DOMAIN
            } else {
                EXIT_USAGE
            },
            message: e.to_string(),
            stdout: None,
        }
    }
}

type CmdResult = Result<String, CliError>;

fn read_graph(path: &str) -> Result<Graph, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("cannot read {path:?}: {e}")))?;
    parse_graph(&text).map_err(|e| CliError::usage(format!("{path}: {e}")))
}

pub fn eval(which: EvalTarget) -> CmdResult {
    let report = match which {
        EvalTarget::Thm1 {
            h: Some(h),
            delta_big: Some(d),
            graph: None,
            ..
        } => EvalReport::new(
            "thm1",
            json!({"h": h, "delta_big": d}),
            &thm1_fraction(h, d)?,
        ),
        EvalTarget::Thm1 {
            graph: Some(graph),
            pattern: Some(pattern),
            delta: Some(delta),
            ..
        } => {
            let g = read_graph(&graph)?;
            let p = read_graph(&pattern)?;
            let d = g.regular_degree().ok_or_else(|| {
                CliError::domain("graph is not regular; use `eval remark` for irregular graphs")
            })?;
            if p.vertex_count() != g.vertex_count() {
                return Err(CliError::usage(
                    "pattern and graph have different vertex counts",
                ));
            }
            check_regular_pattern(&p, delta)?;
            if (delta as usize) > d {
                return Err(CliError::domain(format!(
                    "δ={delta} exceeds the degree {d}"
                )));
            }
            let (h, big) = (p.edge_count() as u64, (d - delta as usize) as u64);
            EvalReport::new(
                "thm1",
                json!({"h": h, "delta_big": big, "graph": graph, "pattern": pattern, "delta": delta}),
                &thm1_fraction(h, big)?,
            )
        }
        EvalTarget::Thm1 { .. } => {
            return Err(CliError::usage(
                "thm1 needs either --h and --delta-big, or --graph, --pattern and --delta",
            ))
        }
        EvalTarget::Cor1 { n } => {
            EvalReport::new("cor1", json!({"n": n}), &cor1_expected_matchings(n)?)
        }
        EvalTarget::Cor2 { n, d } => EvalReport::new(
            "cor2",
            json!({"n": n, "d": d}),
            &cor2_matching_fraction(n, d)?,
        ),
        EvalTarget::Cor3 { n, d } => EvalReport::new(
            "cor3",
            json!({"n": n, "d": d}),
            &cor3_hamcycle_fraction(n, d)?,
        ),
        EvalTarget::Thm2 { n, r } => EvalReport::new(
            "thm2",
            json!({"n": n, "r": r}),
            &thm2_expected_matchings(n, r)?,
        ),
        EvalTarget::Thm3 { n, r } => EvalReport::new(
            "thm3",
            json!({"n": n, "r": r}),
            &thm3_expected_matchings(n, r)?,
        ),
        EvalTarget::Remark {
            graph,
            pattern,
            delta,
        } => {
            let g = read_graph(&graph)?;
            let p = read_graph(&pattern)?;
            check_regular_pattern(&p, delta)?;
            let copies = enumerate_spanning_copies(&g, &p)?;
            let counts = copies_through_edge(&g, &copies);
            let value = remark_nonregular_expectation(&g, &p, delta, &counts)?;
            EvalReport::new(
                "remark",
                json!({"graph": graph, "pattern": pattern, "delta": delta, "copies": copies.len()}),
                &value,
            )
        }
        EvalTarget::General { graph, copy, delta } => {
            let g = read_graph(&graph)?;
            let j = read_graph(&copy)?;
            EvalReport::new(
                "general",
                json!({"graph": graph, "copy": copy, "delta": delta}),
                &general_copy_probability(&g, &j, delta)?,
            )
        }
    };
    Ok(to_json(&report))
}

fn target_name(t: TargetArg) -> &'static str {
    match t {
        TargetArg::Inclusion => "inclusion",
        TargetArg::BipartiteMatchings => "bipartite-matchings",
        TargetArg::PerfectMatchings => "perfect-matchings",
        TargetArg::HamiltonianCycles => "hamiltonian-cycles",
        TargetArg::HypergraphMatchings => "hypergraph-matchings",
        TargetArg::StoppingTime => "stopping-time",
    }
}

fn parse_edge_list(spec: &str, ambient: &Ambient) -> Result<Vec<usize>, CliError> {
    if spec == "all" {
        return Ok((0..ambient.edge_count()).collect());
    }
    spec.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| CliError::usage(format!("bad edge index {s:?} in --J")))
        })
        .collect()
}

pub fn simulate(args: SimulateArgs) -> CmdResult {
    let (builder, ambient) = resolve(&args.ambient)?;
    let mut histogram = None;
    let mut stddev = None;
    let (estimate_mean, estimate_stderr, reference) = match args.target {
        TargetArg::Inclusion => {
            let spec = args
                .j
                .as_deref()
                .ok_or_else(|| CliError::usage("--target inclusion needs --J"))?;
            let j = parse_edge_list(spec, &ambient)?;
            let est = monte_carlo_inclusion(&ambient, args.delta, &j, args.trials, args.seed)?;
            (
                est.mean,
                est.stderr,
                inclusion_reference(&ambient, args.delta, &j),
            )
        }
        TargetArg::StoppingTime => {
            let s = stopping_time_summary(&ambient, args.delta, args.trials, args.seed)?;
            histogram = Some(s.histogram.into_iter().collect());
            stddev = Some(s.stddev);
            (s.mean, s.stddev / (args.trials as f64).sqrt(), None)
        }
        t => {
            let target = match t {
                TargetArg::BipartiteMatchings => Target::BipartiteMatchings {
                    left_size: args.left_size.unwrap_or(match builder {
                        Builder::Knn(n) => n,
                        _ => ambient.vertex_count() / 2,
                    }),
                },
                TargetArg::PerfectMatchings => Target::PerfectMatchings,
                TargetArg::HamiltonianCycles => Target::HamiltonianCycles,
                _ => Target::HypergraphMatchings,
            };
            let est =
                monte_carlo_expected_count(&ambient, args.delta, target, args.trials, args.seed)?;
            (
                est.mean,
                est.stderr,
                count_reference(builder, &ambient, args.delta, target)?,
            )
        }
    };
    let reference_approx = reference.as_ref().map(to_f64);
    let z_score = reference_approx.map(|x| {
        let est = mindeg_core::Estimate {
            mean: estimate_mean,
            stderr: estimate_stderr,
            trials: args.trials,
            seed: args.seed,
        };
        est.z_score(x)
    });
    let report = SimulateReport {
        ambient: args.ambient,
        delta: args.delta,
        target: target_name(args.target).into(),
        trials: args.trials,
        seed: args.seed,
        mean: estimate_mean,
        stderr: estimate_stderr,
        reference: reference.as_ref().map(Exact::from),
        reference_approx,
        z_score,
        histogram,
        stddev,
    };
    Ok(to_json(&report))
}

/// Exact inclusion probability when the ambient is a graph and the chosen
/// edges form a spanning subgraph of minimum degree at least δ.
fn inclusion_reference(ambient: &Ambient, delta: u32, j: &[usize]) -> Option<ExactRational> {
    let g = ambient.as_graph()?;
    let copy = g.spanning_subgraph(j).ok()?;
    general_copy_probability(g, &copy, delta).ok()
}

/// Closed-form expected count where one applies.
fn count_reference(
    builder: Builder,
    ambient: &Ambient,
    delta: u32,
    target: Target,
) -> Result<Option<ExactRational>, CliError> {
    let scaled = |fraction: ExactRational| -> Result<Option<ExactRational>, CliError> {
        Ok(Some(from_biguint(&target.count_total(ambient)?) * fraction))
    };
    match (target, ambient) {
        (Target::HypergraphMatchings, Ambient::Hypergraph(h)) if delta == 1 => {
            let (v, r) = (h.vertex_count(), h.arity());
            let n = v / r;
            if v % r != 0 {
                return Ok(None);
            }
            let (n64, r64) = (n as u64, r as u64);
            let rpartite = matches!(builder, Builder::Rpartite(..))
                || (Some(h.edge_count()) == n.checked_pow(r as u32)
                    && h.edges()
                        .all(|e| e.iter().enumerate().all(|(p, &x)| x / n == p)));
            let complete = matches!(builder, Builder::Krn(..))
                || mindeg_core::formulas::binomial(v as u64, r64) == h.edge_count().into();
            if rpartite {
                Ok(Some(thm2_expected_matchings(n64, r64)?))
            } else if complete {
                Ok(Some(thm3_expected_matchings(n64, r64)?))
            } else {
                Ok(None)
            }
        }
        (Target::BipartiteMatchings { .. } | Target::PerfectMatchings, Ambient::Graph(g))
            if delta == 1 =>
        {
            let v = g.vertex_count() as u64;
            match g.regular_degree() {
                Some(d) if d >= 1 && v.is_multiple_of(2) => {
                    scaled(cor2_matching_fraction(v / 2, d as u64)?)
                }
                _ => Ok(None),
            }
        }
        (Target::HamiltonianCycles, Ambient::Graph(g)) if delta == 2 => {
            let v = g.vertex_count() as u64;
            match g.regular_degree() {
                Some(d) if d >= 2 && v >= 3 => scaled(cor3_hamcycle_fraction(v, d as u64)?),
                _ => Ok(None),
            }
        }
        _ => Ok(None),
    }
}

pub fn distribution(args: DistributionArgs) -> CmdResult {
    let dist = contribution_distribution(args.edge_total, args.h, args.delta_big)?;
    let argmax = argmax_contribution(args.edge_total, args.h, args.delta_big)?;
    let total = dist.total();
    match args.format {
        FormatArg::Json => {
            let report = DistributionReport {
                edge_total: args.edge_total,
                h: args.h,
                delta_big: args.delta_big,
                rows: dist
                    .iter()
                    .map(|(k, q)| DistributionRow {
                        k,
                        value: q.into(),
                        approx: to_f64(q),
                    })
                    .collect(),
                total: (&total).into(),
                total_approx: to_f64(&total),
                argmax,
            };
            Ok(to_json(&report))
        }
        FormatArg::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let io = |e: csv::Error| CliError::usage(format!("csv: {e}"));
            w.write_record(["k", "numerator", "denominator", "approx"])
                .map_err(io)?;
            for (k, q) in dist.iter() {
                w.write_record([
                    k.to_string(),
                    q.numer().to_string(),
                    q.denom().to_string(),
                    to_f64(q).to_string(),
                ])
                .map_err(io)?;
            }
            w.write_record([
                "total".to_string(),
                total.numer().to_string(),
                total.denom().to_string(),
                to_f64(&total).to_string(),
            ])
            .map_err(io)?;
            w.write_record([
                "argmax".to_string(),
                argmax.to_string(),
                "1".into(),
                argmax.to_string(),
            ])
            .map_err(io)?;
            let bytes = w
                .into_inner()
                .map_err(|e| CliError::usage(format!("csv: {e}")))?;
            Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
        }
    }
}

pub fn verify(suite: Suite) -> CmdResult {
    let report = run_suite(suite);
    for c in &report.checks {
        eprintln!(
            "{} {} ({} ms)",
            if c.passed { "PASS" } else { "FAIL" },
            c.name,
            c.elapsed_ms
        );
    }
    let summary = VerifySummary {
        suite: match suite {
            Suite::Small => "small",
            Suite::Full => "full",
        },
        passed: report.passed(),
        checks: report
            .checks
            .iter()
            .map(|c| CheckReport {
                name: c.name,
                passed: c.passed,
                expected: c.expected.clone(),
                actual: c.actual.clone(),
            })
            .collect(),
    };
    let out = to_json(&summary);
    match report.first_failure() {
        None => Ok(out),
        Some(c) => Err(CliError {
            code: EXIT_VERIFY,
            message: format!(
                "verification failed at {}: expected {}, actual {}",
                c.name, c.expected, c.actual
            ),
            stdout: Some(out),
        }),
    }
}
