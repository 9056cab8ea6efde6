//! Self-check suite: oracle-versus-formula equalities, exact identities, and
//! Monte Carlo consistency, each reported with its expected and actual
//! values.

use std::fmt::Display;
use std::time::Instant;

use num_bigint::BigUint;

use crate::counting::Target;
use crate::error::Result;
use crate::formulas::{
    argmax_contribution, contribution_distribution, cor1_expected_matchings,
    cor2_matching_fraction, factorial, general_copy_probability, thm1_fraction,
    thm2_expected_matchings, thm3_expected_matchings,
};
use crate::model::rational::{from_biguint, from_int, ratio, to_f64};
use crate::model::{
    build_complete, build_complete_bipartite, build_complete_hypergraph, build_path,
    build_rpartite_hypergraph, Ambient, ExactRational, Graph,
};
use crate::oracle::{
    exhaustive_expected_count, exhaustive_inclusion_probability, exhaustive_k_distribution,
};
use crate::process::{monte_carlo_expected_count, monte_carlo_inclusion, stopping_time_summary};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Small,
    Full,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub expected: String,
    pub actual: String,
    pub elapsed_ms: u128,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub suite: Suite,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&CheckResult> {
        self.checks.iter().find(|c| !c.passed)
    }
}

struct Outcome {
    passed: bool,
    expected: String,
    actual: String,
}

fn equal<T: PartialEq + Display>(expected: T, actual: T) -> Outcome {
    Outcome {
        passed: expected == actual,
        expected: expected.to_string(),
        actual: actual.to_string(),
    }
}

type CheckFn = fn(Suite) -> Result<Outcome>;

const CHECKS: &[(&str, CheckFn)] = &[
    ("k22-matching-oracle-vs-thm1", k22_matching),
    ("k33-expected-matchings-oracle", k33_expected_matchings),
    ("k4-hamiltonian-cycles-oracle", k4_hamiltonian_cycles),
    ("thm2-r2-equals-cor1", thm2_degeneration),
    ("thm3-r2-equals-cor2", thm3_degeneration),
    ("k-decomposition-sums-to-thm1", decomposition_full_grid),
    (
        "k-decomposition-sums-to-thm1-feasible",
        decomposition_feasible_grid,
    ),
    ("k22-k-distribution-pointwise", k22_k_distribution),
    ("k222-hypergraph-matchings-oracle", k222_hypergraph),
    ("k4-perfect-matchings-oracle-vs-thm3", k4_perfect_matchings),
    ("monte-carlo-k66-inclusion", mc_k66_inclusion),
    ("monte-carlo-k33-matchings", mc_k33_matchings),
    ("monte-carlo-k222-matchings", mc_k222_matchings),
    ("k3-spanning-path-threshold-correction", k3_spanning_path),
    ("k-argmax-location", argmax_location),
    ("stopping-time-k64-64", stopping_time),
];

pub fn run_suite(suite: Suite) -> VerifyReport {
    let checks = CHECKS
        .iter()
        .map(|&(name, check)| {
            let start = Instant::now();
            let outcome = check(suite).unwrap_or_else(|e| Outcome {
                passed: false,
                expected: "no error".into(),
                actual: format!("error: {e}"),
            });
            CheckResult {
                name,
                passed: outcome.passed,
                expected: outcome.expected,
                actual: outcome.actual,
                elapsed_ms: start.elapsed().as_millis(),
            }
        })
        .collect();
    VerifyReport { suite, checks }
}

fn perfect_matching_of_knn(n: usize) -> Vec<usize> {
    // edge (i, n + i) sits at position i * n + i
    (0..n).map(|i| i * n + i).collect()
}

fn k22_matching(_: Suite) -> Result<Outcome> {
    let g: Ambient = build_complete_bipartite(2)?.into();
    let oracle = exhaustive_inclusion_probability(&g, 1, &perfect_matching_of_knn(2))?;
    let formula = thm1_fraction(2, 1)?;
    Ok(Outcome {
        passed: oracle == formula && formula == ratio(1, 2),
        expected: "1/2".into(),
        actual: format!("oracle {oracle}, formula {formula}"),
    })
}

fn k33_expected_matchings(_: Suite) -> Result<Outcome> {
    let g: Ambient = build_complete_bipartite(3)?.into();
    let oracle = exhaustive_expected_count(&g, 1, Target::BipartiteMatchings { left_size: 3 })?;
    let formula = cor1_expected_matchings(3)?;
    Ok(Outcome {
        passed: oracle == ratio(36, 35) && formula == oracle,
        expected: "36/35".into(),
        actual: format!("oracle {oracle}, formula {formula}"),
    })
}

fn k4_hamiltonian_cycles(_: Suite) -> Result<Outcome> {
    let g: Ambient = build_complete(4)?.into();
    let oracle = exhaustive_expected_count(&g, 2, Target::HamiltonianCycles)?;
    let formula = from_int(3) * crate::formulas::cor3_hamcycle_fraction(4, 3)?;
    Ok(Outcome {
        passed: oracle == from_int(1) && formula == oracle,
        expected: "1".into(),
        actual: format!("oracle {oracle}, formula {formula}"),
    })
}

fn thm2_degeneration(suite: Suite) -> Result<Outcome> {
    let top = if suite == Suite::Full { 30 } else { 10 };
    for n in 1..=top {
        let (a, b) = (thm2_expected_matchings(n, 2)?, cor1_expected_matchings(n)?);
        if a != b {
            return Ok(equal(b, a));
        }
    }
    Ok(equal(
        format!("equal for 1 <= n <= {top}"),
        format!("equal for 1 <= n <= {top}"),
    ))
}

fn thm3_degeneration(suite: Suite) -> Result<Outcome> {
    let top = if suite == Suite::Full { 15 } else { 8 };
    for n in 1..=top {
        let matchings = factorial(2 * n) / (BigUint::from(2u32).pow(n as u32) * factorial(n));
        let expected = from_biguint(&matchings) * cor2_matching_fraction(n, 2 * n - 1)?;
        let actual = thm3_expected_matchings(n, 2)?;
        if actual != expected {
            return Ok(equal(expected, actual));
        }
    }
    Ok(equal(
        format!("equal for 1 <= n <= {top}"),
        format!("equal for 1 <= n <= {top}"),
    ))
}

/// An `(E, h, Δ)` grid point.
type GridPoint = (u64, u64, u64);

/// Points checked and mismatching points of the decomposition identity.
fn decomposition_mismatches(
    h_max: u64,
    d_max: u64,
    e_max: u64,
    feasible_only: bool,
) -> Result<(usize, Vec<GridPoint>)> {
    let mut checked = 0;
    let mut bad = Vec::new();
    for h in 1..=h_max {
        for d in 0..=d_max {
            let expected = thm1_fraction(h, d)?;
            let lo = if feasible_only { h + 2 * d } else { h };
            for e in lo..=e_max {
                checked += 1;
                if contribution_distribution(e, h, d)?.total() != expected {
                    bad.push((e, h, d));
                }
            }
        }
    }
    Ok((checked, bad))
}

fn grid(suite: Suite) -> (u64, u64, u64) {
    if suite == Suite::Full {
        (12, 12, 60)
    } else {
        (6, 6, 30)
    }
}

fn decomposition_full_grid(suite: Suite) -> Result<Outcome> {
    let (h, d, e) = grid(suite);
    let (checked, bad) = decomposition_mismatches(h, d, e, false)?;
    let infeasible = bad.iter().filter(|&&(e, h, d)| e < h + 2 * d).count();
    Ok(Outcome {
        passed: bad.is_empty(),
        expected: format!("sum equals thm1 at all {checked} points h<={h}, Δ<={d}, h<=E<={e}"),
        actual: match bad.first() {
            None => format!("equal at all {checked} points"),
            Some((e0, h0, d0)) => format!(
                "{} mismatches ({infeasible} with E < h+2Δ); first at E={e0}, h={h0}, Δ={d0}",
                bad.len()
            ),
        },
    })
}

fn decomposition_feasible_grid(suite: Suite) -> Result<Outcome> {
    let (h, d, e) = grid(suite);
    let (checked, bad) = decomposition_mismatches(h, d, e, true)?;
    Ok(Outcome {
        passed: bad.is_empty(),
        expected: format!("sum equals thm1 at all {checked} points with E >= h+2Δ"),
        actual: format!("{} mismatches", bad.len()),
    })
}

fn k22_k_distribution(_: Suite) -> Result<Outcome> {
    let g: Ambient = build_complete_bipartite(2)?.into();
    let oracle = exhaustive_k_distribution(&g, 1, &perfect_matching_of_knn(2))?;
    let formula = contribution_distribution(4, 2, 1)?;
    let show = |d: &crate::model::KDistribution| {
        d.iter()
            .map(|(k, q)| format!("{k}:{q}"))
            .collect::<Vec<_>>()
            .join(" ")
    };
    let expected_pts = [(2, ratio(1, 6)), (3, ratio(1, 3)), (4, from_int(0))];
    let passed =
        oracle.same_masses(&formula) && expected_pts.iter().all(|(k, q)| &oracle.get(*k) == q);
    Ok(Outcome {
        passed,
        expected: "2:1/6 3:1/3 4:0".into(),
        actual: format!("oracle {}; formula {}", show(&oracle), show(&formula)),
    })
}

fn k222_hypergraph(_: Suite) -> Result<Outcome> {
    let h: Ambient = build_rpartite_hypergraph(2, 3)?.into();
    let oracle = exhaustive_expected_count(&h, 1, Target::HypergraphMatchings)?;
    let formula = thm2_expected_matchings(2, 3)?;
    Ok(Outcome {
        passed: oracle == ratio(27, 35) && formula == oracle,
        expected: "27/35".into(),
        actual: format!("oracle {oracle}, formula {formula}"),
    })
}

fn k4_perfect_matchings(_: Suite) -> Result<Outcome> {
    let g: Ambient = build_complete(4)?.into();
    let oracle = exhaustive_expected_count(&g, 1, Target::PerfectMatchings)?;
    let formula = thm3_expected_matchings(2, 2)?;
    // the same ambient viewed as a 2-uniform hypergraph
    let hyper: Ambient = build_complete_hypergraph(2, 2)?.into();
    let hyper_oracle = exhaustive_expected_count(&hyper, 1, Target::HypergraphMatchings)?;
    Ok(Outcome {
        passed: oracle == ratio(4, 5) && formula == oracle && hyper_oracle == oracle,
        expected: "4/5".into(),
        actual: format!("oracle {oracle}, hypergraph oracle {hyper_oracle}, formula {formula}"),
    })
}

fn mc_trials(suite: Suite) -> u64 {
    if suite == Suite::Full {
        100_000
    } else {
        20_000
    }
}

fn within_four_sigma(estimate: crate::model::Estimate, exact: &ExactRational) -> Outcome {
    let x = to_f64(exact);
    let z = estimate.z_score(x);
    Outcome {
        passed: z.abs() <= 4.0,
        expected: format!("{exact} ≈ {x:.7} within 4 stderr"),
        actual: format!(
            "mean {:.7} ± {:.7} over {} trials (z = {z:.3})",
            estimate.mean, estimate.stderr, estimate.trials
        ),
    }
}

fn mc_k66_inclusion(suite: Suite) -> Result<Outcome> {
    let g: Ambient = build_complete_bipartite(6)?.into();
    let est = monte_carlo_inclusion(&g, 1, &perfect_matching_of_knn(6), mc_trials(suite), 1)?;
    Ok(within_four_sigma(est, &thm1_fraction(6, 5)?))
}

fn mc_k33_matchings(suite: Suite) -> Result<Outcome> {
    let g: Ambient = build_complete_bipartite(3)?.into();
    let target = Target::BipartiteMatchings { left_size: 3 };
    let est = monte_carlo_expected_count(&g, 1, target, mc_trials(suite), 2)?;
    Ok(within_four_sigma(est, &cor1_expected_matchings(3)?))
}

fn mc_k222_matchings(suite: Suite) -> Result<Outcome> {
    let h: Ambient = build_rpartite_hypergraph(2, 3)?.into();
    let est = monte_carlo_expected_count(&h, 1, Target::HypergraphMatchings, mc_trials(suite), 3)?;
    Ok(within_four_sigma(est, &thm2_expected_matchings(2, 3)?))
}

fn k3_spanning_path(_: Suite) -> Result<Outcome> {
    let k3 = build_complete(3)?;
    let path: Graph = build_path(3)?;
    let j = k3.embed_edges(&path).expect("path lies in K_3");
    let oracle = exhaustive_inclusion_probability(&k3.clone().into(), 1, &j)?;
    let general = general_copy_probability(&k3, &path, 1)?;
    let literal = thm1_fraction(2, 1)?;
    Ok(Outcome {
        passed: oracle == ratio(1, 3) && general == ratio(1, 3) && literal == ratio(1, 2),
        expected: "oracle 1/3, general 1/3, thm1 1/2".into(),
        actual: format!("oracle {oracle}, general {general}, thm1 {literal}"),
    })
}

fn argmax_location(_: Suite) -> Result<Outcome> {
    let (e, h, d) = (100u64, 10u64, 9u64);
    let k = argmax_contribution(e, h, d)?;
    let dist = contribution_distribution(e, h, d)?;
    let best = dist.get(k);
    let scan_ok = dist
        .iter()
        .all(|(j, q)| q < &best || (q == &best && j >= k));
    let predicted = (h * e) as f64 / (d + h) as f64;
    Ok(Outcome {
        passed: scan_ok && (k as f64 - predicted).abs() <= 3.0,
        expected: format!("scan maximum within ±3 of {predicted:.2}"),
        actual: format!("k = {k}, scan agrees: {scan_ok}"),
    })
}

fn stopping_time(_: Suite) -> Result<Outcome> {
    let g: Ambient = build_complete_bipartite(64)?.into();
    let s = stopping_time_summary(&g, 1, 200, 64)?;
    let scale = 64.0 * (64f64).ln();
    let (lo, hi) = (0.7 * scale, 1.5 * scale);
    Ok(Outcome {
        passed: (lo..=hi).contains(&s.mean),
        expected: format!("mean in [{lo:.1}, {hi:.1}]"),
        actual: format!("mean {:.1}, stddev {:.1}", s.mean, s.stddev),
    })
}
