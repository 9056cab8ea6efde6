//! Simulation of the stopped process and Monte Carlo estimators.
//!
//! # Reproducibility
//!
//! Trial `t` of a run with seed `s` draws from a ChaCha8 generator seeded
//! with `s ^ mix(t)`, where `mix` is the SplitMix64 output function applied
//! to `t`:
//!
//! ```text
//! z = t + 0x9E3779B97F4A7C15
//! z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//! z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//! mix(t) = z ^ (z >> 31)
//! ```
//!
//! (all arithmetic wrapping mod 2^64). Each trial starts from the identity
//! ordering of edge positions and performs a partial Fisher–Yates shuffle,
//! drawing position `i` uniformly from `i..m` with `Rng::random_range`.
//! Tallies are exact integers, so the result does not depend on how trials
//! are split across workers.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::counting::Target;
use crate::error::{Error, Result};
use crate::model::{Ambient, Estimate, ProcessOutcome, ThresholdParams};

/// SplitMix64 output function.
pub fn mix(trial_index: u64) -> u64 {
    let mut z = trial_index.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn trial_rng(seed: u64, trial_index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ mix(trial_index))
}

/// Per-trial scratch: the partially shuffled ordering and degree counters.
struct Sampler<'a> {
    ambient: &'a Ambient,
    delta: usize,
    order: Vec<usize>,
    degree: Vec<usize>,
}

impl<'a> Sampler<'a> {
    fn new(ambient: &'a Ambient, params: ThresholdParams) -> Self {
        Sampler {
            ambient,
            delta: params.delta as usize,
            order: Vec::with_capacity(ambient.edge_count()),
            degree: vec![0; ambient.vertex_count()],
        }
    }

    /// Runs one trial; the stopped prefix is `self.order[..k]`.
    fn run(&mut self, rng: &mut impl Rng) -> usize {
        let m = self.ambient.edge_count();
        self.order.clear();
        self.order.extend(0..m);
        self.degree.iter_mut().for_each(|d| *d = 0);
        let mut below = self.degree.len();
        let mut k = 0;
        while below > 0 {
            // the threshold check guarantees termination before k == m
            let pick = rng.random_range(k..m);
            self.order.swap(k, pick);
            for &v in self.ambient.edge_vertices(self.order[k]) {
                self.degree[v] += 1;
                if self.degree[v] == self.delta {
                    below -= 1;
                }
            }
            k += 1;
        }
        debug_assert!(is_minimal_stop(
            self.ambient,
            self.delta as u32,
            &self.order[..k]
        ));
        k
    }
}

fn prepare(ambient: &Ambient, delta: u32) -> Result<ThresholdParams> {
    let params = ThresholdParams::new(delta)?;
    ambient.check_threshold(params)?;
    Ok(params)
}

/// One realization of the process, fully determined by `(seed, trial_index)`.
pub fn run_process(
    ambient: &Ambient,
    delta: u32,
    seed: u64,
    trial_index: u64,
) -> Result<ProcessOutcome> {
    let params = prepare(ambient, delta)?;
    let mut sampler = Sampler::new(ambient, params);
    let k = sampler.run(&mut trial_rng(seed, trial_index));
    sampler.order.truncate(k);
    Ok(ProcessOutcome {
        ordering_prefix: sampler.order,
    })
}

/// True when `prefix` reaches minimum degree δ and dropping its last edge
/// does not.
pub fn is_minimal_stop(ambient: &Ambient, delta: u32, prefix: &[usize]) -> bool {
    let delta = delta as usize;
    let mut degree = vec![0usize; ambient.vertex_count()];
    for &e in prefix {
        for &v in ambient.edge_vertices(e) {
            degree[v] += 1;
        }
    }
    let full_ok = degree.iter().all(|&d| d >= delta);
    let Some(&last) = prefix.last() else {
        return full_ok;
    };
    for &v in ambient.edge_vertices(last) {
        degree[v] -= 1;
    }
    full_ok && degree.iter().any(|&d| d < delta)
}

/// Whether every edge position in `j` appears in the outcome's prefix.
pub fn contains_edges(ambient: &Ambient, outcome: &ProcessOutcome, j: &[usize]) -> Result<bool> {
    ambient.check_edge_indices(j)?;
    ambient.check_edge_indices(&outcome.ordering_prefix)?;
    let mut present = vec![false; ambient.edge_count()];
    for &e in &outcome.ordering_prefix {
        present[e] = true;
    }
    Ok(j.iter().all(|&e| present[e]))
}

/// Exact tallies of per-trial values.
#[derive(Debug, Clone, Default)]
struct Tally {
    sum: BigUint,
    sum_sq: BigUint,
}

impl Tally {
    fn add(&mut self, x: &BigUint) {
        self.sum += x;
        self.sum_sq += x * x;
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.sum += other.sum;
        self.sum_sq += other.sum_sq;
        self
    }
}

/// Splits `0..trials` into `workers` contiguous blocks and runs them in
/// parallel, feeding each stopped prefix to `value`.
fn run_trials<F>(
    ambient: &Ambient,
    params: ThresholdParams,
    trials: u64,
    seed: u64,
    workers: usize,
    value: F,
) -> Result<Tally>
where
    F: Fn(&[usize]) -> Result<BigUint> + Sync,
{
    if trials == 0 {
        return Err(Error::invalid("trials must be at least 1"));
    }
    let workers = workers.max(1) as u64;
    let block = trials.div_ceil(workers);
    (0..workers)
        .into_par_iter()
        .map(|w| {
            let mut sampler = Sampler::new(ambient, params);
            let mut tally = Tally::default();
            let start = (w * block).min(trials);
            let end = ((w + 1) * block).min(trials);
            for t in start..end {
                let k = sampler.run(&mut trial_rng(seed, t));
                tally.add(&value(&sampler.order[..k])?);
            }
            Ok(tally)
        })
        .try_reduce(Tally::default, |a, b| Ok(a.merge(b)))
}

fn default_workers() -> usize {
    rayon::current_num_threads()
}

/// Fraction of trials whose stopped prefix contains every edge of `j`.
pub fn monte_carlo_inclusion(
    ambient: &Ambient,
    delta: u32,
    j: &[usize],
    trials: u64,
    seed: u64,
) -> Result<Estimate> {
    monte_carlo_inclusion_with_workers(ambient, delta, j, trials, seed, default_workers())
}

pub fn monte_carlo_inclusion_with_workers(
    ambient: &Ambient,
    delta: u32,
    j: &[usize],
    trials: u64,
    seed: u64,
    workers: usize,
) -> Result<Estimate> {
    let params = prepare(ambient, delta)?;
    ambient.check_edge_indices(j)?;
    let m = ambient.edge_count();
    let tally = run_trials(ambient, params, trials, seed, workers, |prefix| {
        let mut present = vec![false; m];
        for &e in prefix {
            present[e] = true;
        }
        let hit = j.iter().all(|&e| present[e]);
        Ok(BigUint::from(hit as u8))
    })?;
    Ok(Estimate::from_tallies(
        &tally.sum,
        &tally.sum_sq,
        trials,
        seed,
    ))
}

/// Mean exact count of `target` in the stopped structure.
pub fn monte_carlo_expected_count(
    ambient: &Ambient,
    delta: u32,
    target: Target,
    trials: u64,
    seed: u64,
) -> Result<Estimate> {
    monte_carlo_expected_count_with_workers(ambient, delta, target, trials, seed, default_workers())
}

pub fn monte_carlo_expected_count_with_workers(
    ambient: &Ambient,
    delta: u32,
    target: Target,
    trials: u64,
    seed: u64,
    workers: usize,
) -> Result<Estimate> {
    let params = prepare(ambient, delta)?;
    target.check(ambient)?;
    let tally = run_trials(ambient, params, trials, seed, workers, |prefix| {
        target.count_in(ambient, prefix)
    })?;
    Ok(Estimate::from_tallies(
        &tally.sum,
        &tally.sum_sq,
        trials,
        seed,
    ))
}

/// Empirical statistics of the stopping time.
#[derive(Debug, Clone, PartialEq)]
pub struct StoppingTimeSummary {
    pub mean: f64,
    /// Sample standard deviation (`n - 1` denominator; zero for one trial).
    pub stddev: f64,
    pub histogram: BTreeMap<usize, u64>,
    pub trials: u64,
    pub seed: u64,
}

pub fn stopping_time_summary(
    ambient: &Ambient,
    delta: u32,
    trials: u64,
    seed: u64,
) -> Result<StoppingTimeSummary> {
    let params = prepare(ambient, delta)?;
    if trials == 0 {
        return Err(Error::invalid("trials must be at least 1"));
    }
    let workers = default_workers() as u64;
    let block = trials.div_ceil(workers);
    let histogram = (0..workers)
        .into_par_iter()
        .map(|w| {
            let mut sampler = Sampler::new(ambient, params);
            let mut hist = BTreeMap::new();
            for t in (w * block).min(trials)..((w + 1) * block).min(trials) {
                *hist
                    .entry(sampler.run(&mut trial_rng(seed, t)))
                    .or_insert(0u64) += 1;
            }
            hist
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (k, c) in b {
                *a.entry(k).or_insert(0) += c;
            }
            a
        });
    let mut tally = Tally::default();
    for (&k, &c) in &histogram {
        let k = BigUint::from(k);
        tally.sum += &k * c;
        tally.sum_sq += &k * &k * c;
    }
    let est = Estimate::from_tallies(&tally.sum, &tally.sum_sq, trials, seed);
    let stddev = est.stderr * (trials as f64).sqrt();
    Ok(StoppingTimeSummary {
        mean: est.mean,
        stddev,
        histogram,
        trials,
        seed,
    })
}

/// Upper-tail chi-square helper for uniformity checks: the statistic
/// `Σ (obs - exp)^2 / exp` against equal expected counts.
pub fn chi_square_uniform(observed: &[u64]) -> f64 {
    let total: u64 = observed.iter().sum();
    if observed.is_empty() || total.is_zero() {
        return 0.0;
    }
    let expected = total as f64 / observed.len() as f64;
    observed
        .iter()
        .map(|&o| {
            let diff = o.to_f64().unwrap_or(0.0) - expected;
            diff * diff / expected
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{build_complete, build_complete_bipartite, build_rpartite_hypergraph};

    fn k(n: usize) -> Ambient {
        build_complete(n).unwrap().into()
    }

    #[test]
    fn mix_is_splitmix64() {
        // first outputs of SplitMix64 seeded with 0
        assert_eq!(mix(0), 0xE220_A839_7B1D_CDAF);
        assert_eq!(mix(0x9E37_79B9_7F4A_7C15), 0x6E78_9E6A_A1B9_65F4);
    }

    #[test]
    fn deterministic_stopping_times() {
        for t in 0..50 {
            assert_eq!(run_process(&k(2), 1, 3, t).unwrap().stopping_time(), 1);
            assert_eq!(run_process(&k(3), 2, 3, t).unwrap().stopping_time(), 3);
            assert_eq!(run_process(&k(3), 1, 3, t).unwrap().stopping_time(), 2);
        }
    }

    #[test]
    fn threshold_errors() {
        assert!(matches!(
            run_process(&k(3), 3, 0, 0),
            Err(Error::UnreachableThreshold { .. })
        ));
        assert!(matches!(
            run_process(&k(3), 0, 0, 0),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn outcomes_are_reproducible_and_minimal() {
        let g: Ambient = build_complete_bipartite(5).unwrap().into();
        for t in 0..200 {
            let a = run_process(&g, 1, 11, t).unwrap();
            let b = run_process(&g, 1, 11, t).unwrap();
            assert_eq!(a, b);
            assert!(is_minimal_stop(&g, 1, &a.ordering_prefix));
            let mut sorted = a.ordering_prefix.clone();
            sorted.sort_unstable();
            sorted.dedup();
            assert_eq!(sorted.len(), a.stopping_time());
        }
        let h: Ambient = build_rpartite_hypergraph(3, 3).unwrap().into();
        for t in 0..100 {
            let o = run_process(&h, 2, 5, t).unwrap();
            assert!(is_minimal_stop(&h, 2, &o.ordering_prefix));
        }
    }

    #[test]
    fn contains_edges_cases() {
        let g = k(4);
        let o = run_process(&g, 1, 0, 0).unwrap();
        assert!(contains_edges(&g, &o, &[]).unwrap());
        let all: Vec<usize> = (0..6).collect();
        assert!(o.stopping_time() < 6);
        assert!(!contains_edges(&g, &o, &all).unwrap());
        assert!(contains_edges(&g, &o, &[o.last_edge().unwrap()]).unwrap());
        assert!(contains_edges(&g, &o, &[6]).is_err());
    }

    #[test]
    fn uniform_over_ordered_pairs_in_triangle() {
        // K_3, δ = 1 stops after two distinct edges; the 6 ordered pairs
        // should be equally likely.
        let g = k(3);
        let mut counts = [0u64; 9];
        for t in 0..100_000 {
            let o = run_process(&g, 1, 2024, t).unwrap();
            counts[o.ordering_prefix[0] * 3 + o.ordering_prefix[1]] += 1;
        }
        let observed: Vec<u64> = (0..9)
            .filter(|i| i / 3 != i % 3)
            .map(|i| counts[i])
            .collect();
        assert_eq!(observed.iter().sum::<u64>(), 100_000);
        // 5 degrees of freedom, significance 0.001
        assert!(chi_square_uniform(&observed) < 20.515, "{observed:?}");
    }

    #[test]
    fn estimates_do_not_depend_on_worker_count() {
        let g: Ambient = build_complete_bipartite(3).unwrap().into();
        let target = Target::BipartiteMatchings { left_size: 3 };
        let reference =
            monte_carlo_expected_count_with_workers(&g, 1, target, 5_000, 42, 1).unwrap();
        for workers in [2, 3, 7, 16] {
            let e =
                monte_carlo_expected_count_with_workers(&g, 1, target, 5_000, 42, workers).unwrap();
            assert_eq!(e, reference);
            let i =
                monte_carlo_inclusion_with_workers(&g, 1, &[0, 4, 8], 5_000, 42, workers).unwrap();
            let i1 = monte_carlo_inclusion_with_workers(&g, 1, &[0, 4, 8], 5_000, 42, 1).unwrap();
            assert_eq!(i, i1);
        }
    }

    #[test]
    fn inclusion_estimate_properties() {
        let g = k(3);
        let all = [0, 1, 2];
        let e = monte_carlo_inclusion(&g, 2, &all, 100, 1).unwrap();
        assert_eq!((e.mean, e.stderr), (1.0, 0.0));
        assert!(monte_carlo_inclusion(&g, 2, &all, 0, 1).is_err());

        let k22: Ambient = build_complete_bipartite(2).unwrap().into();
        let e = monte_carlo_inclusion(&k22, 1, &[0, 3], 20_000, 9).unwrap();
        assert!((0.0..=1.0).contains(&e.mean));
        assert!((e.mean - 0.5).abs() <= 4.0 * e.stderr);
        let c = monte_carlo_expected_count(
            &k22,
            1,
            Target::BipartiteMatchings { left_size: 2 },
            20_000,
            9,
        )
        .unwrap();
        assert!(c.mean >= e.mean);
    }

    #[test]
    fn target_checks() {
        let g = k(4);
        assert!(Target::HypergraphMatchings.check(&g).is_err());
        assert!(Target::BipartiteMatchings { left_size: 1 }
            .check(&g)
            .is_err());
        let big = k(17);
        assert!(matches!(
            monte_carlo_expected_count(&big, 2, Target::HamiltonianCycles, 10, 0),
            Err(Error::SizeCap { .. })
        ));
    }

    #[test]
    fn stopping_time_summaries() {
        let s = stopping_time_summary(&k(3), 1, 1000, 4).unwrap();
        assert_eq!(s.mean, 2.0);
        assert_eq!(s.stddev, 0.0);
        assert_eq!(s.histogram.get(&2), Some(&1000));
        let s = stopping_time_summary(&k(2), 1, 17, 4).unwrap();
        assert_eq!(s.mean, 1.0);
        let a = stopping_time_summary(&k(6), 1, 500, 8).unwrap();
        let b = stopping_time_summary(&k(6), 1, 500, 8).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.histogram.values().sum::<u64>(), 500);
    }
}
