//! Domain types: graphs, hypergraphs, exact rationals, process parameters and
//! results, plus builders and file ingestion.

pub mod build;
mod graph;
mod hypergraph;
pub mod parse;
pub mod rational;

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::Zero;

pub use build::{
    build_complete, build_complete_bipartite, build_complete_hypergraph, build_cycle, build_path,
    build_rpartite_hypergraph,
};
pub use graph::Graph;
pub use hypergraph::UniformHypergraph;
pub use parse::{parse_ambient, parse_graph, parse_hypergraph};
pub use rational::ExactRational;

use crate::error::{Error, Result};

/// The structure whose edges the process orders: a graph or a uniform
/// hypergraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Ambient {
    Graph(Graph),
    Hypergraph(UniformHypergraph),
}

impl Ambient {
    pub fn vertex_count(&self) -> usize {
        match self {
            Ambient::Graph(g) => g.vertex_count(),
            Ambient::Hypergraph(h) => h.vertex_count(),
        }
    }

    pub fn edge_count(&self) -> usize {
        match self {
            Ambient::Graph(g) => g.edge_count(),
            Ambient::Hypergraph(h) => h.edge_count(),
        }
    }

    pub fn edge_vertices(&self, index: usize) -> &[usize] {
        match self {
            Ambient::Graph(g) => &g.edges()[index][..],
            Ambient::Hypergraph(h) => h.edge(index),
        }
    }

    pub fn degrees(&self) -> Vec<usize> {
        match self {
            Ambient::Graph(g) => g.degrees(),
            Ambient::Hypergraph(h) => h.degrees(),
        }
    }

    pub fn min_degree(&self) -> usize {
        self.degrees().into_iter().min().unwrap_or(0)
    }

    /// Rejects thresholds the process can never reach on this ambient.
    pub fn check_threshold(&self, params: ThresholdParams) -> Result<()> {
        let min_degree = self.min_degree();
        if params.delta as usize > min_degree {
            return Err(Error::UnreachableThreshold {
                delta: params.delta,
                min_degree,
            });
        }
        Ok(())
    }

    pub fn as_graph(&self) -> Option<&Graph> {
        match self {
            Ambient::Graph(g) => Some(g),
            Ambient::Hypergraph(_) => None,
        }
    }

    pub fn as_hypergraph(&self) -> Option<&UniformHypergraph> {
        match self {
            Ambient::Graph(_) => None,
            Ambient::Hypergraph(h) => Some(h),
        }
    }

    pub(crate) fn check_edge_indices(&self, edges: &[usize]) -> Result<()> {
        match edges.iter().find(|&&e| e >= self.edge_count()) {
            Some(bad) => Err(Error::invalid(format!(
                "edge index {bad} out of range for {} edges",
                self.edge_count()
            ))),
            None => Ok(()),
        }
    }
}

impl From<Graph> for Ambient {
    fn from(g: Graph) -> Self {
        Ambient::Graph(g)
    }
}

impl From<UniformHypergraph> for Ambient {
    fn from(h: UniformHypergraph) -> Self {
        Ambient::Hypergraph(h)
    }
}

/// The stopping threshold δ ≥ 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ThresholdParams {
    pub delta: u32,
}

impl ThresholdParams {
    pub fn new(delta: u32) -> Result<Self> {
        if delta == 0 {
            return Err(Error::invalid("δ must be at least 1"));
        }
        Ok(ThresholdParams { delta })
    }
}

/// Validated `(E, h, Δ)` triple for the per-stopping-time decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FormulaInputs {
    pub edge_total: u64,
    pub h: u64,
    pub big_delta: u64,
}

impl FormulaInputs {
    pub fn new(edge_total: u64, h: u64, big_delta: u64) -> Result<Self> {
        if h == 0 {
            return Err(Error::invalid("h must be at least 1"));
        }
        if h > edge_total {
            return Err(Error::invalid(format!(
                "h={h} exceeds the edge total E={edge_total}"
            )));
        }
        Ok(FormulaInputs {
            edge_total,
            h,
            big_delta,
        })
    }

    pub fn k_range(&self) -> std::ops::RangeInclusive<u64> {
        self.h..=self.edge_total
    }
}

/// One realization of the process: the ordering up to and including the
/// stopping step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProcessOutcome {
    pub ordering_prefix: Vec<usize>,
}

impl ProcessOutcome {
    pub fn stopping_time(&self) -> usize {
        self.ordering_prefix.len()
    }

    pub fn last_edge(&self) -> Option<usize> {
        self.ordering_prefix.last().copied()
    }
}

/// Monte Carlo mean with its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub mean: f64,
    pub stderr: f64,
    pub trials: u64,
    pub seed: u64,
}

impl Estimate {
    /// Builds the estimate from exact tallies of the per-trial values and
    /// their squares. The standard error uses the `n - 1` sample deviation.
    pub fn from_tallies(sum: &BigUint, sum_sq: &BigUint, trials: u64, seed: u64) -> Self {
        let n = BigUint::from(trials);
        let mean = rational::to_f64(&ExactRational::new(sum.clone().into(), n.clone().into()));
        let stderr = if trials < 2 {
            0.0
        } else {
            // n * sum_sq - sum^2 is exact and nonnegative
            let numer = &n * sum_sq - sum * sum;
            let denom = &n * &n * BigUint::from(trials - 1);
            let var_of_mean = ExactRational::new(numer.into(), (denom).into());
            let var_of_mean = rational::to_f64(&var_of_mean);
            var_of_mean.max(0.0).sqrt()
        };
        Estimate {
            mean,
            stderr,
            trials,
            seed,
        }
    }

    /// `(mean - exact) / stderr`; zero when both the error and the
    /// deviation vanish, infinite when only the error vanishes.
    pub fn z_score(&self, exact: f64) -> f64 {
        let diff = self.mean - exact;
        if self.stderr > 0.0 {
            diff / self.stderr
        } else if diff == 0.0 {
            0.0
        } else {
            diff.signum() * f64::INFINITY
        }
    }
}

/// Probability mass indexed by stopping time `k`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct KDistribution {
    masses: BTreeMap<u64, ExactRational>,
}

impl KDistribution {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, k: u64, mass: ExactRational) {
        self.masses.insert(k, mass);
    }

    /// Mass at `k`, zero when absent.
    pub fn get(&self, k: u64) -> ExactRational {
        self.masses
            .get(&k)
            .cloned()
            .unwrap_or_else(ExactRational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, &ExactRational)> {
        self.masses.iter().map(|(&k, q)| (k, q))
    }

    pub fn len(&self) -> usize {
        self.masses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masses.is_empty()
    }

    pub fn total(&self) -> ExactRational {
        self.masses.values().sum()
    }

    /// Smallest `k` whose mass is maximal.
    pub fn argmax(&self) -> Option<u64> {
        let mut best: Option<(u64, &ExactRational)> = None;
        for (&k, q) in &self.masses {
            if best.is_none_or(|(_, b)| q > b) {
                best = Some((k, q));
            }
        }
        best.map(|(k, _)| k)
    }

    /// Equal as functions of `k`, treating missing entries as zero.
    pub fn same_masses(&self, other: &KDistribution) -> bool {
        self.masses
            .keys()
            .chain(other.masses.keys())
            .all(|&k| self.get(k) == other.get(k))
    }
}
