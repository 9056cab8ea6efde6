//! Exact expectations for subgraph counts in the random process that adds
//! edges of an ambient graph (or uniform hypergraph) in uniformly random
//! order and stops as soon as every vertex has degree at least δ.
//!
//! The crate is organised around four independent routes to the same
//! numbers:
//!
//! * [`formulas`] evaluates the closed forms over exact rationals;
//! * [`oracle`] enumerates every ordering of a tiny ambient edge set;
//! * [`process`] samples the process and reports Monte Carlo estimates;
//! * [`counting`] supplies exact target counters used to scale fractions
//!   into expected counts and to count targets inside sampled graphs.
//!
//! [`verify`] strings these together into a self-check suite.

pub mod counting;
pub mod error;
pub mod formulas;
pub mod model;
pub mod oracle;
pub mod process;
pub mod verify;

pub use error::{Error, Result};
pub use model::{
    Ambient, Estimate, ExactRational, FormulaInputs, Graph, KDistribution, ProcessOutcome,
    ThresholdParams, UniformHypergraph,
};
