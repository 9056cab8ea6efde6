//! `mindeg`: evaluate, simulate, tabulate and self-check expectations for the
//! minimum-degree random graph process.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error, 3 domain
//! precondition violation.

mod commands;
mod report;
mod spec;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use crate::commands::CliError;

#[derive(Parser, Debug)]
#[command(name = "mindeg", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate a closed form exactly.
    Eval {
        #[command(subcommand)]
        which: EvalTarget,
    },
    /// Run the process repeatedly and estimate an expectation.
    Simulate(SimulateArgs),
    /// Tabulate the per-stopping-time contributions for (E, h, Δ).
    Distribution(DistributionArgs),
    /// Run the self-check suite.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::Small)]
        suite: SuiteArg,
    },
}

#[derive(Subcommand, Debug)]
pub enum EvalTarget {
    /// 2/C(h+Δ,h) - 1/C(h+2Δ,h); or pass --graph/--pattern/--delta to derive h and Δ.
    Thm1 {
        #[arg(long, required_unless_present = "graph")]
        h: Option<u64>,
        #[arg(long = "delta-big", required_unless_present = "graph")]
        delta_big: Option<u64>,
        #[arg(long, requires_all = ["pattern", "delta"], conflicts_with_all = ["h", "delta_big"])]
        graph: Option<String>,
        #[arg(long)]
        pattern: Option<String>,
        #[arg(long)]
        delta: Option<u32>,
    },
    /// Expected perfect matchings in the stopped subgraph of K_{n,n}.
    Cor1 {
        #[arg(long)]
        n: u64,
    },
    /// Fraction of perfect matchings of a d-regular graph on 2n vertices.
    Cor2 {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        d: u64,
    },
    /// Fraction of Hamiltonian cycles of a d-regular graph on n vertices.
    Cor3 {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        d: u64,
    },
    /// Expected matchings, complete r-partite hypergraph.
    Thm2 {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        r: u64,
    },
    /// Expected matchings, complete r-uniform hypergraph on rn vertices.
    Thm3 {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        r: u64,
    },
    /// Expected copies of a δ-regular pattern in an arbitrary graph.
    Remark {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        delta: u32,
    },
    /// Exact probability that one given spanning subgraph survives.
    General {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        copy: String,
        #[arg(long)]
        delta: u32,
    },
}

#[derive(clap::Args, Debug)]
pub struct SimulateArgs {
    /// knn:N, kn:N, rpartite:N:R, krn:N:R, or a graph/hypergraph file.
    pub ambient: String,
    #[arg(long)]
    pub delta: u32,
    #[arg(long, value_enum)]
    pub target: TargetArg,
    #[arg(long, default_value_t = 10_000)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Edge positions for --target inclusion: `all` or a comma list.
    #[arg(long = "J", alias = "j")]
    pub j: Option<String>,
    /// Left part size for bipartite matchings (defaults to half the vertices).
    #[arg(long)]
    pub left_size: Option<usize>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum TargetArg {
    Inclusion,
    BipartiteMatchings,
    PerfectMatchings,
    HamiltonianCycles,
    HypergraphMatchings,
    StoppingTime,
}

#[derive(clap::Args, Debug)]
pub struct DistributionArgs {
    #[arg(long = "edge-total")]
    pub edge_total: u64,
    #[arg(long)]
    pub h: u64,
    #[arg(long = "delta-big")]
    pub delta_big: u64,
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    pub format: FormatArg,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormatArg {
    Csv,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum SuiteArg {
    Small,
    Full,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Eval { which } => commands::eval(which),
        Command::Simulate(args) => commands::simulate(args),
        Command::Distribution(args) => commands::distribution(args),
        Command::Verify { suite } => commands::verify(match suite {
            SuiteArg::Small => mindeg_core::verify::Suite::Small,
            SuiteArg::Full => mindeg_core::verify::Suite::Full,
        }),
    };
    match result {
        Ok(stdout) => {
            print!("{stdout}");
            ExitCode::SUCCESS
        }
        Err(CliError {
            code,
            message,
            stdout,
        }) => {
            if let Some(out) = stdout {
                print!("{out}");
            }
            eprintln!("mindeg: {message}");
            ExitCode::from(code)
        }
    }
}
