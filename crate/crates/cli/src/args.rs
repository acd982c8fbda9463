use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "qkernel", version, about = "Interaction-kernel tools for the N-Queens problem")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Board side length L.
    #[arg(short = 'L', long = "size", global = true)]
    pub size: Option<usize>,

    /// Output file (or directory for `figures`).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Output format; meaning depends on the subcommand.
    #[arg(long, global = true)]
    pub format: Option<String>,

    /// Read and print cell indices counting from 1.
    #[arg(long = "one-based", global = true)]
    pub one_based: bool,

    /// Seed for randomized sweeps.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the interaction kernel and export it (pbm, csv or json spectrum).
    Kernel {
        /// Also compute the eigenvalue spectrum.
        #[arg(long)]
        spectrum: bool,
        /// Also export per-row bit sums and the min/max sweep over board sizes.
        #[arg(long)]
        bitsums: bool,
    },
    /// Classify a board given as text or JSON, or sweep random boards.
    Classify {
        /// Board file; `-` reads standard input.
        input: Option<PathBuf>,
        /// Instead of reading a board, classify this many random L-queen boards.
        #[arg(long)]
        random: Option<usize>,
    },
    /// Enumerate all solutions.
    Solve {
        #[arg(long, value_enum, default_value_t = Method::Dyadic)]
        method: Method,
    },
    /// Characteristic sequences σ of the kernel rows.
    Sigma,
    /// Operator table of a pointwise logical operation.
    Fractal {
        #[arg(long, default_value = "or")]
        op: String,
        #[arg(long, default_value_t = 8)]
        bits: usize,
    },
    /// Backtracking reference enumeration.
    Oracle {
        /// Print only total and fundamental counts.
        #[arg(long)]
        counts: bool,
    },
    /// Regenerate all figures into the output directory.
    Figures,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// AND-propagation over complemented kernel rows.
    Dyadic,
    /// Plain backtracking.
    Oracle,
    /// Both, with a set-equality check.
    Both,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Dyadic => "dyadic",
            Method::Oracle => "oracle",
            Method::Both => "both",
        }
    }
}
