use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "cg3", version, about = "Exact gl3 Clebsch-Gordan coefficients in the Gelfand-Tsetlin basis")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the highest-vector labels of a tensor product with their weights.
    Decompose {
        #[arg(long, value_parser = parse_pair)]
        w1: [i64; 2],
        #[arg(long, value_parser = parse_pair)]
        w2: [i64; 2],
        #[arg(long, value_enum, default_value_t = Format::Pretty)]
        format: Format,
    },
    /// Expand Gelfand-Tsetlin vectors of the summands in the product basis.
    Cg {
        #[arg(long, value_parser = parse_pair)]
        w1: [i64; 2],
        #[arg(long, value_parser = parse_pair)]
        w2: [i64; 2],
        /// Label selector `type,omega,phi,psi,theta`; all labels when omitted.
        #[arg(long, value_parser = parse_selector)]
        label: Option<[i64; 5]>,
        /// Descent `T1,T2,S`; all valid descents when omitted.
        #[arg(long, value_parser = parse_descent)]
        descent: Option<[i64; 3]>,
        #[arg(long, value_enum, default_value_t = Mode::Both)]
        mode: Mode,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Run the verification suites up to a weight bound.
    Verify {
        #[arg(long, default_value_t = 2)]
        max_weight: i64,
        /// Run a single suite; the default runs every suite expected to pass.
        #[arg(long, value_enum)]
        suite: Option<Suite>,
    },
    /// Write the full coefficient table for all labels and descents.
    Table {
        #[arg(long, value_parser = parse_pair)]
        w1: [i64; 2],
        #[arg(long, value_parser = parse_pair)]
        w2: [i64; 2],
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = TableFormat::Json)]
        format: TableFormat,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Formula,
    Oracle,
    Both,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Formula => "formula",
            Mode::Oracle => "oracle",
            Mode::Both => "both",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Gamma,
    Model,
    Highest,
    Relations,
    Cg,
    /// The type-2 sign-rule comparison; known to report counterexamples.
    Sign,
    /// Literal and adopted formula readings against the oracle.
    Readings,
}

fn parse_ints<const N: usize>(s: &str) -> Result<[i64; N], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != N {
        return Err(format!("expected {N} comma-separated integers, got {s:?}"));
    }
    let mut out = [0; N];
    for (slot, p) in out.iter_mut().zip(parts) {
        *slot = p.parse().map_err(|_| format!("not an integer: {p:?}"))?;
    }
    Ok(out)
}

fn parse_pair(s: &str) -> Result<[i64; 2], String> {
    parse_ints::<2>(s)
}

fn parse_selector(s: &str) -> Result<[i64; 5], String> {
    parse_ints::<5>(s)
}

fn parse_descent(s: &str) -> Result<[i64; 3], String> {
    parse_ints::<3>(s)
}
