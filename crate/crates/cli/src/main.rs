mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use config::Format;

/// Poincaré series of plane branches and the point counts that check them.
#[derive(Parser, Debug)]
#[command(name = "poincare", version)]
pub struct Cli {
    /// JSON file with default settings (format, n_max, primes, budget, threads, window, depth).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub cmd: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Prints the characteristic sequence and both Poincaré series with their poles.
    Branch {
        /// Branch JSON file, or the JSON itself.
        #[arg(long)]
        branch: String,
        /// Collapse each series to a single reduced fraction.
        #[arg(long)]
        normalize: bool,
    },
    /// Point counts for a branch or an integer polynomial system.
    Count(CountArgs),
    /// Quantifier elimination and weighted sums over Presburger sets.
    Presburger {
        #[command(subcommand)]
        op: PresburgerOp,
    },
    /// Igusa series of a monomial, optionally against exact volumes.
    Igusa {
        #[arg(long, value_delimiter = ',', required = true)]
        k: Vec<u32>,
        #[arg(short = 'p', long = "primes", value_delimiter = ',')]
        primes: Vec<u64>,
        #[arg(long)]
        n_max: Option<u32>,
    },
    /// Runs a verification plan; exit 0 pass, 2 fail, 3 uncertified.
    Verify {
        #[arg(long)]
        plan: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CountMethod {
    Exhaustive,
    Window,
    Orbit,
    Geometric,
}

#[derive(Args, Debug)]
pub struct CountArgs {
    /// Branch JSON file, or the JSON itself.
    #[arg(long, conflicts_with = "poly")]
    pub branch: Option<String>,
    /// Polynomial in x1, x2, ...; repeat for a system.
    #[arg(long)]
    pub poly: Vec<String>,
    /// Restrict to residues reducing to the origin.
    #[arg(long)]
    pub origin: bool,
    #[arg(long)]
    pub nvars: Option<usize>,
    #[arg(short = 'p', long = "prime")]
    pub p: Option<u64>,
    /// Extension degree of the residue field for branch counts.
    #[arg(long = "ext-degree", visible_alias = "degree", default_value_t = 1)]
    pub degree: u32,
    #[arg(long)]
    pub n_max: Option<u32>,
    /// Lifting depth for polynomial counts; `2n + 2` when absent.
    #[arg(long)]
    pub depth: Option<u32>,
    /// Enumerate only the validated window of each stratum.
    #[arg(long, conflicts_with = "no_window")]
    pub window: bool,
    /// Override a config-file `window: true`.
    #[arg(long)]
    pub no_window: bool,
    #[arg(long, value_enum)]
    pub method: Option<CountMethod>,
    #[arg(long)]
    pub budget: Option<u64>,
    /// Zero the per-row timings so output is byte-reproducible.
    #[arg(long)]
    pub no_timing: bool,
}

#[derive(Subcommand, Debug)]
pub enum PresburgerOp {
    /// Prints an equivalent quantifier-free formula.
    Qe { formula: String },
    /// Sums L^(-lweight) T^(tweight) over the set.
    Sum {
        #[arg(long)]
        set: String,
        #[arg(long, default_value = "0")]
        tweight: String,
        #[arg(long, default_value = "0")]
        lweight: String,
        /// Summation order, outermost first; defaults to order of appearance.
        #[arg(long, value_delimiter = ',')]
        order: Vec<String>,
    },
    /// Membership of a point (one value per free variable).
    Check {
        formula: String,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        point: Vec<i64>,
        /// Free variable order; defaults to order of appearance.
        #[arg(long, value_delimiter = ',')]
        vars: Vec<String>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => e.exit(),
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    match commands::run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
