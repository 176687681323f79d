//! `mertens` — deterministic number-theory tooling around the Möbius
//! function: cached sieves, sign-frequency tables, prime-divisor statistics,
//! seeded random-walk ensembles, and growth diagnostics for the partial sums.
//!
//! Exit codes: 0 success; 2 invalid usage or config; 3 domain/bounds/budget
//! error; 4 a tolerance check failed (`report`); 5 I/O failure.

mod commands;
mod config;
mod output;

use clap::{Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

/// Errors surfaced to the user, each with a documented exit code.
#[derive(Debug)]
pub enum CliError {
    /// Invalid configuration or flag combination (exit 2).
    Config(String),
    /// Error from the computation layer (exit 3, or 5 for I/O).
    Core(mertens_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Core(mertens_core::Error::Io(_)) => 5,
            CliError::Core(mertens_core::Error::CacheFormat(_)) => 5,
            CliError::Core(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(msg) => write!(f, "{msg}"),
            CliError::Core(err) => write!(f, "{err}"),
        }
    }
}

impl From<mertens_core::Error> for CliError {
    fn from(err: mertens_core::Error) -> Self {
        CliError::Core(err)
    }
}

#[derive(Parser)]
#[command(
    name = "mertens",
    version,
    about = "Möbius/Mertens sieves, distribution tables, walk ensembles, growth diagnostics",
    long_about = "Deterministic tooling around the Möbius function and its partial sums.\n\
                  All outputs are CSV (comma-separated, LF, header row, 12 significant \n\
                  digits) and byte-identical across reruns with the same parameters.\n\n\
                  Exit codes: 0 success; 2 invalid usage or config; 3 domain/bounds/budget \n\
                  error; 4 a tolerance check failed (report); 5 I/O failure."
)]
struct Cli {
    /// JSON file with default parameter values; explicit flags override it.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

/// Step-law schedule for walk simulations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    /// Every step uses the limiting law (p, p, 1-2p) with p = 3/pi^2.
    Asymptotic,
    /// Step n uses the Möbius sign frequencies over [1, n].
    Empirical,
    /// Every step uses the sign frequencies at the walk's own horizon.
    EmpiricalFixed,
}

#[derive(Subcommand)]
enum Command {
    /// Build (or reuse) a cached Möbius table and print its summary.
    Sieve {
        /// Sieve limit.
        #[arg(long)]
        limit: Option<u64>,
        /// Directory holding cache files (created if missing).
        #[arg(long, value_name = "DIR")]
        cache_dir: Option<PathBuf>,
    },
    /// Sign-frequency table (nu1, nu2, nu3, Mertens value, CDF distance) at checkpoints.
    Freq {
        #[arg(long)]
        limit: Option<u64>,
        /// Comma-separated checkpoint list, e.g. 1000,10000.
        #[arg(long, value_delimiter = ',')]
        checkpoints: Option<Vec<u64>>,
        /// Output directory for CSV files.
        #[arg(long, value_name = "DIR")]
        out: Option<PathBuf>,
        #[arg(long, value_name = "DIR")]
        cache_dir: Option<PathBuf>,
    },
    /// Prime-divisor-count statistics: frequency tables and normality distances.
    Omega {
        #[arg(long)]
        limit: Option<u64>,
        #[arg(long, value_delimiter = ',')]
        checkpoints: Option<Vec<u64>>,
        #[arg(long, value_name = "DIR")]
        out: Option<PathBuf>,
        #[arg(long, value_name = "DIR")]
        cache_dir: Option<PathBuf>,
    },
    /// Seeded random-walk ensemble; per-replicate and per-checkpoint CSVs.
    Walk {
        /// Steps per replicate.
        #[arg(long)]
        steps: Option<u64>,
        /// Number of replicates.
        #[arg(long)]
        replicates: Option<u64>,
        /// Master seed; replicate seeds are derived deterministically.
        #[arg(long)]
        seed: Option<u64>,
        /// Step-law schedule.
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        /// Sieve limit for the empirical modes (defaults to --steps).
        #[arg(long)]
        limit: Option<u64>,
        #[arg(long, value_delimiter = ',')]
        checkpoints: Option<Vec<u64>>,
        /// First index entering the iterated-logarithm statistic.
        #[arg(long)]
        lil_n0: Option<u64>,
        #[arg(long, value_name = "DIR")]
        out: Option<PathBuf>,
        #[arg(long, value_name = "DIR")]
        cache_dir: Option<PathBuf>,
    },
    /// Growth diagnostics: normalized ratio table, strict bound scan, model comparison.
    Bounds {
        #[arg(long)]
        limit: Option<u64>,
        #[arg(long, value_delimiter = ',')]
        checkpoints: Option<Vec<u64>>,
        /// Exponent offset for the n^(1/2+xi) denominator.
        #[arg(long)]
        xi: Option<f64>,
        /// Replicates for the comparison ensemble.
        #[arg(long)]
        replicates: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_name = "DIR")]
        out: Option<PathBuf>,
        #[arg(long, value_name = "DIR")]
        cache_dir: Option<PathBuf>,
    },
    /// Full pipeline: every CSV plus a plain-text pass/fail summary.
    Report {
        #[arg(long)]
        limit: Option<u64>,
        #[arg(long)]
        steps: Option<u64>,
        #[arg(long)]
        replicates: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        xi: Option<f64>,
        #[arg(long, value_name = "DIR")]
        out: Option<PathBuf>,
        #[arg(long, value_name = "DIR")]
        cache_dir: Option<PathBuf>,
    },
}

fn main() {
    let cli = Cli::parse();
    let file_config = match config::load(cli.config.as_deref()) {
        Ok(cfg) => cfg,
        Err(err) => {
            eprintln!("error: {err}");
            std::process::exit(err.exit_code());
        }
    };
    let result = match cli.command {
        Command::Sieve { limit, cache_dir } => commands::cmd_sieve(limit, cache_dir, &file_config),
        Command::Freq {
            limit,
            checkpoints,
            out,
            cache_dir,
        } => commands::cmd_freq(limit, checkpoints, out, cache_dir, &file_config),
        Command::Omega {
            limit,
            checkpoints,
            out,
            cache_dir,
        } => commands::cmd_omega(limit, checkpoints, out, cache_dir, &file_config),
        Command::Walk {
            steps,
            replicates,
            seed,
            mode,
            limit,
            checkpoints,
            lil_n0,
            out,
            cache_dir,
        } => commands::cmd_walk(
            commands::WalkArgs {
                steps,
                replicates,
                seed,
                mode,
                limit,
                checkpoints,
                lil_n0,
                out,
                cache_dir,
            },
            &file_config,
        ),
        Command::Bounds {
            limit,
            checkpoints,
            xi,
            replicates,
            seed,
            out,
            cache_dir,
        } => commands::cmd_bounds(
            commands::BoundsArgs {
                limit,
                checkpoints,
                xi,
                replicates,
                seed,
                out,
                cache_dir,
            },
            &file_config,
        ),
        Command::Report {
            limit,
            steps,
            replicates,
            seed,
            xi,
            out,
            cache_dir,
        } => commands::cmd_report(
            commands::ReportArgs {
                limit,
                steps,
                replicates,
                seed,
                xi,
                out,
                cache_dir,
            },
            &file_config,
        ),
    };
    match result {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("error: {err}");
            std::process::exit(err.exit_code());
        }
    }
}
