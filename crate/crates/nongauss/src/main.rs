//! Command-line experiment runner. Exit codes: 0 on success, 1 when a
//! certified inequality is violated (or a numerical stage fails), 2 on
//! usage or parse errors.

use clap::{Parser, Subcommand, ValueEnum};
use nongauss::cli::{self, ExperimentConfig, OutputFormat};
use nongauss::kink::KinkParameters;
use nongauss::{Error, Result};
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "nongauss",
    version,
    about = "Fermionic non-Gaussianity, charge statistics, and certified bounds"
)]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Csv => OutputFormat::Csv,
            Format::Json => OutputFormat::Json,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Sweep the kink family at fixed N: asymmetry, exact non-Gaussianity,
    /// and the closed-form lower bound, one row per width R. With --out,
    /// also writes plot-ready `.ng.dat` / `.bound.dat` companions.
    Fig1 {
        /// Number of modes.
        #[arg(long)]
        n: usize,
        /// Output file (stdout when absent; plot files need a path).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads for the sweep (0 = all cores).
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Soundness sweep: evaluate every inequality on seeded random Gaussian
    /// states and report one row per (state, bound). Exit 1 on any violation.
    Audit {
        /// Number of modes per sampled state.
        #[arg(long)]
        n: usize,
        /// Number of sampled states.
        #[arg(long, default_value_t = 20)]
        samples: usize,
        /// Base seed; state k uses seed + k.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Worker threads (0 = all cores).
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Full counting statistics of one Gaussian state: the (t, chi) table,
    /// the deduplicated spectrum, and the charge distribution by both
    /// inversion routes with their total-variation gap.
    Fcs {
        /// Number of modes for the sampler (not needed with --gamma).
        #[arg(long, required_unless_present = "gamma")]
        n: Option<usize>,
        /// Sampler seed.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Sampler inverse temperature ("inf" for a ground state).
        #[arg(long)]
        beta: Option<f64>,
        /// Import a correlation matrix from the plain-text format instead
        /// of sampling.
        #[arg(long)]
        gamma: Option<PathBuf>,
        /// Export the state's correlation matrix in the plain-text format.
        #[arg(long)]
        dump_gamma: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Evaluate every applicable inequality for one state across an alpha
    /// grid, reporting lhs/rhs/slack/holds per bound.
    Bounds {
        /// Number of modes (not needed with --gamma).
        #[arg(long, required_unless_present = "gamma")]
        n: Option<usize>,
        /// Evaluate the kink state of width --r (or exponent --beta).
        #[arg(long)]
        kink: bool,
        /// Kink width R.
        #[arg(long)]
        r: Option<usize>,
        /// With --kink: exponent b for R = floor(N^b); otherwise the
        /// sampler inverse temperature.
        #[arg(long)]
        beta: Option<f64>,
        /// Import a correlation matrix instead of sampling.
        #[arg(long)]
        gamma: Option<PathBuf>,
        /// Window parameter grid (repeatable), default 1/8.
        #[arg(long = "alpha")]
        alpha: Vec<f64>,
        /// Sampler seed.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
}

fn run(args: Args) -> Result<bool> {
    match args.command {
        Command::Fig1 {
            n,
            out,
            jobs,
            format,
        } => {
            let config = ExperimentConfig {
                n_modes: n,
                out,
                jobs,
                format: format.into(),
                ..Default::default()
            };
            cli::cmd_fig1(&config)
        }
        Command::Audit {
            n,
            samples,
            seed,
            jobs,
            out,
            format,
        } => {
            let config = ExperimentConfig {
                n_modes: n,
                samples,
                seed,
                jobs,
                out,
                format: format.into(),
                ..Default::default()
            };
            cli::cmd_audit(&config)
        }
        Command::Fcs {
            n,
            seed,
            beta,
            gamma,
            dump_gamma,
            out,
            format,
        } => {
            let config = ExperimentConfig {
                n_modes: n.unwrap_or(0),
                seed,
                beta,
                gamma_file: gamma,
                dump_gamma,
                out,
                format: format.into(),
                ..Default::default()
            };
            cli::cmd_fcs(&config)?;
            Ok(true)
        }
        Command::Bounds {
            n,
            kink,
            r,
            beta,
            gamma,
            alpha,
            seed,
            out,
            format,
        } => {
            let n_modes = n.unwrap_or(0);
            let r = match (kink, r, beta) {
                (true, None, Some(exponent)) => {
                    Some(KinkParameters::with_exponent(n_modes, exponent)?.r())
                }
                _ => r,
            };
            let config = ExperimentConfig {
                n_modes,
                r,
                beta,
                kink,
                gamma_file: gamma,
                alpha_grid: if alpha.is_empty() { vec![0.125] } else { alpha },
                seed,
                out,
                format: format.into(),
                ..Default::default()
            };
            cli::cmd_bounds(&config)
        }
    }
}

fn main() {
    let args = Args::parse();
    let code = match run(args) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                Error::Parse(_) | Error::Argument(_) => 2,
                _ => 1,
            }
        }
    };
    std::process::exit(code);
}
