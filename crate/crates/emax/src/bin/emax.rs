//! Thin flag-parsing wrapper; all real work lives in `emax::cli`.

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use emax::cli::{self, parse_format, parse_manifold, Command, RunConfig};
use std::path::PathBuf;
use std::process::exit;

#[derive(Parser)]
#[command(
    name = "emax",
    version,
    about = "Hermitian Einstein-Maxwell metrics on ruled surfaces",
    long_about = "Solves the conformal-factor constraint for admissible Kahler classes on \
ruled surfaces, certifies fiber-quadratic positivity exactly, and evaluates \
Einstein-Hilbert values against Yamabe-type bounds.\n\n\
The EMAX_PRECISION_BITS environment variable sets the width (2^-bits) of the \
rational enclosures used when certificates need to approximate irrational \
data; the default is 128."
)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Args)]
struct Common {
    /// Output format: json or csv.
    #[arg(long, default_value = "json")]
    format: String,
    /// Significant decimal digits kept in reported floats.
    #[arg(long, default_value_t = 15)]
    precision: u32,
    /// Write the output body to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Sub {
    /// Solve the first-family constraint for one polarized class.
    Solve {
        /// Genus of the base curve.
        #[arg(long, default_value_t = 0)]
        genus: u32,
        /// Twisting degree of the bundle.
        #[arg(long, default_value_t = 1)]
        degree: u32,
        /// Fiber ratio in (0, 1), as a fraction like 3/5 or a decimal.
        #[arg(long)]
        x: String,
        #[command(flatten)]
        common: Common,
    },
    /// Solve the second-family constraint (rational base, degree 1 twisting).
    Case2 {
        /// Fiber ratio in [4/5, 1), as a fraction or a decimal.
        #[arg(long)]
        x: String,
        #[command(flatten)]
        common: Common,
    },
    /// Existence thresholds x1 < x2 for a base of genus >= 2.
    Thresholds {
        #[arg(long)]
        genus: u32,
        #[arg(long, default_value_t = 1)]
        degree: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Solve across a uniform grid of fiber ratios i/(samples+1).
    Sweep {
        #[arg(long, default_value_t = 0)]
        genus: u32,
        #[arg(long, default_value_t = 1)]
        degree: u32,
        #[arg(long, default_value_t = 1001)]
        samples: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Enumerate solution components below a polarization parameter.
    Moduli {
        /// Bundle type: product or twisted.
        #[arg(long, default_value = "product")]
        manifold: String,
        #[arg(long)]
        genus: u32,
        /// Polarization parameter, e.g. 11/2.
        #[arg(long)]
        p: Option<String>,
        /// Instead of --p: find the smallest half-integer p admitting this
        /// many distinct Einstein-Hilbert values.
        #[arg(long)]
        witness: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Run the internal invariant suite; exits 3 on any failed check.
    Verify {
        /// Fiber-coordinate sampling density for constancy checks.
        #[arg(long, default_value_t = 1001)]
        samples: usize,
        /// Relative tolerance for floating comparisons without a published
        /// tolerance of their own.
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        #[command(flatten)]
        common: Common,
    },
}

fn build(cli: Cli) -> Result<RunConfig, cli::CliError> {
    let mut config = RunConfig::default();
    let common = match cli.command {
        Sub::Solve {
            genus,
            degree,
            x,
            common,
        } => {
            config.command = Command::Solve;
            config.genus = genus;
            config.degree = degree;
            config.x = Some(x);
            common
        }
        Sub::Case2 { x, common } => {
            config.command = Command::Case2;
            config.genus = 0;
            config.degree = 1;
            config.x = Some(x);
            common
        }
        Sub::Thresholds {
            genus,
            degree,
            common,
        } => {
            config.command = Command::Thresholds;
            config.genus = genus;
            config.degree = degree;
            common
        }
        Sub::Sweep {
            genus,
            degree,
            samples,
            common,
        } => {
            config.command = Command::Sweep;
            config.genus = genus;
            config.degree = degree;
            config.samples = samples;
            common
        }
        Sub::Moduli {
            manifold,
            genus,
            p,
            witness,
            common,
        } => {
            config.command = Command::Moduli;
            config.manifold = parse_manifold(&manifold)?;
            config.genus = genus;
            config.p = p;
            config.witness = witness;
            common
        }
        Sub::Verify {
            samples,
            tol,
            common,
        } => {
            config.command = Command::Verify;
            config.samples = samples;
            config.tol = tol;
            common
        }
    };
    config.format = parse_format(&common.format)?;
    config.precision = common.precision;
    config.out = common.out;
    Ok(config)
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => cli::EXIT_USAGE,
            };
            let _ = e.print();
            exit(code);
        }
    };
    match build(cli) {
        Ok(config) => exit(cli::execute(&config)),
        Err(e) => {
            eprintln!("error: {e}");
            exit(e.exit_code());
        }
    }
}
