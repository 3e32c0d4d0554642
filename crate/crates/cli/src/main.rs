mod commands;
mod config;
mod error;
mod format;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{parse_axis, parse_family, parse_plane, PolynomialKind};
use config::{resolve, ConfigFile};
use error::CliError;
use mbell_core::uniqueness::Axis;

const FAMILIES: [&str; 4] = ["psi4", "phi4", "phi4b", "six"];
const PLANES: [&str; 3] = ["xy", "zy", "xz"];

/// Quantum Minority game payoffs and MABK Bell violations.
#[derive(Debug, Parser)]
#[command(name = "mbell", version)]
struct Cli {
    /// Flat key = value file; command-line flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Payoff and violation curves over an alpha grid, written as CSV.
    Sweep {
        #[arg(long, value_parser = FAMILIES)]
        family: Option<String>,
        /// Number of alpha values in [0, 1], at least 2 (default 101).
        #[arg(long)]
        steps: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Best symmetric strategy at one alpha.
    Optimize {
        #[arg(long, value_parser = FAMILIES)]
        family: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<f64>,
    },
    /// Bell polynomial values at the Werner scheme and at the best scheme.
    Bell {
        #[arg(long, value_parser = FAMILIES)]
        family: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<f64>,
        #[arg(long, value_parser = PLANES)]
        plane: Option<String>,
        #[arg(long, value_parser = ["mabk", "payoff"])]
        polynomial: Option<String>,
    },
    /// Which payoff tables survive each Pauli-axis elimination.
    Uniqueness {
        #[arg(long, value_parser = ["z", "x", "y"])]
        axis: Option<String>,
    },
}

fn run(cli: Cli) -> Result<String, CliError> {
    let file = match &cli.config {
        Some(path) => ConfigFile::load(path)?,
        None => ConfigFile::default(),
    };
    let family = |flag: Option<String>| -> Result<_, CliError> {
        let name = resolve(flag, &file, "family", Some("psi4".to_string()))?.unwrap();
        parse_family(&name)
    };
    let alpha = |flag: Option<f64>| -> Result<f64, CliError> {
        resolve(flag, &file, "alpha", None)?.ok_or(CliError::Missing("--alpha"))
    };
    match cli.command {
        Command::Sweep {
            family: f,
            steps,
            out,
        } => {
            let steps = resolve(steps, &file, "steps", Some(101))?.unwrap();
            let out: PathBuf = resolve(out, &file, "out", None)?.ok_or(CliError::Missing("--out"))?;
            commands::sweep(family(f)?, steps, &out)
        }
        Command::Optimize { family: f, alpha: a } => commands::optimize(family(f)?, alpha(a)?),
        Command::Bell {
            family: f,
            alpha: a,
            plane,
            polynomial,
        } => {
            let plane = resolve(plane, &file, "plane", Some("xy".to_string()))?.unwrap();
            let poly = resolve(polynomial, &file, "polynomial", Some("mabk".to_string()))?.unwrap();
            commands::bell(
                family(f)?,
                alpha(a)?,
                parse_plane(&plane)?,
                PolynomialKind::parse(&poly)?,
            )
        }
        Command::Uniqueness { axis } => {
            let axes = match resolve::<String>(axis, &file, "axis", None)? {
                Some(a) => vec![parse_axis(&a)?],
                None => Axis::ALL.to_vec(),
            };
            commands::uniqueness(&axes)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let rendered = e.to_string();
            let line = rendered.lines().next().unwrap_or("invalid arguments");
            eprintln!("{}", line.trim());
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(report) => {
            print!("{report}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
