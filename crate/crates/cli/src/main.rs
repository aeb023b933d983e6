//! `ladpref`: consistency checks, LAD utilities and fuzzy AHP from the
//! command line.

mod commands;
mod error;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use ladpref::MagWeights;

use commands::{Context, ModelArg};
use error::{CliError, Result};
use input::Kind;

#[derive(Debug, Parser)]
#[command(
    name = "ladpref",
    version,
    about = "Fuzzy preference relations and LAD priorities"
)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Consistency tolerance.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,

    /// Magnitude weights `w1,w2` with 2(w1 + w2) = 1.
    #[arg(long, global = true, value_name = "W1,W2")]
    mag_weights: Option<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Model {
    P0,
    P,
    Punit,
    Psigma,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Target {
    Additive,
    Multiplicative,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check that a problem file describes valid relations.
    Validate {
        /// Problem file.
        path: PathBuf,
    },
    /// Check every triple for consistency.
    Consistency {
        /// Problem file.
        path: PathBuf,
    },
    /// Derive the LAD utility vector of a relation.
    Utility {
        /// Problem file.
        path: PathBuf,
        /// Defaults to punit for additive and p for multiplicative relations.
        #[arg(long, value_enum)]
        model: Option<Model>,
        /// Total utility `a,b,c,d` for the psigma model; overrides the file's sigma.
        #[arg(long, value_name = "A,B,C,D")]
        sigma: Option<String>,
    },
    /// Derive LAD fuzzy weights with a fixed total.
    Weights {
        /// Problem file.
        path: PathBuf,
        /// Total weight `a,b,c,d`; overrides the file's sigma.
        #[arg(long, value_name = "A,B,C,D")]
        sigma: Option<String>,
    },
    /// Run the fuzzy AHP pipeline on an ahp file.
    Ahp {
        /// Problem file.
        path: PathBuf,
        /// Add AMM and GMM baselines with their deviations.
        #[arg(long)]
        compare: bool,
    },
    /// Convert between additive and multiplicative relations.
    Convert {
        /// Problem file.
        path: PathBuf,
        /// Kind of relation to write.
        #[arg(long, value_enum)]
        to: Target,
        /// Upper end m of the 1/m..m scale; required with --to multiplicative.
        #[arg(long)]
        scale: Option<u32>,
        /// Write here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn sigma_flag(s: &Option<String>) -> Result<Option<[f64; 4]>> {
    s.as_deref()
        .map(|s| input::parse_list::<4>(s, "sigma"))
        .transpose()
}

fn run(cli: Cli) -> Result<String> {
    if !(cli.tol.is_finite() && cli.tol >= 0.0) {
        return Err(CliError::Parse(format!(
            "--tol must be a non-negative number, got {}",
            cli.tol
        )));
    }
    let mag_weights = match cli.mag_weights.as_deref() {
        Some(s) => {
            let [w1, w2] = input::parse_list::<2>(s, "mag-weights")?;
            Some(
                MagWeights::new(w1, w2)
                    .map_err(|e| CliError::Invalid(format!("--mag-weights: {e}")))?,
            )
        }
        None => None,
    };
    let ctx = Context {
        json: cli.json,
        tol: cli.tol,
        mag_weights,
    };
    match &cli.command {
        Command::Validate { path } => commands::validate(&input::load(path)?, &ctx),
        Command::Consistency { path } => commands::consistency(&input::load(path)?, &ctx),
        Command::Utility { path, model, sigma } => {
            let sigma = sigma_flag(sigma)?;
            let model = model.map(|m| match m {
                Model::P0 => ModelArg::P0,
                Model::P => ModelArg::P,
                Model::Punit => ModelArg::PUnit,
                Model::Psigma => ModelArg::PSigma,
            });
            commands::utility(&input::load(path)?, &ctx, model, sigma)
        }
        Command::Weights { path, sigma } => {
            let sigma = sigma_flag(sigma)?;
            commands::weights(&input::load(path)?, &ctx, sigma)
        }
        Command::Ahp { path, compare } => commands::ahp(&input::load(path)?, &ctx, *compare),
        Command::Convert {
            path,
            to,
            scale,
            out,
        } => {
            let to = match to {
                Target::Additive => Kind::Additive,
                Target::Multiplicative => Kind::Multiplicative,
            };
            commands::convert(&input::load(path)?, to, *scale, out.as_deref())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
