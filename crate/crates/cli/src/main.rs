//! Command-line front end.
//!
//! Exit codes: 0 success (verify: all identities hold), 1 verification
//! failure, 2 usage or parse error, 3 resource-cap error.

mod bench;
mod eval;
mod expand;
mod spec;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use chainrec_core::{Problem, Realization};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Resource(String),
}

impl From<chainrec_core::Error> for CliError {
    fn from(error: chainrec_core::Error) -> CliError {
        match error {
            chainrec_core::Error::ResourceCap { .. } => CliError::Resource(error.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "chainrec",
    version,
    about = "Evaluate and cross-verify sequences from variable-coefficient linear difference equations"
)]
struct Cli {
    /// Problem description (JSON)
    #[arg(long, global = true, value_name = "PATH")]
    spec: Option<PathBuf>,

    /// Override the scalar realization declared in the spec
    #[arg(long, global = true, value_enum)]
    scalar: Option<spec::ScalarKind>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print n, w_n, prefix_n rows computed by one evaluation method
    Eval {
        #[arg(long, value_enum, default_value_t = eval::Method::Direct)]
        method: eval::Method,
        /// Print rows only up to this index (defaults to the horizon)
        #[arg(long)]
        n: Option<u32>,
    },
    /// Cross-check all evaluation strategies; exit 0 iff every identity holds
    Verify {
        /// Largest horizon drawn for random problems
        #[arg(long, default_value_t = 10)]
        max_n: u32,
        /// Number of seeded random problems
        #[arg(long, default_value_t = 50)]
        trials: u32,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Deliberately break one evaluator (harness self-test)
        #[arg(long, value_enum)]
        inject: Option<verify::Fault>,
    },
    /// Print symbolic expansions over generic coefficients
    Expand {
        #[arg(long, value_enum)]
        what: expand::What,
        #[arg(long)]
        n: u32,
    },
    /// Time the evaluation methods and count scalar operations (CSV)
    Bench {
        #[arg(long, default_value_t = 64)]
        max_n: u32,
        /// Comma-separated subset of: dp, binary, chain, vector, direct
        #[arg(long, value_delimiter = ',')]
        methods: Vec<String>,
        #[arg(long, value_name = "PATH")]
        output: PathBuf,
    },
}

fn load_problem(cli: &Cli, required: bool) -> Result<Option<Problem>, CliError> {
    let Some(path) = &cli.spec else {
        if required {
            return Err(CliError::Usage(
                "--spec <PATH> is required for this command".into(),
            ));
        }
        return Ok(None);
    };
    let bytes = std::fs::read(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    let parsed = spec::parse_spec(&bytes).map_err(|e| CliError::Usage(e.to_string()))?;
    let problem = parsed
        .to_problem(cli.scalar)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(Some(problem))
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match &cli.command {
        Command::Eval { method, n } => {
            let problem = load_problem(&cli, true)?.expect("required");
            let table = eval::run(&problem, *method, *n)?;
            print!("{table}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            max_n,
            trials,
            seed,
            inject,
        } => {
            let problem = load_problem(&cli, false)?;
            if let Some(problem) = &problem {
                if problem.realization() != Realization::Rational {
                    return Err(CliError::Usage(
                        "verify needs exact equality; the spec problem must use scalar \"rational\""
                            .into(),
                    ));
                }
            }
            let outcome = verify::run(&verify::Options {
                max_n: *max_n,
                trials: *trials,
                seed: *seed,
                inject: *inject,
                problem,
            });
            print!("{}", outcome.report);
            Ok(if outcome.all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Expand { what, n } => {
            let text = expand::run(*what, *n)?;
            print!("{text}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Bench {
            max_n,
            methods,
            output,
        } => {
            bench::run(*max_n, methods, output)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(CliError::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
        Err(CliError::Resource(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(3)
        }
    }
}
