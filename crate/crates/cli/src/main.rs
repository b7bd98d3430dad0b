//! `lao` — designs logarithmically asymptotically optimal tests for multiple
//! hypotheses over finite alphabets and verifies them against exact and
//! simulated error probabilities.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use config::ExperimentConfig;

/// Exit codes: 0 success, 1 condition violation, 2 config error,
/// 3 numerical failure.
#[derive(Debug)]
pub enum CliError {
    Config(String),
    Violation(String),
    Numerical(String),
}

impl CliError {
    pub fn config(msg: impl Into<String>) -> CliError {
        CliError::Config(msg.into())
    }

    pub fn violation(msg: impl Into<String>) -> CliError {
        CliError::Violation(msg.into())
    }

    pub fn numerical(msg: impl Into<String>) -> CliError {
        CliError::Numerical(msg.into())
    }

    /// Core errors surfaced while loading/validating inputs.
    pub fn from_config_error(e: lao_core::Error) -> CliError {
        CliError::Config(e.to_string())
    }

    /// Core errors surfaced while computing.
    pub fn from_core(e: lao_core::Error) -> CliError {
        CliError::Numerical(e.to_string())
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::Violation(_) => 1,
            CliError::Config(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Config(m) | CliError::Violation(m) | CliError::Numerical(m) => m,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Parser)]
#[command(
    name = "lao",
    version,
    about = "LAO multiple-hypothesis tests on finite alphabets: reliability \
             matrices and tensors, condition checks, classification, exact and \
             Monte Carlo error simulation, and exponent sweeps"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Experiment config (JSON).
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Logarithm base for divergences and exponents (overrides the config).
    #[arg(long, global = true, value_name = "B")]
    log_base: Option<f64>,

    /// Write output here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,

    /// Output format; default json (sweep and dense tensor default to csv).
    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,

    /// Monte Carlo seed (overrides the config).
    #[arg(long, global = true, value_name = "U64")]
    seed: Option<u64>,

    /// Build even when the feasibility conditions are violated.
    #[arg(long, global = true)]
    force: bool,

    /// Worker threads for Monte Carlo trials (results are identical for any
    /// thread count).
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Check the feasibility conditions on the prescribed exponents.
    Check,
    /// Build the single-object reliability matrix.
    Matrix,
    /// Evaluate compound reliability tensor entries (objects >= 2).
    Tensor,
    /// Classify recorded data: one whitespace-separated symbol sequence per
    /// object, symbols as 0-based integers.
    Classify {
        /// Data file path.
        data: PathBuf,
    },
    /// Exact (and optionally Monte Carlo) error probabilities with fitted
    /// exponents against the predicted reliabilities.
    Simulate,
    /// Sweep prescribed exponents: a curve for one object, a surface for two.
    Sweep,
}

fn default_format(command: &Command) -> OutputFormat {
    match command {
        Command::Sweep => OutputFormat::Csv,
        Command::Tensor => OutputFormat::Json,
        _ => OutputFormat::Json,
    }
}

fn run(cli: &Cli) -> Result<commands::CmdResult, CliError> {
    let config_path = cli
        .config
        .as_ref()
        .ok_or_else(|| CliError::config("missing --config <PATH>"))?;
    let text = std::fs::read_to_string(config_path)
        .map_err(|e| CliError::config(format!("cannot read {}: {e}", config_path.display())))?;
    let exp = ExperimentConfig::parse(&text)?.validate(cli.log_base, cli.seed)?;

    let format = cli.format.unwrap_or_else(|| default_format(&cli.command));
    let threads = cli
        .threads
        .unwrap_or_else(|| {
            std::thread::available_parallelism()
                .map(|n| n.get().min(8))
                .unwrap_or(1)
        })
        .max(1);

    match &cli.command {
        Command::Check => commands::cmd_check(&exp),
        Command::Matrix => commands::cmd_matrix(&exp, cli.force),
        Command::Tensor => commands::cmd_tensor(&exp, cli.force, format),
        Command::Classify { data } => {
            let text = std::fs::read_to_string(data)
                .map_err(|e| CliError::config(format!("cannot read {}: {e}", data.display())))?;
            commands::cmd_classify(&exp, &text)
        }
        Command::Simulate => commands::cmd_simulate(&exp, threads, cli.force),
        Command::Sweep => commands::cmd_sweep(&exp, format),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(result) => {
            if let Some(path) = &cli.output {
                if let Err(e) = std::fs::write(path, &result.body) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            } else {
                print!("{}", result.body);
            }
            if result.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
