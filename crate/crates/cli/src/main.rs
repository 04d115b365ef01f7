//! Command-line front end.
//!
//! Four subcommands cover the pipelines: `charfun` tabulates χ(k),
//! `distribution` inverts it to a density with a cumulant sidecar, `sweep`
//! runs invert → fit → similarity over an (M, α) matrix, and `mc` draws
//! reproducible Monte Carlo samples. Every command is deterministic given
//! its flags; shared flag conventions live in [`config`].

use clap::{Parser, Subcommand};

mod commands;
mod config;
mod fmt;

use config::ConfigFile;

#[derive(Parser)]
#[command(
    name = "lndet",
    about = "Free-energy distribution of Gaussian skew-circulant disorder",
    version
)]
struct Cli {
    /// Optional TOML config file; keys are long flag names, flags win.
    #[arg(long, global = true)]
    config: Option<std::path::PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate the characteristic function on a uniform k grid.
    Charfun(commands::charfun::CharfunArgs),
    /// Fourier-invert the characteristic function to a density.
    Distribution(commands::distribution::DistributionArgs),
    /// Invert, fit and score distributions over an (M, alpha) matrix.
    Sweep(commands::sweep::SweepArgs),
    /// Draw Monte Carlo samples of the free energy.
    Mc(commands::mc::McArgs),
}

/// Errors carry a machine-readable kind so scripted callers can branch.
pub(crate) struct CliError {
    pub kind: &'static str,
    pub message: String,
    pub exit_code: i32,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        Self {
            kind: "usage",
            message: message.into(),
            exit_code: 2,
        }
    }

    pub fn runtime(message: impl Into<String>) -> Self {
        Self {
            kind: "runtime",
            message: message.into(),
            exit_code: 1,
        }
    }

    pub fn io(path: &std::path::Path, err: std::io::Error) -> Self {
        Self {
            kind: "io",
            message: format!("{}: {err}", path.display()),
            exit_code: 1,
        }
    }
}

impl From<lndet::Error> for CliError {
    fn from(err: lndet::Error) -> Self {
        match err {
            lndet::Error::InvalidArgument(_) => CliError {
                kind: "usage",
                message: err.to_string(),
                exit_code: 2,
            },
            _ => CliError::runtime(err.to_string()),
        }
    }
}

fn main() {
    let cli = Cli::parse();
    let config = match ConfigFile::load(cli.config.as_deref()) {
        Ok(c) => c,
        Err(e) => fail(e),
    };
    let result = match cli.command {
        Command::Charfun(args) => commands::charfun::run(args, &config),
        Command::Distribution(args) => commands::distribution::run(args, &config),
        Command::Sweep(args) => commands::sweep::run(args, &config),
        Command::Mc(args) => commands::mc::run(args, &config),
    };
    if let Err(e) = result {
        fail(e);
    }
}

fn fail(e: CliError) -> ! {
    eprintln!(
        "{}",
        serde_json::json!({ "error": e.kind, "message": e.message })
    );
    std::process::exit(e.exit_code);
}
