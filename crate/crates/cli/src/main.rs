//! `qc`: command-line front end for the quasijordan library.

mod args;
mod commands;

use std::process::ExitCode;

use clap::Parser;
use quasijordan::QcError;

use args::{Cli, Config};

/// Environment variable overriding the worker-thread count.
pub const THREADS_ENV: &str = "QJ_THREADS";

pub const EXIT_INVALID_WINDOW: u8 = 2;
pub const EXIT_DEGENERATE_WINDOW: u8 = 3;
pub const EXIT_NOT_IN_MODEL_SET: u8 = 4;
pub const EXIT_VERIFY_FAILED: u8 = 5;
pub const EXIT_HYPOTHESIS: u8 = 6;

fn exit_code_for(err: &anyhow::Error) -> u8 {
    match err.chain().find_map(|c| c.downcast_ref::<QcError>()) {
        Some(QcError::InvalidWindow(_)) => EXIT_INVALID_WINDOW,
        Some(QcError::DegenerateWindow(_)) => EXIT_DEGENERATE_WINDOW,
        Some(QcError::NotInModelSet(_)) => EXIT_NOT_IN_MODEL_SET,
        _ => 1,
    }
}

fn load_config(cli: &Cli) -> anyhow::Result<Config> {
    let Some(path) = &cli.config else {
        return Ok(Config::default());
    };
    let text = std::fs::read_to_string(path).map_err(|e| anyhow::anyhow!("cannot read config {}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| anyhow::anyhow!("invalid config {}: {e}", path.display()))
}

fn init_threads(cfg: &Config) -> anyhow::Result<()> {
    let from_env = match std::env::var(THREADS_ENV) {
        Ok(v) => Some(v.parse::<usize>().map_err(|_| anyhow::anyhow!("{THREADS_ENV} must be a positive integer, got {v:?}"))?),
        Err(_) => None,
    };
    if let Some(n) = from_env.or(cfg.threads) {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = load_config(&cli).and_then(|cfg| {
        init_threads(&cfg)?;
        commands::run(&cli.command, &cfg)
    });
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("qc: {e:#}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
