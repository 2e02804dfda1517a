//! The `logvoa` command-line driver.
//!
//! `logvoa <command> [--config FILE] [--set key=value]... [--out PATH]`
//! prints a JSON-lines report to stdout. Exit codes: 0 when every check
//! passes, 1 when a check fails, 2 for configuration errors.

pub mod cache;
pub mod commands;
pub mod config;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, ValueEnum};

use crate::error::{Error, Result};
use crate::report::Report;

pub use cache::{cache_key, cached_singular_basis, CacheStatus};
pub use config::RunConfig;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    VerifyIntertwiner,
    Structure,
    Character,
    Hidden,
    Fusion,
    Mock,
    Singular,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::VerifyIntertwiner => "verify-intertwiner",
            Command::Structure => "structure",
            Command::Character => "character",
            Command::Hidden => "hidden",
            Command::Fusion => "fusion",
            Command::Mock => "mock",
            Command::Singular => "singular",
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "logvoa", version, about = "Exact checks for logarithmic intertwining operators of the Heisenberg VOA")]
pub struct Cli {
    #[arg(value_enum)]
    pub command: Command,
    /// Flat `key = value` config file.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Override one config key; may be repeated.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    pub set: Vec<String>,
    /// Where `structure` writes its diagram (TGF).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Loads the config file, then applies `--set` and `--out`.
pub fn resolve_config(cli: &Cli) -> Result<RunConfig> {
    let mut cfg = match &cli.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    cfg.apply_overrides(&cli.set)?;
    if let Some(out) = &cli.out {
        cfg.out = Some(out.clone());
    }
    Ok(cfg)
}

/// Runs one command and returns its report.
pub fn execute(command: Command, cfg: &RunConfig) -> Result<Report> {
    let start = Instant::now();
    let mut report = Report::new(command.name(), cfg.to_json());
    match command {
        Command::VerifyIntertwiner => commands::verify_intertwiner(cfg, &mut report)?,
        Command::Structure => {
            let tgf = commands::structure(cfg, &mut report)?;
            if let Some(path) = &cfg.out {
                std::fs::write(path, tgf)?;
            }
        }
        Command::Character => commands::character(cfg, &mut report)?,
        Command::Hidden => commands::hidden(cfg, &mut report)?,
        Command::Fusion => commands::fusion(cfg, &mut report)?,
        Command::Mock => commands::mock(cfg, &mut report)?,
        Command::Singular => commands::singular(cfg, &mut report)?,
    }
    report.wall_time = start.elapsed();
    Ok(report)
}

fn is_config_error(e: &Error) -> bool {
    matches!(
        e,
        Error::Config { .. } | Error::Parse(_) | Error::InvalidArgument(_) | Error::DegenerateParameters(_)
    )
}

/// Entry point used by the binary. Writes the report to `out`, errors to
/// stderr, and returns the exit code.
pub fn run<I, T, W>(args: I, mut out: W) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
    W: Write,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_CONFIG } else { EXIT_PASS };
        }
    };
    let cfg = match resolve_config(&cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("logvoa: {e}");
            return EXIT_CONFIG;
        }
    };
    match execute(cli.command, &cfg) {
        Ok(report) => {
            if let Err(e) = report.write_to(&mut out) {
                eprintln!("logvoa: {e}");
                return EXIT_FAIL;
            }
            if report.all_pass() {
                EXIT_PASS
            } else {
                EXIT_FAIL
            }
        }
        Err(e) => {
            eprintln!("logvoa: {e}");
            if is_config_error(&e) {
                EXIT_CONFIG
            } else {
                EXIT_FAIL
            }
        }
    }
}
