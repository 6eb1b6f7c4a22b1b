//! Command line interface.
//!
//! ```text
//! atlas run --family "(8)" [--backend exact|crosscheck] [--emit json|text] [--out PATH]
//! atlas run --input cover.toml …
//! atlas check ["(8)" "(10)" …] [--backend exact|crosscheck]
//! ```
//!
//! `run` executes one family (built-in by id, or from a configuration
//! document) and emits its report; the exit status is nonzero when the run
//! fails its checks.  `check` runs a regression sweep over the selected
//! fixtures (all thirteen by default) and exits with the number of failing
//! fixtures, capped at 125.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use atlas_cli::runner::{run_all, run_custom, run_fixture};
use atlas_cli::{fixtures, parse, Backend};

#[derive(Parser)]
#[command(name = "atlas", version, about = "Symmetric-space atlas of abelian Galois covers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum BackendArg {
    /// Exact cyclotomic arithmetic only.
    Exact,
    /// Exact arithmetic with a floating-point agreement check on every rank.
    Crosscheck,
}

impl From<BackendArg> for Backend {
    fn from(b: BackendArg) -> Backend {
        match b {
            BackendArg::Exact => Backend::Exact,
            BackendArg::Crosscheck => Backend::Crosscheck,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum EmitArg {
    Text,
    Json,
}

#[derive(Args)]
struct RunArgs {
    /// Built-in fixture id, e.g. "(8)" or "(3e)".
    #[arg(long, conflicts_with = "input", required_unless_present = "input")]
    family: Option<String>,
    /// Path to a configuration document (TOML).
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = BackendArg::Exact)]
    backend: BackendArg,
    #[arg(long, value_enum, default_value_t = EmitArg::Text)]
    emit: EmitArg,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CheckArgs {
    /// Fixture ids to check; all thirteen when omitted.
    ids: Vec<String>,
    #[arg(long, value_enum, default_value_t = BackendArg::Exact)]
    backend: BackendArg,
}

#[derive(Subcommand)]
enum Command {
    /// Run one family and emit its report.
    Run(RunArgs),
    /// Regression-check fixtures; exit code = number of failures.
    Check(CheckArgs),
}

fn run_command(args: &RunArgs) -> atlas_cli::Result<ExitCode> {
    let backend: Backend = args.backend.into();
    let report = match (&args.family, &args.input) {
        (Some(id), None) => {
            let fixture = fixtures::resolve(id)?;
            run_fixture(fixture, backend)?
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)?;
            let input = parse::parse_document(&text)?;
            run_custom(&input, backend)?
        }
        _ => unreachable!("clap enforces exactly one input source"),
    };
    let rendered = match args.emit {
        EmitArg::Json => report.to_json(),
        EmitArg::Text => report.to_text(),
    };
    match &args.out {
        Some(path) => std::fs::write(path, rendered)?,
        None => print!("{rendered}"),
    }
    Ok(if report.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn check_command(args: &CheckArgs) -> atlas_cli::Result<ExitCode> {
    let backend: Backend = args.backend.into();
    let filter = if args.ids.is_empty() {
        None
    } else {
        Some(args.ids.as_slice())
    };
    let reports = run_all(filter, backend)?;
    let mut failures = 0u8;
    for report in &reports {
        if report.pass {
            println!("{:>10}  PASS  {}", report.fixture, report.label);
        } else {
            failures = failures.saturating_add(1);
            println!("{:>10}  FAIL  {}", report.fixture, report.label);
            for c in report.checks.iter().filter(|c| !c.pass) {
                println!("            {}: expected {}, got {}", c.name, c.expected, c.actual);
            }
        }
        for flag in &report.flags {
            println!("            note: {flag}");
        }
    }
    println!(
        "{} of {} fixtures pass",
        reports.len() - failures as usize,
        reports.len()
    );
    Ok(ExitCode::from(failures.min(125)))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Run(args) => run_command(args),
        Command::Check(args) => check_command(args),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
