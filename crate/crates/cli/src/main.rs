//! Command-line front end: load a spec, run the requested verification,
//! render a report.
//!
//! Exit codes: 0 all verdicts pass, 1 verification failure, 2 unreadable or
//! malformed input (including command-line usage errors), 3 schema
//! violation, 4 resource-guard trip.

mod commands;
mod output;
mod spec;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use gradcat_core::report::SuiteConfig;
use gradcat_core::suites::{run_suite, SuiteName};

use commands::Outcome;
use output::{CliReport, Format};
use spec::{parse_spec, SpecError};

#[derive(Parser)]
#[command(
    name = "gradcat",
    version,
    about = "Verification toolkit for graded finite categories and set functors"
)]
struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Grade the object described by a spec file and verify the grade
    /// axioms on it.
    Grade { spec: PathBuf },
    /// Verify whatever a spec file describes: classify a functor, grade an
    /// object, certify a chain or square, or run an embedded suite.
    Classify { spec: PathBuf },
    /// Run a named verification suite.
    Suite {
        /// One of: grades, limits, functor-classify, adjoint, absolute,
        /// counterexamples, all.
        name: String,
        /// Largest carrier size (or dimension, or atom count) to sweep.
        #[arg(long)]
        size: Option<usize>,
        /// Depth of chain constructions.
        #[arg(long)]
        depth: Option<usize>,
        /// Instance-count guard limit; the GRADCAT_GUARD environment
        /// variable sets the default.
        #[arg(long)]
        guard: Option<u64>,
    },
}

fn dispatch(command: Command) -> Result<Outcome, SpecError> {
    match command {
        Command::Grade { spec } => commands::grade(parse_spec(&spec)?.payload),
        Command::Classify { spec } => commands::classify(parse_spec(&spec)?.payload),
        Command::Suite {
            name,
            size,
            depth,
            guard,
        } => {
            let suite = SuiteName::parse(&name).ok_or_else(|| {
                SpecError::Parse(format!(
                    "unknown suite `{name}`, expected one of {}",
                    SuiteName::known().join(", ")
                ))
            })?;
            let mut config = SuiteConfig::default();
            if let Some(size) = size {
                config.size = size;
            }
            if let Some(depth) = depth {
                config.depth = depth;
            }
            if let Some(guard) = guard {
                config.guard = guard;
            }
            let report = run_suite(suite, &config);
            Ok(Outcome {
                suite: Some(report.suite),
                config: Some(report.config),
                checks: report.checks,
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command_echo = std::env::args().skip(1).collect::<Vec<_>>().join(" ");
    let start = Instant::now();
    match dispatch(cli.command) {
        Err(e) => {
            eprintln!("gradcat: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
        Ok(outcome) => {
            let report = CliReport::new(
                command_echo,
                outcome.suite,
                outcome.config,
                outcome.checks,
                start.elapsed().as_millis(),
            );
            print!("{}", report.render(cli.format));
            ExitCode::from(report.exit_status as u8)
        }
    }
}
