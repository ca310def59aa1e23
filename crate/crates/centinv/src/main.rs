//! Command-line driver: construction and verification of centraliser
//! invariants as reproducible batch jobs with JSON reports.
//!
//! Exit status: 0 when every check passes, 1 when a check fails, 2 on
//! usage errors.

use centinv::jobs::{run_basis, run_envelope, run_index, run_invariants, run_verify, JobConfig};
use centinv::report::Report;
use centinv::Error;
use clap::{Args, Parser, Subcommand};
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "centinv",
    about = "Exact computations with centralisers of nilpotent matrices in classical Lie algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonArgs {
    /// Jordan block sizes, nonincreasing, e.g. "3,2,1"
    #[arg(long)]
    lambda: String,
    /// gl, sp or so
    #[arg(long, default_value = "gl")]
    case: String,
    /// "q" for exact rationals or "fp:<prime>"
    #[arg(long, default_value = "q")]
    field: String,
    /// Write the JSON report here instead of stdout
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// List the centraliser basis and the eigenspace spanning sets
    Basis {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Construct the elementary invariants and their restrictions
    Invariants {
        #[command(flatten)]
        common: CommonArgs,
        /// Only the invariant with this label
        #[arg(long)]
        r: Option<usize>,
    },
    /// Run a verification suite
    Verify {
        #[command(flatten)]
        common: CommonArgs,
        /// invariance | parity | counting | jacobian | stabiliser | oracles
        /// | graded | properties | all
        #[arg(long, default_value = "all")]
        suite: String,
        /// Maximum degree for the graded suite
        #[arg(long)]
        degree_cap: Option<usize>,
        /// Seed for the randomized property suite (echoed in the report)
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Compute the index of the case's action
    Index {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Enveloping-algebra checks
    Envelope {
        #[command(flatten)]
        common: CommonArgs,
        /// milner | pcentre | grbeta | bound
        #[arg(long, default_value = "grbeta")]
        check: String,
        /// Hard degree cap for truncated computations
        #[arg(long)]
        degree_cap: Option<usize>,
    },
}

fn build_config(common: &CommonArgs) -> Result<JobConfig, Error> {
    JobConfig::new(&common.lambda, &common.case, &common.field)
}

fn emit(report: &Report, out: &Option<std::path::PathBuf>, primary: Option<String>) -> i32 {
    match out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, report.to_json()) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return 2;
            }
            if let Some(line) = primary {
                println!("{line}");
            }
        }
        None => match primary {
            Some(line) => println!("{line}"),
            None => println!("{}", report.to_json()),
        },
    }
    if report.pass {
        0
    } else {
        1
    }
}

fn run() -> Result<i32, Error> {
    let cli = Cli::parse();
    let started = Instant::now();
    let code = match cli.command {
        Command::Basis { common } => {
            let cfg = build_config(&common)?;
            let mut report = run_basis(&cfg)?;
            report.timing_ms = Some(started.elapsed().as_millis());
            emit(&report, &common.out, None)
        }
        Command::Invariants { common, r } => {
            let mut cfg = build_config(&common)?;
            cfg.r = r;
            cfg.validate()?;
            let mut report = run_invariants(&cfg)?;
            report.timing_ms = Some(started.elapsed().as_millis());
            emit(&report, &common.out, None)
        }
        Command::Verify {
            common,
            suite,
            degree_cap,
            seed,
        } => {
            let mut cfg = build_config(&common)?;
            cfg.suite = Some(suite);
            cfg.degree_cap = degree_cap;
            cfg.seed = seed;
            let mut report = run_verify(&cfg)?;
            report.timing_ms = Some(started.elapsed().as_millis());
            emit(&report, &common.out, None)
        }
        Command::Index { common } => {
            let cfg = build_config(&common)?;
            let mut report = run_index(&cfg)?;
            report.timing_ms = Some(started.elapsed().as_millis());
            let value = report
                .payload
                .as_ref()
                .and_then(|p| p.get("index"))
                .map(|v| v.to_string());
            emit(&report, &common.out, value)
        }
        Command::Envelope {
            common,
            check,
            degree_cap,
        } => {
            let mut cfg = build_config(&common)?;
            cfg.suite = Some(check);
            cfg.degree_cap = degree_cap;
            let mut report = run_envelope(&cfg)?;
            report.timing_ms = Some(started.elapsed().as_millis());
            emit(&report, &common.out, None)
        }
    };
    Ok(code)
}

fn main() {
    match run() {
        Ok(code) => std::process::exit(code),
        Err(Error::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            std::process::exit(2);
        }
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(match e {
                Error::InvalidPartition(_)
                | Error::InvalidCase(_)
                | Error::CharacteristicTwo
                | Error::NoValidInvolution(_) => 2,
                _ => 1,
            });
        }
    }
}
