//! Command-line front end: reads fixed-point datasets from JSON files,
//! runs the genus, rigidity, certificate, and scan computations, and
//! reports results as JSON on standard output.
//!
//! Exit codes: 0 success/verified, 1 property violation found (non-rigid
//! input to compute/rigidity, scan violations), 2 input or usage error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use qgenus::data::FixedPointData;
use qgenus::genus::{genus_report, rigidity_check};
use qgenus::proof::{certificate, ProofError};
use qgenus::search::{kosniowski_scan, ScanParams};

#[derive(Parser)]
#[command(
    name = "qgenus",
    version,
    about = "Exact equivariant genus computations for circle-action fixed-point data"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full genus report for a dataset file
    Compute { path: PathBuf },
    /// Decide whether the equivariant genus is independent of q
    Rigidity { path: PathBuf },
    /// Run the cyclic-equality impossibility argument on a dataset file
    Certify {
        path: PathBuf,
        /// Evaluate the defined defects even when the dataset has more
        /// point classes than the argument covers
        #[arg(long)]
        force: bool,
    },
    /// Enumerate small datasets and assert the point-count lower bound
    Scan {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=16))]
        half_dim: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=8))]
        max_points: u64,
        #[arg(long, value_parser = clap::value_parser!(i64).range(1..=64))]
        weight_bound: i64,
        /// Cap on parallel workers (default: all cores)
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=512))]
        jobs: Option<u64>,
    },
}

#[derive(Serialize)]
struct RigidityOutcome {
    constant: Option<qgenus::algebra::BivarPoly>,
    rigid: bool,
}

fn load_dataset(path: &Path) -> Result<FixedPointData, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    FixedPointData::from_json_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn print_json<T: Serialize>(value: &T) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("report serialization cannot fail")
    );
}

fn run(cli: Cli) -> Result<u8, String> {
    match cli.command {
        Command::Compute { path } => {
            let d = load_dataset(&path)?;
            let report = genus_report(&d);
            print_json(&report);
            Ok(if report.rigid { 0 } else { 1 })
        }
        Command::Rigidity { path } => {
            let d = load_dataset(&path)?;
            let (rigid, constant) = rigidity_check(&d);
            print_json(&RigidityOutcome { constant, rigid });
            Ok(if rigid { 0 } else { 1 })
        }
        Command::Certify { path, force } => {
            let d = load_dataset(&path)?;
            match certificate(&d, force) {
                Ok(cert) => {
                    print_json(&cert);
                    Ok(0)
                }
                Err(ProofError::TooManyClasses { m, k }) => Err(format!(
                    "certify: dataset has {m} point classes but the argument covers at most \
                     k = {k}; rerun with --force to evaluate the defined defects anyway"
                )),
                Err(e) => Err(format!("certify: {e}")),
            }
        }
        Command::Scan {
            half_dim,
            max_points,
            weight_bound,
            jobs,
        } => {
            let params = ScanParams {
                half_dim: half_dim as usize,
                max_points: max_points as usize,
                weight_bound,
                dedupe_negation: true,
            };
            let report = kosniowski_scan(&params, jobs.map(|j| j as usize));
            print_json(&report);
            Ok(if report.violations.is_empty() { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
