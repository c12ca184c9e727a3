//! Command-line front end: `analyze`, `generate` and `verify`.
//!
//! Exit codes: 0 success, 2 usage/parse/IO error, 3 internal inconsistency,
//! 4 failed certificate.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use hmatrix_dd::mtx::{read_matrix_market, DEFAULT_MAX_N};
use hmatrix_dd::oracle::EnsembleSpec;
use hmatrix_dd::report::{analyze, generate_files, verify_report, AnalysisReport, AnalyzeOptions};
use hmatrix_dd::{IndexSet, Tolerance};

const EXIT_INPUT: u8 = 2;
const EXIT_INCONSISTENT: u8 = 3;
const EXIT_CERTIFICATE: u8 = 4;

#[derive(Parser)]
#[command(
    name = "hmatrix-dd",
    version,
    about = "H-matrix detection for diagonally dominant matrices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a Matrix Market file and print a JSON report.
    Analyze {
        matrix: PathBuf,
        /// Equality band for |a_ii| versus the deleted row sum.
        #[arg(long, default_value_t = 0.0)]
        tol: f64,
        /// Also run the inverse-nonnegativity and Jacobi oracles.
        #[arg(long)]
        oracle: bool,
        /// 1-based subset for the S-SDD and S-H checks, e.g. `1,3`.
        #[arg(long, value_delimiter = ',')]
        subset: Option<Vec<usize>>,
        #[arg(long, default_value_t = DEFAULT_MAX_N)]
        max_n: usize,
    },
    /// Write random diagonally dominant matrices.
    Generate {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        #[arg(long, default_value_t = 0.5)]
        equality_rows: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
        /// Draw complex phases (±1, ±i) instead of signs.
        #[arg(long)]
        complex: bool,
    },
    /// Re-check the certificates of a report against its matrix.
    Verify {
        report: PathBuf,
        matrix: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MAX_N)]
        max_n: usize,
    },
}

fn fail(code: u8, message: impl std::fmt::Display) -> ExitCode {
    eprintln!("hmatrix-dd: {message}");
    ExitCode::from(code)
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Analyze {
            matrix,
            tol,
            oracle,
            subset,
            max_n,
        } => {
            let tol = match Tolerance::new(tol) {
                Ok(t) => t,
                Err(e) => return fail(EXIT_INPUT, e),
            };
            let a = match read_matrix_market(&matrix, max_n) {
                Ok(a) => a,
                Err(e) => return fail(EXIT_INPUT, format!("{}: {e}", matrix.display())),
            };
            let subset = match subset
                .map(|s| IndexSet::from_one_based(&s, a.order()))
                .transpose()
            {
                Ok(s) => s,
                Err(e) => return fail(EXIT_INPUT, format!("--subset: {e}")),
            };
            let opts = AnalyzeOptions {
                tol,
                oracle,
                subset,
            };
            let report = match analyze(&a, &opts).and_then(|r| Ok((r.to_json()?, r))) {
                Ok(r) => r,
                Err(e) => return fail(EXIT_INPUT, e),
            };
            println!("{}", report.0);
            if !report.1.issues.is_empty() {
                for issue in &report.1.issues {
                    eprintln!("hmatrix-dd: inconsistency: {issue}");
                }
                return ExitCode::from(EXIT_INCONSISTENT);
            }
            ExitCode::SUCCESS
        }
        Command::Generate {
            n,
            density,
            equality_rows,
            seed,
            count,
            out_dir,
            complex,
        } => {
            let spec = EnsembleSpec {
                complex_entries: complex,
                ..EnsembleSpec::new(n, density, equality_rows, seed)
            };
            match generate_files(&spec, count, &out_dir) {
                Ok(paths) => {
                    for p in paths {
                        println!("{}", p.display());
                    }
                    ExitCode::SUCCESS
                }
                Err(e) => fail(EXIT_INPUT, e),
            }
        }
        Command::Verify {
            report,
            matrix,
            max_n,
        } => {
            let parsed = std::fs::read_to_string(&report)
                .map_err(hmatrix_dd::Error::from)
                .and_then(|text| AnalysisReport::from_json(&text));
            let parsed = match parsed {
                Ok(r) => r,
                Err(e) => return fail(EXIT_INPUT, format!("{}: {e}", report.display())),
            };
            let a = match read_matrix_market(&matrix, max_n) {
                Ok(a) => a,
                Err(e) => return fail(EXIT_INPUT, format!("{}: {e}", matrix.display())),
            };
            let verification = verify_report(&parsed, &a);
            print!("{verification}");
            if verification.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_CERTIFICATE)
            }
        }
    }
}
