//! `maxeig`: max-times eigenvalues, eigenvectors and pairwise-comparison
//! weights from CSV or JSON matrix files.

mod commands;
mod report;

use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use maxeig_core::bench::BenchConfig;
use maxeig_core::{Error, NumericPolicy};
use serde_json::json;

use report::Report;

#[derive(Parser, Debug)]
#[command(
    name = "maxeig",
    version,
    about = "Max-times eigen-analysis of nonnegative matrices"
)]
struct Cli {
    /// Print a machine-readable JSON report to stdout.
    #[arg(long, global = true)]
    json: bool,

    /// Relative tolerance for comparisons.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,

    /// Largest n for which permutations are enumerated.
    #[arg(long, global = true, env = "MAXEIG_JUMP_LIMIT")]
    jump_limit: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Jump,
    Karp,
    Power,
    All,
}

impl MethodArg {
    pub fn name(self) -> &'static str {
        match self {
            MethodArg::Jump => "jump",
            MethodArg::Karp => "karp",
            MethodArg::Power => "power",
            MethodArg::All => "all",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Normalize {
    Max,
    Sum,
}

impl Normalize {
    pub fn name(self) -> &'static str {
        match self {
            Normalize::Max => "max",
            Normalize::Sum => "sum",
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Maximum cycle geometric mean and a critical cycle.
    Mu {
        /// Matrix file, or `-` for stdin.
        file: PathBuf,
        #[arg(long, value_enum, default_value = "karp")]
        method: MethodArg,
    },
    /// Max-eigenvector, scaled to largest entry 1.
    Eigvec {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "karp")]
        method: MethodArg,
    },
    /// Check reciprocity and transitivity (both when neither flag is given).
    Check {
        file: PathBuf,
        #[arg(long)]
        sr: bool,
        #[arg(long)]
        transitive: bool,
    },
    /// Weights of an SR matrix with relative error and its bound.
    Weights {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "max")]
        normalize: Normalize,
    },
    /// Sample mu under the reciprocal perturbation of a critical entry.
    TauScan {
        file: PathBuf,
        #[arg(long, default_value_t = 0.1)]
        from: f64,
        #[arg(long, default_value_t = 10.0)]
        to: f64,
        #[arg(long, default_value_t = 200)]
        steps: usize,
    },
    /// Time and compare the three methods on random irreducible matrices.
    Bench {
        /// Inclusive range `a..b`, or a single size.
        #[arg(long, default_value = "3..7", value_parser = parse_sizes)]
        sizes: RangeInclusive<usize>,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

fn parse_sizes(s: &str) -> Result<RangeInclusive<usize>, String> {
    let bad = |_| format!("expected a..b or a single size, got {s:?}");
    let (lo, hi) = match s.split_once("..") {
        Some((lo, hi)) => (lo, hi.trim_start_matches('=')),
        None => (s, s),
    };
    let lo: usize = lo.trim().parse().map_err(bad)?;
    let hi: usize = hi.trim().parse().map_err(bad)?;
    if lo == 0 || lo > hi {
        return Err(format!("need 1 <= a <= b, got {s:?}"));
    }
    Ok(lo..=hi)
}

/// Exit status and short machine-readable code for an error.
fn classify(e: &Error) -> (u8, &'static str) {
    match e {
        Error::Parse(_) => (2, "parse"),
        Error::JumpLimitExceeded { .. } => (3, "jump-limit"),
        Error::NoConvergence { .. } => (4, "convergence"),
        Error::Io(_) => (1, "io"),
        Error::NotPositive { .. } | Error::Reciprocity { .. } => (1, "not-sr"),
        Error::InvalidRange(_) | Error::InvalidPolicy(_) => (1, "usage"),
        _ => (1, "domain"),
    }
}

fn describe(e: &Error) -> String {
    match e {
        Error::NotPositive { row, col, value } => {
            format!(
                "entry ({}, {}) = {value} is not strictly positive",
                row + 1,
                col + 1
            )
        }
        Error::Reciprocity { row, col, product } => {
            format!(
                "reciprocity violated at ({}, {}): a_ij * a_ji = {product}",
                row + 1,
                col + 1
            )
        }
        Error::Parse(m) | Error::Io(m) => m.clone(),
        other => other.to_string(),
    }
}

fn policy(cli: &Cli) -> Result<NumericPolicy, Error> {
    let p = NumericPolicy::default().with_rel_tol(cli.tol)?;
    match cli.jump_limit {
        Some(limit) => p.with_jump_limit(limit),
        None => Ok(p),
    }
}

fn run(cli: &Cli, report: &mut Report) -> Result<(), Error> {
    let policy = policy(cli)?;
    match &cli.command {
        Command::Mu { file, method } => commands::mu(report, file, *method, &policy),
        Command::Eigvec { file, method } => commands::eigvec(report, file, *method, &policy),
        Command::Check {
            file,
            sr,
            transitive,
        } => commands::check(report, file, *sr, *transitive, &policy),
        Command::Weights { file, normalize } => {
            commands::weights(report, file, *normalize, &policy)
        }
        Command::TauScan {
            file,
            from,
            to,
            steps,
        } => commands::tau(report, file, *from, *to, *steps, &policy),
        Command::Bench {
            sizes,
            trials,
            seed,
        } => {
            let config = BenchConfig {
                sizes: sizes.clone(),
                trials: *trials,
                seed: *seed,
                ..Default::default()
            };
            commands::bench(report, &config, &policy)
        }
    }
}

fn echo(cli: &Cli) -> serde_json::Value {
    let mut v = match &cli.command {
        Command::Mu { file, method } => {
            json!({ "name": "mu", "file": file, "method": method.name() })
        }
        Command::Eigvec { file, method } => {
            json!({ "name": "eigvec", "file": file, "method": method.name() })
        }
        Command::Check {
            file,
            sr,
            transitive,
        } => {
            json!({ "name": "check", "file": file, "sr": sr, "transitive": transitive })
        }
        Command::Weights { file, normalize } => {
            json!({ "name": "weights", "file": file, "normalize": normalize.name() })
        }
        Command::TauScan {
            file,
            from,
            to,
            steps,
        } => {
            json!({ "name": "tau-scan", "file": file, "from": from, "to": to, "steps": steps })
        }
        Command::Bench {
            sizes,
            trials,
            seed,
        } => json!({
            "name": "bench",
            "sizes": [sizes.start(), sizes.end()],
            "trials": trials,
            "seed": seed,
        }),
    };
    v["tol"] = json!(cli.tol);
    v["jump_limit"] = json!(cli.jump_limit);
    v
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut report = Report::new(echo(&cli), None);
    match run(&cli, &mut report) {
        Ok(()) => {
            if cli.json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.text);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            let (status, code) = classify(&e);
            let message = describe(&e);
            if cli.json {
                let err = json!({ "error": { "code": code, "exit": status, "message": message } });
                eprintln!("{err}");
            } else {
                eprintln!("error[{code}]: {message}");
            }
            ExitCode::from(status)
        }
    }
}
