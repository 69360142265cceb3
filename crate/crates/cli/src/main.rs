use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use triqubit::harness::{self, FIDELITY_THRESHOLD, PROBABILITY_TOLERANCE};
use triqubit::interferometer::matrix_from_pairs;
use triqubit::slocc::SweepGrid;
use triqubit::{decompose, prepare, random_state, sweep, ExchangeStatistics, NormKind, ThreeQubitState, SUCCESS_PROBABILITY};

#[derive(Parser)]
#[command(name = "triqubit", version, about = "Linear-optical three-qubit state preparation and SLOCC benchmark")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Prepare the target state in --in and write the post-selected result.
    Prepare {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value = "boson")]
        statistics: ExchangeStatistics,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Canonical five-term form of the state in --in, or of a seeded random state.
    Decompose {
        #[arg(long = "in", conflicts_with = "seed")]
        input: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Monte Carlo check of fidelity and success probability over random targets.
    Verify {
        #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Comma-separated list, e.g. `boson,fermion,anyon:1.0471975512`.
        #[arg(long, value_delimiter = ',', default_value = "boson")]
        statistics: Vec<ExchangeStatistics>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Success probability of GHZ-class filtering over a (chi, alpha) grid, as CSV.
    SloccSweep {
        /// Grid size as `CHIxALPHA`, each at least 2.
        #[arg(long, default_value = "50x50", value_parser = parse_grid)]
        grid: (usize, usize),
        #[arg(long, default_value = "spectral")]
        norm: NormKind,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare polynomial expansion with permanent/determinant amplitudes.
    OracleCheck {
        /// Number of seeded random unitaries.
        #[arg(long, visible_alias = "count", default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// A single 10x10 unitary as rows of `[re, im]` pairs, instead of random ones.
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Failure {
    Input(String),
    Acceptance(String),
    Oracle(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Self::Input(_) => 2,
            Self::Acceptance(_) => 3,
            Self::Oracle(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Self::Input(m) | Self::Acceptance(m) | Self::Oracle(m) => m,
        }
    }
}

impl From<triqubit::Error> for Failure {
    fn from(e: triqubit::Error) -> Self {
        Self::Input(e.to_string())
    }
}

fn parse_grid(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(['x', 'X']).ok_or_else(|| format!("expected NxM, got {s:?}"))?;
    let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}"));
    let (a, b) = (parse(a)?, parse(b)?);
    if a < 2 || b < 2 {
        return Err("grid needs at least 2 points per axis".into());
    }
    Ok((a, b))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

/// Writes `text` to `out`, or to stdout when no path is given.
fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn pretty(value: &impl serde::Serialize) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("plain data serializes");
    text.push('\n');
    text
}

fn probability_label(p: f64) -> String {
    if (p - SUCCESS_PROBABILITY).abs() < PROBABILITY_TOLERANCE {
        format!("{p} (1/18)")
    } else {
        format!("{p}")
    }
}

fn cmd_prepare(input: &Path, statistics: ExchangeStatistics, out: Option<&Path>) -> Result<(), Failure> {
    let target: ThreeQubitState = read_json(input)?;
    let prep = prepare(&target, statistics)?;
    let p = prep.result.success_probability;
    emit(&pretty(&prep.result), out)?;
    let summary = format!("statistics {statistics}: probability {}, fidelity {}", probability_label(p), prep.fidelity);
    if out.is_some() {
        println!("{summary}");
    } else {
        eprintln!("{summary}");
    }
    if prep.fidelity >= FIDELITY_THRESHOLD && (p - SUCCESS_PROBABILITY).abs() < PROBABILITY_TOLERANCE {
        Ok(())
    } else {
        Err(Failure::Acceptance(format!("preparation out of tolerance: {summary}")))
    }
}

fn cmd_decompose(input: Option<&Path>, seed: Option<u64>, out: Option<&Path>) -> Result<(), Failure> {
    let state = match (input, seed) {
        (Some(path), _) => read_json(path)?,
        (None, Some(seed)) => random_state(seed),
        (None, None) => return Err(Failure::Input("decompose needs --in or --seed".into())),
    };
    emit(&pretty(&decompose(&state)?), out)
}

fn cmd_verify(trials: u64, seed: u64, statistics: &[ExchangeStatistics], out: Option<&Path>) -> Result<(), Failure> {
    let summaries = statistics
        .iter()
        .map(|&s| harness::verify(trials as usize, seed, s))
        .collect::<Result<Vec<_>, _>>()?;
    let passed = summaries.iter().all(|s| s.passed());
    emit(&pretty(&json!({ "seed": seed, "passed": passed, "runs": summaries })), out)?;
    if passed {
        Ok(())
    } else {
        Err(Failure::Acceptance("verification failed".into()))
    }
}

fn cmd_sweep(grid: (usize, usize), norm: NormKind, out: Option<&Path>) -> Result<(), Failure> {
    let table = sweep(&SweepGrid::new(grid.0, grid.1)?, norm)?;
    emit(&table.to_csv(), out)?;
    if out.is_some() {
        let min = table.minimum();
        println!(
            "{} cells, {norm} norm: minimum p_succ {:e} at chi {}, alpha {}; {} cells below 1/18",
            table.points.len(),
            min.p_succ,
            min.chi,
            min.alpha,
            table.below_protocol().len()
        );
    }
    Ok(())
}

fn cmd_oracle_check(trials: u64, seed: u64, input: Option<&Path>, out: Option<&Path>) -> Result<(), Failure> {
    let report = match input {
        Some(path) => {
            let rows: Vec<Vec<[f64; 2]>> = read_json(path)?;
            harness::oracle_check_unitaries(&[matrix_from_pairs(&rows)?])?
        }
        None => harness::oracle_check(trials as usize, seed)?,
    };
    emit(&pretty(&json!({ "passed": report.passed(), "report": report })), out)?;
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Oracle(format!(
            "oracle mismatch: worst amplitude deviation {:e}, worst norm deviation {:e}",
            report.worst_deviation, report.worst_norm_deviation
        )))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Prepare { input, statistics, out } => cmd_prepare(input, *statistics, out.as_deref()),
        Command::Decompose { input, seed, out } => cmd_decompose(input.as_deref(), *seed, out.as_deref()),
        Command::Verify { trials, seed, statistics, out } => cmd_verify(*trials, *seed, statistics, out.as_deref()),
        Command::SloccSweep { grid, norm, out } => cmd_sweep(*grid, *norm, out.as_deref()),
        Command::OracleCheck { trials, seed, input, out } => {
            cmd_oracle_check(*trials, *seed, input.as_deref(), out.as_deref())
        }
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.code())
        }
    }
}
