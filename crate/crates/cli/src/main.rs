//! `kf`: solve, diagnose and generate unit-vector systems from the command line.
//!
//! Exit codes: 0 on success or convergence, 2 when a solve exhausts its
//! budget, 1 on any input error. Set `KF_LOG` (e.g. `KF_LOG=debug`) for logs
//! on standard error.

mod commands;
mod io;
mod json;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kf_core::diagnostics::Tolerances;
use kf_core::SystemKind;

#[derive(Debug, Parser)]
#[command(
    name = "kf",
    version,
    about = "Kaczmarz iterations and frame diagnostics for unit-vector systems"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve A x = b by cyclic Kaczmarz sweeps or repeated data-driven passes.
    Solve(SolveArgs),
    /// Frame, effectiveness and solvability report for the rows of a matrix.
    Analyze(AnalyzeArgs),
    /// Residual bound and solvability verdict for the data-driven pass.
    Bound(AnalyzeArgs),
    /// Write the auxiliary sequence and the triangular matrices M and C.
    Gseq(GseqArgs),
    /// Write a seeded unit-vector system as a MatrixMarket file.
    Generate(GenerateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SolveMode {
    Cyclic,
    Pass,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long)]
    pub matrix: PathBuf,
    #[arg(long)]
    pub rhs: PathBuf,
    #[arg(long, value_enum, default_value_t = SolveMode::Cyclic)]
    pub mode: SolveMode,
    /// Sweep budget (cyclic) or number of passes (pass).
    #[arg(long, default_value_t = 500, value_parser = clap::value_parser!(u64).range(1..))]
    pub sweeps: u64,
    /// Stop once ||A x - b|| <= tol ||b||.
    #[arg(long, default_value_t = 1e-10, value_parser = positive)]
    pub tol: f64,
    /// CSV trace with header `iter,residual,error`, one row per sweep or pass.
    #[arg(long)]
    pub trace: Option<PathBuf>,
    /// Known solution, used for the error column and `error_norm`.
    #[arg(long)]
    pub exact: Option<PathBuf>,
    /// Write the JSON report here instead of standard output.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ToleranceArgs {
    #[arg(long, default_value_t = Tolerances::default().frame_tol, value_parser = positive)]
    pub tol_frame: f64,
    #[arg(long, default_value_t = Tolerances::default().tight_tol, value_parser = positive)]
    pub tol_tight: f64,
    #[arg(long, default_value_t = Tolerances::default().onb_tol, value_parser = positive)]
    pub tol_onb: f64,
    #[arg(long, default_value_t = Tolerances::default().effective_tol, value_parser = positive)]
    pub tol_effective: f64,
}

impl ToleranceArgs {
    pub fn tolerances(&self) -> Tolerances {
        Tolerances {
            frame_tol: self.tol_frame,
            tight_tol: self.tol_tight,
            onb_tol: self.tol_onb,
            effective_tol: self.tol_effective,
        }
    }
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[arg(long)]
    pub matrix: PathBuf,
    #[command(flatten)]
    pub tolerances: ToleranceArgs,
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GseqArgs {
    #[arg(long)]
    pub matrix: PathBuf,
    /// Output files are `<prefix>_g.mtx`, `<prefix>_M.mtx` and `<prefix>_C.mtx`.
    #[arg(long)]
    pub out_prefix: String,
    /// Normalize rows instead of rejecting non-unit rows.
    #[arg(long)]
    pub normalize: bool,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long, value_parser = parse_kind)]
    pub kind: SystemKind,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub dim: u64,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub count: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
}

fn positive(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("`{s}`: {e}"))?;
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(format!("`{s}` must be a positive finite number"))
    }
}

fn parse_kind(s: &str) -> Result<SystemKind, String> {
    s.parse().map_err(|e: kf_core::Error| e.to_string())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("KF_LOG", "warn")).init();
    let cfg = match RunConfig::try_parse() {
        Ok(cfg) => cfg,
        Err(err) => {
            let _ = err.print();
            return if err.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match commands::run(cfg) {
        Ok(commands::Status::Done) => ExitCode::SUCCESS,
        Ok(commands::Status::BudgetExhausted) => ExitCode::from(2),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}
