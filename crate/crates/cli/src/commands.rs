use std::fmt::Write as _;
use std::path::Path;

use anyhow::{ensure, Context, Result};
use kf_core::diagnostics::{
    analyze, convergence_bound, kaczmarz_solvability, worst_case_rhs, DiagnosticsReport, Outcome, Solvability,
};
use kf_core::kaczmarz::normalize_rows;
use kf_core::mtx::{write_matrix_market_array, write_matrix_market_triangular};
use kf_core::systems::{correlation_matrix, reconstruct_from_g};
use kf_core::{
    auxiliary_sequence, cyclic_solve, data_driven_pass, generate_system, DenseMatrix, KaczmarzTrajectory, LinearSystem,
    TriangularPair, UnitVectorSystem, Vector,
};
use log::{debug, info};
use serde::Serialize;

use crate::io::{conjugated_rows, pairs, read_matrix, read_vector, write_text};
use crate::{json, AnalyzeArgs, Command, GenerateArgs, GseqArgs, RunConfig, SolveArgs, SolveMode};

pub enum Status {
    Done,
    BudgetExhausted,
}

pub fn run(cfg: RunConfig) -> Result<Status> {
    match cfg.command {
        Command::Solve(args) => solve(&args),
        Command::Analyze(args) => analyze_command(&args).map(|_| Status::Done),
        Command::Bound(args) => bound(&args).map(|_| Status::Done),
        Command::Gseq(args) => gseq(&args).map(|_| Status::Done),
        Command::Generate(args) => generate(&args).map(|_| Status::Done),
    }
}

fn emit<T: Serialize>(value: &T, path: Option<&Path>) -> Result<()> {
    let text = json::to_string(value).context("serializing report")?;
    match path {
        Some(p) => write_text(p, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct SolveReport {
    mode: &'static str,
    solution: Vec<[f64; 2]>,
    residual_norm: f64,
    relative_residual: f64,
    sweeps_used: usize,
    converged: bool,
    error_norm: Outcome<f64>,
}

/// Iterate reached at the end of each sweep, paired with the residual recorded there.
fn sweep_ends(traj: &KaczmarzTrajectory, rows: usize, mode: SolveMode) -> Vec<(usize, f64, &Vector)> {
    match mode {
        SolveMode::Cyclic => traj
            .residual_norms
            .iter()
            .enumerate()
            .map(|(k, &r)| (k, r, &traj.iterates[k * rows]))
            .collect(),
        SolveMode::Pass => traj
            .residual_norms
            .iter()
            .enumerate()
            .map(|(k, &r)| (k + 1, r, &traj.iterates[(k + 1) * rows - 1]))
            .collect(),
    }
}

fn solve(args: &SolveArgs) -> Result<Status> {
    let a = read_matrix(&args.matrix)?;
    let b = read_vector(&args.rhs)?;
    let exact = args.exact.as_deref().map(read_vector).transpose()?;
    if let Some(x) = &exact {
        ensure!(
            x.len() == a.cols(),
            "exact solution has length {}, expected {}",
            x.len(),
            a.cols()
        );
    }
    let system = LinearSystem::new(a, b)?;
    let rows = system.matrix().rows();
    let sweeps = usize::try_from(args.sweeps)?;
    info!(
        "solving {}x{} system, mode {:?}",
        rows,
        system.matrix().cols(),
        args.mode
    );

    let b_norm = system.rhs().norm();
    let threshold = if b_norm > 0.0 { args.tol * b_norm } else { args.tol };
    let traj = match args.mode {
        SolveMode::Cyclic => cyclic_solve(&system, &Vector::zeros(system.matrix().cols()), sweeps, args.tol)?,
        SolveMode::Pass => data_driven_pass(&system, sweeps)?,
    };
    let residual = *traj.residual_norms.last().expect("at least one residual");
    let converged = match args.mode {
        SolveMode::Cyclic => traj.converged,
        SolveMode::Pass => residual <= threshold,
    };

    if let Some(path) = &args.trace {
        let mut csv = String::from("iter,residual,error\n");
        for (k, r, x) in sweep_ends(&traj, rows, args.mode) {
            match &exact {
                Some(t) => writeln!(csv, "{k},{r:.16e},{:.16e}", t.sub(x).norm())?,
                None => writeln!(csv, "{k},{r:.16e},")?,
            }
        }
        write_text(path, &csv)?;
    }

    let solution = traj.last();
    let report = SolveReport {
        mode: match args.mode {
            SolveMode::Cyclic => "cyclic",
            SolveMode::Pass => "pass",
        },
        solution: pairs(solution),
        residual_norm: residual,
        relative_residual: if b_norm > 0.0 { residual / b_norm } else { residual },
        sweeps_used: traj.sweeps,
        converged,
        error_norm: match &exact {
            Some(x) => Outcome::from_result(Ok(x.sub(solution).norm())),
            None => Outcome::missing("no exact solution supplied"),
        },
    };
    emit(&report, args.report.as_deref())?;
    debug!("residual {residual:e} after {} sweeps", traj.sweeps);
    Ok(if converged {
        Status::Done
    } else {
        Status::BudgetExhausted
    })
}

#[derive(Serialize)]
struct AnalyzeReport {
    /// `||a_n||` for each input row.
    row_scales: Vec<f64>,
    #[serde(flatten)]
    report: DiagnosticsReport,
}

fn normalized_system(a: &DenseMatrix) -> Result<(UnitVectorSystem, Vec<f64>)> {
    let n = normalize_rows(&LinearSystem::new(a.clone(), Vector::zeros(a.rows()))?)?;
    Ok((n.system, n.scales))
}

fn analyze_command(args: &AnalyzeArgs) -> Result<()> {
    let a = read_matrix(&args.matrix)?;
    let tols = args.tolerances.tolerances();
    let (e, row_scales) = normalized_system(&a)?;
    let report = analyze(&e, Some(&a), &tols)?;
    emit(&AnalyzeReport { row_scales, report }, args.report.as_deref())
}

#[derive(Serialize)]
struct WorstCaseReport {
    rhs: Vec<[f64; 2]>,
    limiting_error: f64,
}

#[derive(Serialize)]
struct BoundReport {
    convergence_bound: Outcome<kf_core::diagnostics::ConvergenceBound>,
    solvability: Outcome<Solvability>,
    worst_case: Outcome<WorstCaseReport>,
}

fn bound(args: &AnalyzeArgs) -> Result<()> {
    let a = read_matrix(&args.matrix)?;
    let tols = args.tolerances.tolerances();
    tols.validate()?;
    let (e, _) = normalized_system(&a)?;
    let solvability = if a.is_square() {
        Outcome::from_result(kaczmarz_solvability(&a, &tols))
    } else {
        Outcome::missing(format!("matrix is {}x{}, not square", a.rows(), a.cols()))
    };
    let worst_case = match solvability.value {
        Some(Solvability::NotOrthogonalRows) => Outcome::from_result(worst_case_rhs(&a).map(|w| WorstCaseReport {
            rhs: pairs(&w.rhs),
            limiting_error: w.limiting_error,
        })),
        Some(Solvability::AlwaysConverges) => Outcome::missing("one pass solves every right-hand side"),
        Some(Solvability::NotSurjective) => Outcome::missing("matrix is not invertible"),
        None => Outcome::missing("no solvability verdict"),
    };
    let report = BoundReport {
        convergence_bound: Outcome::from_result(convergence_bound(&e, &tols)),
        solvability,
        worst_case,
    };
    emit(&report, args.report.as_deref())
}

#[derive(Serialize)]
struct GseqReport {
    count: usize,
    dim: usize,
    g_file: String,
    m_file: String,
    c_file: String,
    row_scales: Vec<f64>,
    /// `max_n ||e_n - sum_{i<=n} m_ni g_i||`
    reconstruction_error: f64,
    inverse_residual: f64,
}

fn gseq(args: &GseqArgs) -> Result<()> {
    let rows = read_matrix(&args.matrix)?;
    let (e, row_scales) = if args.normalize {
        normalized_system(&rows)?
    } else {
        let vectors = (0..rows.rows()).map(|i| rows.row_vector(i).conj()).collect();
        let e = UnitVectorSystem::new(vectors).context("rows must have unit norm (pass --normalize to rescale)")?;
        (e, vec![1.0; rows.rows()])
    };
    let g = auxiliary_sequence(&e);
    let pair = TriangularPair::new(&e);
    let reconstruction_error = (0..e.len())
        .map(|n| reconstruct_from_g(&e, &g, n).map(|v| v.sub(&e.vectors()[n]).norm()))
        .collect::<kf_core::Result<Vec<f64>>>()?
        .into_iter()
        .fold(0.0, f64::max);

    let files = ["g", "M", "C"].map(|s| format!("{}_{s}.mtx", args.out_prefix));
    write_text(
        Path::new(&files[0]),
        &write_matrix_market_array(&conjugated_rows(g.vectors())),
    )?;
    write_text(
        Path::new(&files[1]),
        &write_matrix_market_triangular(&correlation_matrix(&e)),
    )?;
    write_text(Path::new(&files[2]), &write_matrix_market_triangular(&pair.c))?;
    let [g_file, m_file, c_file] = files;
    emit(
        &GseqReport {
            count: e.len(),
            dim: e.dim(),
            g_file,
            m_file,
            c_file,
            row_scales,
            reconstruction_error,
            inverse_residual: pair.inverse_residual(),
        },
        None,
    )
}

fn generate(args: &GenerateArgs) -> Result<()> {
    let e = generate_system(
        args.kind,
        usize::try_from(args.dim)?,
        usize::try_from(args.count)?,
        args.seed,
    )?;
    write_text(&args.out, &write_matrix_market_array(&conjugated_rows(e.vectors())))?;
    info!(
        "wrote {} {} vectors in C^{} to {}",
        e.len(),
        args.kind,
        e.dim(),
        args.out.display()
    );
    Ok(())
}
