//! Refinement sweeps with fitted convergence rates on a log(error) versus
//! log(dof) scale, matching how the rates are read off the error plots.

use super::norms::{error_norms, ErrorPair};
use super::primal::PrimalSolution;
use crate::ansatz::{build_dual_ansatz, BasisConfig, BasisFamily};
use crate::assembly::assemble_with_mode;
use crate::error::{Error, Result};
use crate::parallel::{map_ordered, ExecMode};
use crate::problem::ProblemSpec;
use crate::solver::solve_symmetric_consistent;

#[derive(Debug, Clone)]
pub struct ConvergenceRecord {
    pub points: Vec<ErrorPair>,
    pub rate_u: f64,
    pub rate_q: f64,
}

/// Run one refinement level end to end.
fn run_level(
    spec: &ProblemSpec,
    family: BasisFamily,
    degrees: (usize, usize),
    n: usize,
    mode: ExecMode,
) -> Result<ErrorPair> {
    let (p, q) = degrees;
    let ansatz = build_dual_ansatz(
        spec,
        BasisConfig::new(family, q, n),
        BasisConfig::new(family, p, n),
    )?;
    let system = assemble_with_mode(spec, &ansatz, mode)?;
    let report = solve_symmetric_consistent(&system, None)?;
    let solution = PrimalSolution::from_report(spec, &ansatz, &report);
    error_norms(&solution)
}

/// Least-squares slope of `ln err` against `ln dof`, negated so a decay of
/// `dof^{-r}` reports the positive rate `r`.
fn fitted_rate(points: &[ErrorPair], pick: impl Fn(&ErrorPair) -> f64) -> f64 {
    let xs: Vec<f64> = points.iter().map(|p| (p.dof as f64).ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| pick(p).max(1e-300).ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut cov = 0.0;
    let mut var = 0.0;
    for (x, y) in xs.iter().zip(&ys) {
        cov += (x - mx) * (y - my);
        var += (x - mx) * (x - mx);
    }
    -(cov / var)
}

pub fn convergence_study(
    spec: &ProblemSpec,
    family: BasisFamily,
    degrees: (usize, usize),
    n_list: &[usize],
) -> Result<ConvergenceRecord> {
    convergence_study_with_mode(spec, family, degrees, n_list, ExecMode::default())
}

/// Assemble, solve and measure each refinement level (levels run
/// concurrently under the parallel mode), then fit the two rates.
pub fn convergence_study_with_mode(
    spec: &ProblemSpec,
    family: BasisFamily,
    degrees: (usize, usize),
    n_list: &[usize],
    mode: ExecMode,
) -> Result<ConvergenceRecord> {
    if n_list.len() < 3 {
        return Err(Error::invalid(format!(
            "a convergence study needs at least 3 refinement levels, got {}",
            n_list.len()
        )));
    }
    if n_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::invalid(
            "refinement levels must be strictly increasing".to_string(),
        ));
    }
    let results = map_ordered(mode, n_list, |&n| {
        run_level(spec, family, degrees, n, mode)
    });
    let mut points = Vec::with_capacity(results.len());
    for r in results {
        points.push(r?);
    }
    debug_assert!(points.windows(2).all(|w| w[0].dof < w[1].dof));
    let rate_u = fitted_rate(&points, |p| p.e_u);
    let rate_q = fitted_rate(&points, |p| p.e_q);
    Ok(ConvergenceRecord {
        points,
        rate_u,
        rate_q,
    })
}
