//! Dual solution of `A x = b` with the quadratic potential `H(x) = x'x/2`:
//! maximize the concave dual, i.e. solve the normal equations
//! `A A' lambda = b`, and recover the primal through `x = A' lambda`.
//! The recovered residual doubles as a consistency certificate — when `b`
//! leaves the column space no dual solution reproduces it, unlike plain
//! least squares which silently returns a spurious fit.

use crate::error::{Error, Result};
use nalgebra::{DMatrix, DVector};

#[derive(Debug, Clone)]
pub struct LinearDualResult {
    /// Minimum-norm solution of the dual normal equations.
    pub lambda_star: DVector<f64>,
    /// Primal solution recovered through the DtP map `x = A' lambda`.
    pub x_h: DVector<f64>,
    /// `||A x - b|| / max(1, ||b||)`.
    pub residual: f64,
}

/// Default consistency tolerance.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Relative eigenvalue cutoff of the rank-revealing dual solve.
const RANK_CUTOFF: f64 = 1e-12;

pub fn solve_linear_dual(
    a: &DMatrix<f64>,
    b: &DVector<f64>,
    tol: Option<f64>,
) -> Result<LinearDualResult> {
    let tol = tol.unwrap_or(DEFAULT_TOL);
    if a.nrows() != b.len() {
        return Err(Error::invalid(format!(
            "A has {} rows but b has {} entries",
            a.nrows(),
            b.len()
        )));
    }
    if a.iter().any(|v| !v.is_finite()) || b.iter().any(|v| !v.is_finite()) {
        return Err(Error::invalid("matrix entries must be finite".to_string()));
    }

    // A A' is symmetric positive semidefinite; a spectral decomposition is
    // rank-revealing and gives the minimum-norm solution directly.
    let gram = a * a.transpose();
    let eig = gram.symmetric_eigen();
    let max_eig = eig.eigenvalues.iter().fold(0.0_f64, |m, &v| m.max(v.abs()));
    let cutoff = RANK_CUTOFF * max_eig;
    let proj = eig.eigenvectors.transpose() * b;
    let mut coeffs = DVector::zeros(proj.len());
    for k in 0..proj.len() {
        if eig.eigenvalues[k].abs() > cutoff {
            coeffs[k] = proj[k] / eig.eigenvalues[k];
        }
    }
    let lambda_star = &eig.eigenvectors * coeffs;
    let x_h = a.transpose() * &lambda_star;
    let residual = (a * &x_h - b).norm() / b.norm().max(1.0);
    if residual > tol {
        return Err(Error::InconsistentSystem { residual, tol });
    }
    Ok(LinearDualResult {
        lambda_star,
        x_h,
        residual,
    })
}
