//! Dual maximization for the pair of quadratics
//! `x^2 + y^2 = 3`, `x^2 - y^2 = 1` with the convex potential
//! `H = beta [ (x - xb)^2 + (y - yb)^2 ]` centered on a base state.
//!
//! Stationarity of the Lagrangian in the primal variables gives the DtP map
//!
//! ```text
//! x = beta*xb / (beta - l1 - l2),   y = beta*yb / (beta - l1 + l2),
//! ```
//!
//! and the concave dual `S(l) = L(x(l), y(l), l)` is maximized by damped
//! Newton ascent from the origin; for moderate `beta` the DtP singularities
//! sit far from the origin so the zero start is safe.

use crate::error::{Error, Result};
use nalgebra::{Matrix2, Vector2};

#[derive(Debug, Clone)]
pub struct QuadPairResult {
    pub lambda_star: [f64; 2],
    pub x: f64,
    pub y: f64,
    pub beta: f64,
    pub base: (f64, f64),
    /// Residuals of the two primal equations at the recovered point.
    pub primal_residual: [f64; 2],
    pub iterations: usize,
}

pub const DEFAULT_TOL: f64 = 1e-10;
const MAX_ITER: usize = 100;
const SINGULAR_GUARD: f64 = 1e-8;

struct DtpPoint {
    x: f64,
    y: f64,
    den_x: f64,
    den_y: f64,
}

fn dtp(beta: f64, base: (f64, f64), l: Vector2<f64>) -> DtpPoint {
    let den_x = beta - l[0] - l[1];
    let den_y = beta - l[0] + l[1];
    DtpPoint {
        x: beta * base.0 / den_x,
        y: beta * base.1 / den_y,
        den_x,
        den_y,
    }
}

fn dual_value(beta: f64, base: (f64, f64), l: Vector2<f64>) -> f64 {
    let p = dtp(beta, base, l);
    beta * ((p.x - base.0).powi(2) + (p.y - base.1).powi(2))
        + l[0] * (3.0 - p.x * p.x - p.y * p.y)
        + l[1] * (1.0 - p.x * p.x + p.y * p.y)
}

/// Maximize the dual of the two-quadratic system and recover the primal
/// point through the DtP map.
pub fn solve_quadratic_pair(
    beta: f64,
    base: (f64, f64),
    tol: Option<f64>,
) -> Result<QuadPairResult> {
    let tol = tol.unwrap_or(DEFAULT_TOL);
    if beta == 0.0 || !beta.is_finite() {
        return Err(Error::invalid(format!("beta must be finite and nonzero, got {beta}")));
    }
    let mut l = Vector2::zeros();
    let mut value = dual_value(beta, base, l);
    for iter in 0..MAX_ITER {
        let p = dtp(beta, base, l);
        if p.den_x.abs() < SINGULAR_GUARD || p.den_y.abs() < SINGULAR_GUARD {
            return Err(Error::SingularDtp(format!(
                "DtP denominators ({:.3e}, {:.3e}) vanish at lambda = ({:.6}, {:.6})",
                p.den_x, p.den_y, l[0], l[1]
            )));
        }
        // Envelope theorem: grad S = dL/dlambda at the mapped primal point.
        let grad = Vector2::new(
            3.0 - p.x * p.x - p.y * p.y,
            1.0 - p.x * p.x + p.y * p.y,
        );
        if grad.norm() <= tol {
            return Ok(QuadPairResult {
                lambda_star: [l[0], l[1]],
                x: p.x,
                y: p.y,
                beta,
                base,
                primal_residual: [grad[0].abs(), grad[1].abs()],
                iterations: iter,
            });
        }
        let gx = 2.0 * p.x * p.x / p.den_x;
        let gy = 2.0 * p.y * p.y / p.den_y;
        let hess = Matrix2::new(-gx - gy, -gx + gy, -gx + gy, -gx - gy);
        let step = hess
            .lu()
            .solve(&(-grad))
            .ok_or_else(|| Error::Degenerate("singular dual Hessian".to_string()))?;

        // Halve the step while it would cross a DtP singularity (denominator
        // sign change) or fail to increase the dual.
        let mut alpha = 1.0;
        let mut accepted = false;
        for _ in 0..60 {
            let trial = l + alpha * step;
            let tp = dtp(beta, base, trial);
            let crosses = tp.den_x.signum() != p.den_x.signum()
                || tp.den_y.signum() != p.den_y.signum()
                || tp.den_x.abs() < SINGULAR_GUARD
                || tp.den_y.abs() < SINGULAR_GUARD;
            if !crosses {
                let tv = dual_value(beta, base, trial);
                if tv >= value {
                    l = trial;
                    value = tv;
                    accepted = true;
                    break;
                }
            }
            alpha *= 0.5;
        }
        if !accepted {
            return Err(Error::SingularDtp(
                "dual ascent step rejected near a DtP singularity".to_string(),
            ));
        }
    }
    Err(Error::NoConvergence(MAX_ITER))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn base_plus_plus_recovers_sqrt2_one() {
        let r = solve_quadratic_pair(10.0, (1.0, 1.0), None).unwrap();
        assert_abs_diff_eq!(r.x, 2.0_f64.sqrt(), epsilon = 1e-8);
        assert_abs_diff_eq!(r.y, 1.0, epsilon = 1e-8);
        // The maximizer sits on the diagonal of the dual plane.
        assert_abs_diff_eq!(r.lambda_star[0], r.lambda_star[1], epsilon = 1e-8);
        assert!(r.primal_residual[0] <= 1e-8 && r.primal_residual[1] <= 1e-8);
    }

    #[test]
    fn sign_symmetric_bases_pick_matching_roots() {
        let r = solve_quadratic_pair(10.0, (-1.0, -1.0), None).unwrap();
        assert_abs_diff_eq!(r.x, -(2.0_f64.sqrt()), epsilon = 1e-8);
        assert_abs_diff_eq!(r.y, -1.0, epsilon = 1e-8);

        let r = solve_quadratic_pair(10.0, (1.0, -1.0), None).unwrap();
        assert_abs_diff_eq!(r.x, 2.0_f64.sqrt(), epsilon = 1e-8);
        assert_abs_diff_eq!(r.y, -1.0, epsilon = 1e-8);
        assert!(r.primal_residual[0] <= 1e-8 && r.primal_residual[1] <= 1e-8);
    }

    #[test]
    fn dual_value_is_nondecreasing_along_damped_iterates() {
        // Re-run the ascent manually and check monotonicity of S.
        let beta = 10.0;
        let base = (1.0, 1.0);
        let mut l = Vector2::zeros();
        let mut prev = dual_value(beta, base, l);
        for _ in 0..50 {
            let p = dtp(beta, base, l);
            let grad = Vector2::new(3.0 - p.x * p.x - p.y * p.y, 1.0 - p.x * p.x + p.y * p.y);
            if grad.norm() <= 1e-12 {
                break;
            }
            let gx = 2.0 * p.x * p.x / p.den_x;
            let gy = 2.0 * p.y * p.y / p.den_y;
            let hess = Matrix2::new(-gx - gy, -gx + gy, -gx + gy, -gx - gy);
            let step = hess.lu().solve(&(-grad)).unwrap();
            let mut alpha = 1.0;
            loop {
                let trial = l + alpha * step;
                let tv = dual_value(beta, base, trial);
                if tv >= prev {
                    l = trial;
                    prev = tv;
                    break;
                }
                alpha *= 0.5;
                assert!(alpha > 1e-18);
            }
        }
        let p = dtp(beta, base, l);
        assert_abs_diff_eq!(p.x, 2.0_f64.sqrt(), epsilon = 1e-6);
    }

    #[test]
    fn zero_beta_rejected() {
        assert!(solve_quadratic_pair(0.0, (1.0, 1.0), None).is_err());
    }
}
