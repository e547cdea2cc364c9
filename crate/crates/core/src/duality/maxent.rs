//! Maximum-entropy barycentric coordinates on a convex polygon.
//!
//! Maximizing the Shannon entropy subject to the constant and linear
//! reproducing conditions yields the DtP map `phi_i = Z_i / Z` with
//! `Z_i = exp(-lambda . (v_i - x))`, and the dual reduces to the
//! unconstrained convex minimization of `ln Z(lambda)` in two variables,
//! whatever the vertex count.

use crate::error::{Error, Result};
use nalgebra::{Matrix2, Vector2};

#[derive(Debug, Clone)]
pub struct MaxentResult {
    /// Shape function values at the query point, positive and summing to one.
    pub phi: Vec<f64>,
    pub lambda_star: [f64; 2],
    /// Partition function at the optimum.
    pub partition: f64,
    pub iterations: usize,
}

pub const DEFAULT_TOL: f64 = 1e-12;
const MAX_ITER: usize = 200;

/// Shifted-exponent evaluation of ln Z, its gradient and Hessian.
///
/// Exponents are offset by their maximum before exponentiation so the
/// partition sum never overflows; the gradient is the negative
/// phi-weighted mean of `v_i - x` and the Hessian its covariance.
fn log_partition(
    vertices: &[Vector2<f64>],
    point: Vector2<f64>,
    lambda: Vector2<f64>,
    phi: &mut [f64],
) -> (f64, Vector2<f64>, Matrix2<f64>) {
    let exponents: Vec<f64> = vertices
        .iter()
        .map(|v| -lambda.dot(&(v - point)))
        .collect();
    let m = exponents.iter().fold(f64::NEG_INFINITY, |a, &b| a.max(b));
    let mut z_shifted = 0.0;
    for (phi_i, &e) in phi.iter_mut().zip(&exponents) {
        *phi_i = (e - m).exp();
        z_shifted += *phi_i;
    }
    for phi_i in phi.iter_mut() {
        *phi_i /= z_shifted;
    }
    let ln_z = m + z_shifted.ln();
    let mut mean = Vector2::zeros();
    for (phi_i, v) in phi.iter().zip(vertices) {
        mean += *phi_i * (v - point);
    }
    let mut cov = Matrix2::zeros();
    for (phi_i, v) in phi.iter().zip(vertices) {
        let d = v - point;
        cov += *phi_i * d * d.transpose();
    }
    cov -= mean * mean.transpose();
    (ln_z, -mean, cov)
}

fn strictly_inside(vertices: &[Vector2<f64>], point: Vector2<f64>) -> bool {
    let n = vertices.len();
    for i in 0..n {
        let a = vertices[i];
        let b = vertices[(i + 1) % n];
        let edge = b - a;
        let to_p = point - a;
        if edge.x * to_p.y - edge.y * to_p.x <= 0.0 {
            return false;
        }
    }
    true
}

/// Maximum-entropy coordinates of `point` inside a convex,
/// counterclockwise polygon.
pub fn maxent_coordinates(
    vertices: &[(f64, f64)],
    point: (f64, f64),
    tol: Option<f64>,
) -> Result<MaxentResult> {
    let tol = tol.unwrap_or(DEFAULT_TOL);
    if vertices.len() < 3 {
        return Err(Error::invalid(format!(
            "polygon needs at least 3 vertices, got {}",
            vertices.len()
        )));
    }
    let verts: Vec<Vector2<f64>> = vertices.iter().map(|&(x, y)| Vector2::new(x, y)).collect();
    let p = Vector2::new(point.0, point.1);
    if !strictly_inside(&verts, p) {
        return Err(Error::domain(format!(
            "point ({}, {}) is not strictly inside the polygon",
            point.0, point.1
        )));
    }

    // Newton with a line search on the convex objective ln Z from
    // lambda = 0. The gradient is exactly the reproduction residual
    // `-sum(phi_i (v_i - x))`, so unlike the objective it carries no
    // cancellation floor near the optimum; a step is accepted when it
    // shrinks either the objective or the gradient norm.
    let mut lambda = Vector2::zeros();
    let mut phi = vec![0.0; verts.len()];
    let mut trial_phi = vec![0.0; verts.len()];
    let (mut value, mut grad, mut hess) = log_partition(&verts, p, lambda, &mut phi);
    for iter in 0..MAX_ITER {
        if grad.norm() <= tol {
            let z = value.exp();
            return Ok(MaxentResult {
                phi,
                lambda_star: [lambda[0], lambda[1]],
                partition: z,
                iterations: iter,
            });
        }
        let step = hess.lu().solve(&(-grad)).ok_or_else(|| {
            Error::Degenerate("singular maxent Hessian; point too close to the boundary".to_string())
        })?;
        let mut alpha = 1.0;
        let mut advanced = false;
        for _ in 0..60 {
            let trial = lambda + alpha * step;
            let (tv, tg, th) = log_partition(&verts, p, trial, &mut trial_phi);
            let sufficient = tv <= value - 1e-4 * alpha * grad.norm_squared()
                || tg.norm() < grad.norm();
            if sufficient {
                lambda = trial;
                value = tv;
                grad = tg;
                hess = th;
                phi.copy_from_slice(&trial_phi);
                advanced = true;
                break;
            }
            alpha *= 0.5;
        }
        if !advanced {
            // Neither the objective nor the residual can improve in f64;
            // accept when the reproducing conditions already hold tightly.
            if grad.norm() <= tol.max(1e-10) {
                let z = value.exp();
                return Ok(MaxentResult {
                    phi,
                    lambda_star: [lambda[0], lambda[1]],
                    partition: z,
                    iterations: iter,
                });
            }
            return Err(Error::NoConvergence(iter));
        }
    }
    Err(Error::NoConvergence(MAX_ITER))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};

    const TRIANGLE: [(f64, f64); 3] = [(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)];
    const SQUARE: [(f64, f64); 4] = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)];

    #[test]
    fn triangle_centroid_gives_thirds() {
        let r = maxent_coordinates(&TRIANGLE, (1.0 / 3.0, 1.0 / 3.0), None).unwrap();
        for &phi in &r.phi {
            assert_abs_diff_eq!(phi, 1.0 / 3.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn square_center_gives_quarters() {
        let r = maxent_coordinates(&SQUARE, (0.5, 0.5), None).unwrap();
        for &phi in &r.phi {
            assert_abs_diff_eq!(phi, 0.25, epsilon = 1e-12);
        }
    }

    #[test]
    fn off_center_square_point_reproduces_and_reflects() {
        let pt = (0.25, 0.5);
        let r = maxent_coordinates(&SQUARE, pt, None).unwrap();
        let sum: f64 = r.phi.iter().sum();
        assert_abs_diff_eq!(sum, 1.0, epsilon = 1e-12);
        let (mut cx, mut cy) = (0.0, 0.0);
        for (phi, v) in r.phi.iter().zip(&SQUARE) {
            cx += phi * v.0;
            cy += phi * v.1;
        }
        assert_abs_diff_eq!(cx, pt.0, epsilon = 1e-12);
        assert_abs_diff_eq!(cy, pt.1, epsilon = 1e-12);
        // The point lies on the horizontal midline, so the coordinates are
        // symmetric under the reflection y -> 1 - y.
        assert_abs_diff_eq!(r.phi[0], r.phi[3], epsilon = 1e-12);
        assert_abs_diff_eq!(r.phi[1], r.phi[2], epsilon = 1e-12);
        assert!(r.phi.iter().all(|&p| p > 0.0));
    }

    #[test]
    fn boundary_and_outside_points_are_rejected() {
        assert!(matches!(
            maxent_coordinates(&SQUARE, (0.5, 0.0), None),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            maxent_coordinates(&SQUARE, (1.5, 0.5), None),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn random_pentagon_reproduction() {
        // Convex pentagon and interior points from barycentric samples.
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
        let pentagon: Vec<(f64, f64)> = (0..5)
            .map(|k| {
                let ang = 2.0 * std::f64::consts::PI * k as f64 / 5.0;
                let rad = 0.8 + 0.2 * ((k * 7 % 5) as f64 / 5.0);
                (rad * ang.cos(), rad * ang.sin())
            })
            .collect();
        let centroid = pentagon
            .iter()
            .fold((0.0, 0.0), |acc, v| (acc.0 + v.0 / 5.0, acc.1 + v.1 / 5.0));
        for _ in 0..100 {
            let w: f64 = rng.random_range(0.05..0.9);
            let k = rng.random_range(0..5usize);
            let target = (
                centroid.0 + w * (pentagon[k].0 - centroid.0),
                centroid.1 + w * (pentagon[k].1 - centroid.1),
            );
            let r = maxent_coordinates(&pentagon, target, None).unwrap();
            let sum: f64 = r.phi.iter().sum();
            assert_abs_diff_eq!(sum, 1.0, epsilon = 1e-10);
            let (mut cx, mut cy) = (0.0, 0.0);
            for (phi, v) in r.phi.iter().zip(&pentagon) {
                cx += phi * v.0;
                cy += phi * v.1;
            }
            assert_abs_diff_eq!(cx, target.0, epsilon = 1e-10);
            assert_abs_diff_eq!(cy, target.1, epsilon = 1e-10);
            assert!(r.phi.iter().all(|&p| p > 0.0));
        }
    }
}
