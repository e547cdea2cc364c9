//! Shallow-network RePU families with fixed hidden-layer weights and biases.
//!
//! The hidden layer is frozen at `z = x - x_i` and `z = x_i - x` over the
//! uniform sites, so the family is linear in the output-layer coefficients
//! and needs no training. The functions span piecewise polynomials but are
//! linearly dependent (a frame, not a basis); the solver's minimum-norm
//! path handles the resulting singular consistent systems.

use super::Eval1D;
use crate::error::{Error, Result};

/// `sigma(z; p) = max(0, z)^p`.
pub fn repu_sigma(z: f64, p: usize) -> f64 {
    if z > 0.0 {
        z.powi(p as i32)
    } else {
        0.0
    }
}

/// `d/dz sigma(z; p) = p max(0, z)^{p-1}`, with the limit from `z > 0` taken
/// at `z = 0` so evaluation is right-continuous in the argument.
pub fn repu_sigma_dx(z: f64, p: usize) -> f64 {
    if z > 0.0 {
        p as f64 * z.powi(p as i32 - 1)
    } else if z == 0.0 && p == 1 {
        1.0
    } else {
        0.0
    }
}

/// Which dual field the family approximates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RepuKind {
    /// Plain RePU frame `sigma(x - x_i; p)`, `sigma(x_i - x; p)`.
    Mu,
    /// Barycentric convex combination `(1-x) sigma(x - x_i; q)` and
    /// `x sigma(x_i - x; q)`; every member vanishes at both interval ends.
    Lambda,
}

#[derive(Debug, Clone)]
pub struct RepuBasis {
    degree: usize,
    sites: Vec<f64>,
    kind: RepuKind,
}

impl RepuBasis {
    /// Family over `n` uniform spans of `[0, 1]` with `2n` member functions:
    /// ascending branch at sites `x_0..x_{n-1}`, descending at `x_1..x_n`.
    pub fn uniform(degree: usize, n: usize, kind: RepuKind) -> Result<Self> {
        if degree < 1 {
            return Err(Error::invalid(format!("degree must be >= 1, got {degree}")));
        }
        if n < 1 {
            return Err(Error::invalid(format!("site count must be >= 1, got {n}")));
        }
        let sites = (0..=n).map(|k| k as f64 / n as f64).collect();
        Ok(RepuBasis {
            degree,
            sites,
            kind,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn kind(&self) -> RepuKind {
        self.kind
    }

    pub fn n_funcs(&self) -> usize {
        2 * (self.sites.len() - 1)
    }

    pub fn sites(&self) -> &[f64] {
        &self.sites
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.sites[0], *self.sites.last().unwrap())
    }

    /// Values and first derivatives of the whole family at `x`.
    pub fn eval(&self, x: f64) -> Result<Eval1D> {
        let (a, b) = self.domain();
        if x < a || x > b || !x.is_finite() {
            return Err(Error::domain(format!("x = {x} outside [{a}, {b}]")));
        }
        let n = self.sites.len() - 1;
        let p = self.degree;
        let mut values = vec![0.0; 2 * n];
        let mut derivs = vec![0.0; 2 * n];
        match self.kind {
            RepuKind::Mu => {
                for i in 0..n {
                    let z = x - self.sites[i];
                    values[i] = repu_sigma(z, p);
                    derivs[i] = repu_sigma_dx(z, p);
                }
                for i in 1..=n {
                    let z = self.sites[i] - x;
                    values[n + i - 1] = repu_sigma(z, p);
                    derivs[n + i - 1] = -repu_sigma_dx(z, p);
                }
            }
            RepuKind::Lambda => {
                // Product rule with the barycentric factors (1-x) and x;
                // the factors are exactly zero at the ends, so each member
                // vanishes there bitwise.
                for i in 0..n {
                    let z = x - self.sites[i];
                    let s = repu_sigma(z, p);
                    values[i] = (1.0 - x) * s;
                    derivs[i] = -s + (1.0 - x) * repu_sigma_dx(z, p);
                }
                for i in 1..=n {
                    let z = self.sites[i] - x;
                    let s = repu_sigma(z, p);
                    values[n + i - 1] = x * s;
                    derivs[n + i - 1] = s - x * repu_sigma_dx(z, p);
                }
            }
        }
        Ok(Eval1D {
            first: 0,
            values,
            derivs,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn sigma_closed_forms() {
        assert_abs_diff_eq!(repu_sigma(0.5, 2), 0.25);
        assert_abs_diff_eq!(repu_sigma_dx(0.5, 2), 1.0);
        for p in 1..=5 {
            assert_eq!(repu_sigma(-0.3, p), 0.0);
            assert_eq!(repu_sigma_dx(-0.3, p), 0.0);
        }
    }

    #[test]
    fn family_sizes_and_domain() {
        let mu = RepuBasis::uniform(2, 10, RepuKind::Mu).unwrap();
        assert_eq!(mu.n_funcs(), 20);
        assert_eq!(mu.sites().len(), 11);
        assert_eq!(mu.domain(), (0.0, 1.0));
        assert!(RepuBasis::uniform(0, 4, RepuKind::Mu).is_err());
        assert!(RepuBasis::uniform(2, 0, RepuKind::Mu).is_err());
    }

    #[test]
    fn lambda_family_vanishes_exactly_at_ends() {
        let basis = RepuBasis::uniform(3, 10, RepuKind::Lambda).unwrap();
        for x in [0.0, 1.0] {
            let ev = basis.eval(x).unwrap();
            assert!(ev.values.iter().all(|&v| v == 0.0));
        }
    }

    #[test]
    fn lambda_derivatives_match_central_differences() {
        let basis = RepuBasis::uniform(3, 10, RepuKind::Lambda).unwrap();
        let x = 0.37;
        let h = 1e-6;
        let ev = basis.eval(x).unwrap();
        let lo = basis.eval(x - h).unwrap();
        let hi = basis.eval(x + h).unwrap();
        for k in 0..basis.n_funcs() {
            let fd = (hi.values[k] - lo.values[k]) / (2.0 * h);
            let scale = ev.derivs[k].abs().max(1.0);
            assert_abs_diff_eq!(ev.derivs[k], fd, epsilon = 1e-6 * scale);
        }
    }

    #[test]
    fn mu_derivatives_match_central_differences() {
        let basis = RepuBasis::uniform(2, 7, RepuKind::Mu).unwrap();
        for &x in &[0.11, 0.5 + 1e-3, 0.93] {
            let h = 1e-6;
            let ev = basis.eval(x).unwrap();
            let lo = basis.eval(x - h).unwrap();
            let hi = basis.eval(x + h).unwrap();
            for k in 0..basis.n_funcs() {
                let fd = (hi.values[k] - lo.values[k]) / (2.0 * h);
                assert_abs_diff_eq!(ev.derivs[k], fd, epsilon = 1e-6 * ev.derivs[k].abs().max(1.0));
            }
        }
    }

    #[test]
    fn smoothness_across_sites_for_degree_at_least_two() {
        for &(p, kind) in &[(2, RepuKind::Mu), (3, RepuKind::Lambda)] {
            let basis = RepuBasis::uniform(p, 5, kind).unwrap();
            for k in 1..5 {
                let site = k as f64 / 5.0;
                let l = basis.eval(site - 1e-9).unwrap();
                let r = basis.eval(site + 1e-9).unwrap();
                for i in 0..basis.n_funcs() {
                    assert_abs_diff_eq!(l.values[i], r.values[i], epsilon = 1e-10);
                    assert_abs_diff_eq!(l.derivs[i], r.derivs[i], epsilon = 1e-10);
                }
            }
        }
    }
}
