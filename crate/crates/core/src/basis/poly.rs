//! Explicit global polynomial families, used for the exact-algebra
//! verification solves where the dual fields are low-degree polynomials.

use super::Eval1D;
use crate::error::{Error, Result};

/// Dense polynomial in monomial form, ascending coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    pub coeffs: Vec<f64>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<f64>) -> Self {
        Polynomial { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Value and first derivative by Horner's scheme.
    pub fn eval(&self, x: f64) -> (f64, f64) {
        let mut v = 0.0;
        let mut d = 0.0;
        for &c in self.coeffs.iter().rev() {
            d = d * x + v;
            v = v * x + c;
        }
        (v, d)
    }
}

/// A finite list of polynomials treated as an approximating family on
/// `[0, 1]`.
#[derive(Debug, Clone)]
pub struct PolyBasis {
    funcs: Vec<Polynomial>,
    vanishes_at_ends: bool,
}

impl PolyBasis {
    pub fn new(funcs: Vec<Polynomial>) -> Result<Self> {
        if funcs.is_empty() {
            return Err(Error::invalid("polynomial family must be nonempty".to_string()));
        }
        let vanishes = funcs.iter().all(|f| {
            let (v0, _) = f.eval(0.0);
            let (v1, _) = f.eval(1.0);
            v0 == 0.0 && v1 == 0.0
        });
        Ok(PolyBasis {
            funcs,
            vanishes_at_ends: vanishes,
        })
    }

    pub fn n_funcs(&self) -> usize {
        self.funcs.len()
    }

    pub fn degree(&self) -> usize {
        self.funcs.iter().map(|f| f.degree()).max().unwrap_or(0)
    }

    pub fn domain(&self) -> (f64, f64) {
        (0.0, 1.0)
    }

    pub fn breakpoints(&self) -> Vec<f64> {
        vec![0.0, 1.0]
    }

    pub fn vanishes_at_ends(&self) -> bool {
        self.vanishes_at_ends
    }

    pub fn eval(&self, x: f64) -> Result<Eval1D> {
        if !(0.0..=1.0).contains(&x) {
            return Err(Error::domain(format!("x = {x} outside [0, 1]")));
        }
        let mut values = Vec::with_capacity(self.funcs.len());
        let mut derivs = Vec::with_capacity(self.funcs.len());
        for f in &self.funcs {
            let (v, d) = f.eval(x);
            values.push(v);
            derivs.push(d);
        }
        Ok(Eval1D {
            first: 0,
            values,
            derivs,
        })
    }
}

/// Monomial family `1, x, ..., x^p` for the unconstrained dual field.
pub fn poly_mu_family(p: usize) -> Result<PolyBasis> {
    let funcs = (0..=p)
        .map(|k| {
            let mut c = vec![0.0; k + 1];
            c[k] = 1.0;
            Polynomial::new(c)
        })
        .collect();
    PolyBasis::new(funcs)
}

/// Bubble family `x^k (1 - x)` for `k = 1..q-1`; every member vanishes at
/// both ends, so the Dirichlet conditions hold by construction.
pub fn poly_lambda_family(q: usize) -> Result<PolyBasis> {
    if q < 2 {
        return Err(Error::invalid(format!(
            "bubble family needs degree >= 2, got {q}"
        )));
    }
    let funcs = (1..q)
        .map(|k| {
            // x^k - x^{k+1}
            let mut c = vec![0.0; k + 2];
            c[k] = 1.0;
            c[k + 1] = -1.0;
            Polynomial::new(c)
        })
        .collect();
    PolyBasis::new(funcs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn horner_value_and_derivative() {
        // 1 - 3x + x^2 + 3x^3
        let p = Polynomial::new(vec![1.0, -3.0, 1.0, 3.0]);
        let (v, d) = p.eval(0.5);
        assert_abs_diff_eq!(v, 1.0 - 1.5 + 0.25 + 0.375, epsilon = 1e-15);
        assert_abs_diff_eq!(d, -3.0 + 1.0 + 2.25, epsilon = 1e-15);
        let (v0, _) = p.eval(0.0);
        let (v1, _) = p.eval(1.0);
        assert_abs_diff_eq!(v0, 1.0);
        assert_abs_diff_eq!(v1, 2.0);
    }

    #[test]
    fn verification_families() {
        let mu = poly_mu_family(2).unwrap();
        assert_eq!(mu.n_funcs(), 3);
        assert_eq!(mu.degree(), 2);
        assert!(!mu.vanishes_at_ends());

        let lam = poly_lambda_family(3).unwrap();
        assert_eq!(lam.n_funcs(), 2);
        assert_eq!(lam.degree(), 3);
        assert!(lam.vanishes_at_ends());
        let ev = lam.eval(0.5).unwrap();
        assert_abs_diff_eq!(ev.values[0], 0.25, epsilon = 1e-15); // x(1-x)
        assert_abs_diff_eq!(ev.values[1], 0.125, epsilon = 1e-15); // x^2(1-x)
    }
}
