//! Univariate approximating families for the dual fields — B-splines,
//! RePU frames and explicit polynomial verification ansatz — plus their
//! tensor products on the space-time square.
//!
//! All families expose values and analytic first derivatives through a
//! common evaluation record; no equation in scope needs higher derivatives.

mod bspline;
mod poly;
mod repu;
mod tensor;

pub use bspline::BSplineBasis;
pub use poly::{poly_lambda_family, poly_mu_family, PolyBasis, Polynomial};
pub use repu::{repu_sigma, repu_sigma_dx, RepuBasis, RepuKind};
pub use tensor::{Eval2D, TensorBasis2D};

use crate::error::{Error, Result};

/// An open uniform knot vector on an interval.
#[derive(Debug, Clone)]
pub struct KnotVector {
    pub degree: usize,
    pub knots: Vec<f64>,
    /// Number of distinct spans between consecutive distinct knots.
    pub n_spans: usize,
    pub start: f64,
    pub end: f64,
}

/// Open uniform knot vector: end knots repeated `degree + 1` times with `n`
/// uniform spans, so B-splines interpolate at both interval ends.
pub fn make_open_knot_vector(degree: usize, n: usize, start: f64, end: f64) -> Result<KnotVector> {
    if degree < 1 {
        return Err(Error::invalid(format!("degree must be >= 1, got {degree}")));
    }
    if n < 1 {
        return Err(Error::invalid(format!("span count must be >= 1, got {n}")));
    }
    if !(end > start) || !start.is_finite() || !end.is_finite() {
        return Err(Error::invalid(format!(
            "invalid knot interval [{start}, {end}]"
        )));
    }
    let mut knots = Vec::with_capacity(n + 2 * degree + 1);
    knots.extend(std::iter::repeat_n(start, degree + 1));
    for k in 1..n {
        knots.push(start + (end - start) * k as f64 / n as f64);
    }
    knots.extend(std::iter::repeat_n(end, degree + 1));
    Ok(KnotVector {
        degree,
        knots,
        n_spans: n,
        start,
        end,
    })
}

/// Values and first derivatives of the functions that can be nonzero at a
/// point. Listed functions have consecutive indices `first..first + len`.
#[derive(Debug, Clone)]
pub struct Eval1D {
    pub first: usize,
    pub values: Vec<f64>,
    pub derivs: Vec<f64>,
}

impl Eval1D {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Value of a linear combination with the given full-length coefficients.
    pub fn combine(&self, coeffs: &[f64]) -> (f64, f64) {
        let mut v = 0.0;
        let mut d = 0.0;
        for (k, (&val, &der)) in self.values.iter().zip(&self.derivs).enumerate() {
            let c = coeffs[self.first + k];
            v += c * val;
            d += c * der;
        }
        (v, d)
    }
}

/// A univariate family of approximating functions for one dual field.
#[derive(Debug, Clone)]
pub enum BasisSet1D {
    BSpline(BSplineBasis),
    Repu(RepuBasis),
    Poly(PolyBasis),
}

impl BasisSet1D {
    pub fn n_funcs(&self) -> usize {
        match self {
            BasisSet1D::BSpline(b) => b.n_funcs(),
            BasisSet1D::Repu(r) => r.n_funcs(),
            BasisSet1D::Poly(p) => p.n_funcs(),
        }
    }

    /// Polynomial degree of the pieces, used to pick exact quadrature orders.
    pub fn degree(&self) -> usize {
        match self {
            BasisSet1D::BSpline(b) => b.degree(),
            BasisSet1D::Repu(r) => r.degree(),
            BasisSet1D::Poly(p) => p.degree(),
        }
    }

    /// Sites where the family loses smoothness, including both interval ends.
    pub fn breakpoints(&self) -> Vec<f64> {
        match self {
            BasisSet1D::BSpline(b) => b.breakpoints(),
            BasisSet1D::Repu(r) => r.sites().to_vec(),
            BasisSet1D::Poly(p) => p.breakpoints(),
        }
    }

    pub fn domain(&self) -> (f64, f64) {
        match self {
            BasisSet1D::BSpline(b) => b.domain(),
            BasisSet1D::Repu(r) => r.domain(),
            BasisSet1D::Poly(p) => p.domain(),
        }
    }

    pub fn eval(&self, x: f64) -> Result<Eval1D> {
        match self {
            BasisSet1D::BSpline(b) => b.eval(x),
            BasisSet1D::Repu(r) => r.eval(x),
            BasisSet1D::Poly(p) => p.eval(x),
        }
    }

    /// Indices of the coefficients that interpolate the two interval ends,
    /// when the family has that property (open-knot B-splines do).
    pub fn boundary_interpolatory(&self) -> Option<(usize, usize)> {
        match self {
            BasisSet1D::BSpline(b) => Some((0, b.n_funcs() - 1)),
            _ => None,
        }
    }

    /// Whether every member function vanishes at both interval ends by
    /// construction (the barycentric RePU family and the polynomial
    /// bubble family do).
    pub fn vanishes_at_ends(&self) -> bool {
        match self {
            BasisSet1D::Repu(r) => matches!(r.kind(), RepuKind::Lambda),
            BasisSet1D::Poly(p) => p.vanishes_at_ends(),
            BasisSet1D::BSpline(_) => false,
        }
    }
}
