//! B-spline evaluation by the Cox–de Boor recurrence on an open uniform
//! knot vector, returning the `degree + 1` functions alive on the knot span
//! of the query point together with their first derivatives.

use super::{make_open_knot_vector, Eval1D, KnotVector};
use crate::error::Result;

#[derive(Debug, Clone)]
pub struct BSplineBasis {
    knots: KnotVector,
}

impl BSplineBasis {
    /// Uniform open-knot family of the given degree with `n` spans.
    pub fn uniform(degree: usize, n: usize, start: f64, end: f64) -> Result<Self> {
        Ok(BSplineBasis {
            knots: make_open_knot_vector(degree, n, start, end)?,
        })
    }

    pub fn from_knots(knots: KnotVector) -> Self {
        BSplineBasis { knots }
    }

    pub fn degree(&self) -> usize {
        self.knots.degree
    }

    pub fn n_funcs(&self) -> usize {
        self.knots.knots.len() - self.knots.degree - 1
    }

    pub fn n_spans(&self) -> usize {
        self.knots.n_spans
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.knots.start, self.knots.end)
    }

    pub fn knot_vector(&self) -> &KnotVector {
        &self.knots
    }

    /// Distinct knot sites, including both interval ends.
    pub fn breakpoints(&self) -> Vec<f64> {
        let p = self.knots.degree;
        let t = &self.knots.knots;
        let mut sites = Vec::with_capacity(self.knots.n_spans + 1);
        sites.push(t[p]);
        for &x in &t[p + 1..t.len() - p] {
            if x > *sites.last().unwrap() {
                sites.push(x);
            }
        }
        sites
    }

    /// Index of the knot span containing `x`, with the right-continuity
    /// convention at interior knots; `x` at the right interval end maps to
    /// the last span.
    fn find_span(&self, x: f64) -> usize {
        let p = self.knots.degree;
        let t = &self.knots.knots;
        let last = t.len() - p - 2;
        if x >= t[last + 1] {
            return last;
        }
        let mut lo = p;
        let mut hi = last;
        while lo < hi {
            let mid = (lo + hi + 1) / 2;
            if t[mid] <= x {
                lo = mid;
            } else {
                hi = mid - 1;
            }
        }
        lo
    }

    /// Values and first derivatives of the `degree + 1` functions that are
    /// nonzero at `x`. Values sum to one and derivatives to zero.
    pub fn eval(&self, x: f64) -> Result<Eval1D> {
        let (a, b) = self.domain();
        if x < a || x > b || !x.is_finite() {
            return Err(crate::error::Error::domain(format!(
                "x = {x} outside [{a}, {b}]"
            )));
        }
        let p = self.knots.degree;
        let t = &self.knots.knots;
        let span = self.find_span(x);

        // Triangular Cox–de Boor table; after the (p-1)-th pass `values`
        // holds the degree p-1 functions needed for the derivative formula.
        let mut values = vec![0.0; p + 1];
        values[0] = 1.0;
        let mut left = vec![0.0; p + 1];
        let mut right = vec![0.0; p + 1];
        let mut lower = vec![0.0; p];
        for j in 1..=p {
            if j == p {
                lower.copy_from_slice(&values[..p]);
            }
            left[j] = x - t[span + 1 - j];
            right[j] = t[span + j] - x;
            let mut saved = 0.0;
            for r in 0..j {
                let temp = values[r] / (right[r + 1] + left[j - r]);
                values[r] = saved + right[r + 1] * temp;
                saved = left[j - r] * temp;
            }
            values[j] = saved;
        }

        // N'_{i,p} = p [ N_{i,p-1}/(t_{i+p}-t_i) - N_{i+1,p-1}/(t_{i+p+1}-t_{i+1}) ],
        // where the degree p-1 functions alive on the span are
        // N_{span-p+1..span} stored in `lower`.
        let first = span - p;
        let mut derivs = vec![0.0; p + 1];
        let pf = p as f64;
        for r in 0..=p {
            let i = first + r;
            let mut d = 0.0;
            if r > 0 {
                d += pf * lower[r - 1] / (t[i + p] - t[i]);
            }
            if r < p {
                d -= pf * lower[r] / (t[i + p + 1] - t[i + 1]);
            }
            derivs[r] = d;
        }

        Ok(Eval1D {
            first,
            values,
            derivs,
        })
    }
}
