//! Tensor products of univariate families on the space-time square, with
//! row-major pairing `(i, j) -> i * n_t + j` of the x- and t-indices.

use super::{BasisSet1D, Eval1D};
use crate::error::Result;

#[derive(Debug, Clone)]
pub struct TensorBasis2D {
    pub basis_x: BasisSet1D,
    pub basis_t: BasisSet1D,
}

/// Nonzero tensor functions at a point: values and both first partials.
#[derive(Debug, Clone)]
pub struct Eval2D {
    pub indices: Vec<usize>,
    pub values: Vec<f64>,
    pub d_dx: Vec<f64>,
    pub d_dt: Vec<f64>,
}

impl TensorBasis2D {
    pub fn new(basis_x: BasisSet1D, basis_t: BasisSet1D) -> Self {
        TensorBasis2D { basis_x, basis_t }
    }

    pub fn n_funcs(&self) -> usize {
        self.basis_x.n_funcs() * self.basis_t.n_funcs()
    }

    pub fn index(&self, ix: usize, it: usize) -> usize {
        ix * self.basis_t.n_funcs() + it
    }

    /// Value and partials factor as products of the univariate evaluations;
    /// only pairs of nonzero univariate functions are returned.
    pub fn eval(&self, x: f64, t: f64) -> Result<Eval2D> {
        let ex = self.basis_x.eval(x)?;
        let et = self.basis_t.eval(t)?;
        Ok(self.combine(&ex, &et))
    }

    /// Assemble the tensor record from precomputed univariate evaluations.
    pub fn combine(&self, ex: &Eval1D, et: &Eval1D) -> Eval2D {
        let nt = self.basis_t.n_funcs();
        let count = ex.len() * et.len();
        let mut indices = Vec::with_capacity(count);
        let mut values = Vec::with_capacity(count);
        let mut d_dx = Vec::with_capacity(count);
        let mut d_dt = Vec::with_capacity(count);
        for (a, (&vx, &dx)) in ex.values.iter().zip(&ex.derivs).enumerate() {
            let ix = ex.first + a;
            for (b, (&vt, &dt)) in et.values.iter().zip(&et.derivs).enumerate() {
                let it = et.first + b;
                indices.push(ix * nt + it);
                values.push(vx * vt);
                d_dx.push(dx * vt);
                d_dt.push(vx * dt);
            }
        }
        Eval2D {
            indices,
            values,
            d_dx,
            d_dt,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::BSplineBasis;
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};

    fn bspline(p: usize, n: usize) -> BasisSet1D {
        BasisSet1D::BSpline(BSplineBasis::uniform(p, n, 0.0, 1.0).unwrap())
    }

    #[test]
    fn hat_products_at_center() {
        let tb = TensorBasis2D::new(bspline(1, 1), bspline(1, 1));
        let ev = tb.eval(0.5, 0.5).unwrap();
        assert_eq!(ev.indices, vec![0, 1, 2, 3]);
        for v in &ev.values {
            assert_abs_diff_eq!(*v, 0.25, epsilon = 1e-15);
        }
    }

    #[test]
    fn partition_of_unity_of_products() {
        let tb = TensorBasis2D::new(bspline(3, 4), bspline(2, 5));
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let (x, t): (f64, f64) = (rng.random(), rng.random());
            let ev = tb.eval(x, t).unwrap();
            let sum: f64 = ev.values.iter().sum();
            assert_abs_diff_eq!(sum, 1.0, epsilon = 1e-13);
        }
    }

    #[test]
    fn values_factor_as_products() {
        let tb = TensorBasis2D::new(bspline(2, 3), bspline(3, 2));
        let (x, t) = (0.3, 0.7);
        let ev = tb.eval(x, t).unwrap();
        let ex = tb.basis_x.eval(x).unwrap();
        let et = tb.basis_t.eval(t).unwrap();
        let nt = tb.basis_t.n_funcs();
        for (k, &idx) in ev.indices.iter().enumerate() {
            let (ix, it) = (idx / nt, idx % nt);
            let vx = ex.values[ix - ex.first];
            let vt = et.values[it - et.first];
            assert_abs_diff_eq!(ev.values[k], vx * vt, epsilon = 1e-14);
        }
    }

    #[test]
    fn high_degree_partials_match_finite_differences() {
        // Degree pairing used by the space-time runs: degree 9 in x,
        // degree 10 in t on a single span.
        let tb = TensorBasis2D::new(bspline(9, 1), bspline(10, 1));
        let (x, t) = (0.3, 0.7);
        let h = 1e-6;
        let ev = tb.eval(x, t).unwrap();
        let xl = tb.eval(x - h, t).unwrap();
        let xr = tb.eval(x + h, t).unwrap();
        let tl = tb.eval(x, t - h).unwrap();
        let tr = tb.eval(x, t + h).unwrap();
        for k in 0..ev.indices.len() {
            let fdx = (xr.values[k] - xl.values[k]) / (2.0 * h);
            let fdt = (tr.values[k] - tl.values[k]) / (2.0 * h);
            assert_abs_diff_eq!(ev.d_dx[k], fdx, epsilon = 1e-6 * ev.d_dx[k].abs().max(1.0));
            assert_abs_diff_eq!(ev.d_dt[k], fdt, epsilon = 1e-6 * ev.d_dt[k].abs().max(1.0));
        }
    }

    #[test]
    fn out_of_square_rejected() {
        let tb = TensorBasis2D::new(bspline(1, 2), bspline(1, 2));
        assert!(tb.eval(-0.1, 0.5).is_err());
        assert!(tb.eval(0.5, 1.1).is_err());
    }
}
