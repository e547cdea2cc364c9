//! Recovery of the primal fields from a solved dual coefficient vector.
//!
//! The DtP map needs only dual values and first derivatives:
//! transient problems use `u = l_t + m_x`, `q = m - alpha l - kappa l_x`;
//! steady problems drop the time derivative (`u = m'`); the ODE problem
//! uses `u = l' + a l`.

use crate::ansatz::{AnsatzSpace, DualAnsatz};
use crate::basis::{BasisSet1D, Polynomial};
use crate::error::{Error, Result};
use crate::problem::{ProblemKind, ProblemSpec};
use crate::solver::SolveReport;
use nalgebra::DVector;

/// Dual field values and first derivatives at one point.
#[derive(Debug, Clone, Copy, Default)]
pub struct FieldValues {
    pub lambda: f64,
    pub lambda_x: f64,
    pub lambda_t: f64,
    pub mu: f64,
    pub mu_x: f64,
}

/// A solved problem: the dual coefficient vectors plus everything needed to
/// evaluate the recovered primal fields anywhere in the domain.
#[derive(Debug, Clone)]
pub struct PrimalSolution {
    spec: ProblemSpec,
    lambda_space: AnsatzSpace,
    mu_space: Option<AnsatzSpace>,
    lambda_coeffs: DVector<f64>,
    mu_coeffs: DVector<f64>,
    lambda_extra: Option<Polynomial>,
    dof: usize,
}

impl PrimalSolution {
    /// Scatter the solved free coefficients back into full coefficient
    /// vectors, mu block first, fixed lambda values re-inserted.
    pub fn from_report(spec: &ProblemSpec, ansatz: &DualAnsatz, report: &SolveReport) -> Self {
        let mu_idx = ansatz.free_mu_indices();
        let lam_idx = ansatz.free_lambda_indices();
        let mut mu_coeffs = DVector::zeros(ansatz.mu_space.n_funcs());
        let mut lambda_coeffs = DVector::from_column_slice(&ansatz.lambda_fixed);
        for (k, &i) in mu_idx.iter().enumerate() {
            mu_coeffs[i] = report.d[k];
        }
        for (k, &i) in lam_idx.iter().enumerate() {
            lambda_coeffs[i] = report.d[mu_idx.len() + k];
        }
        PrimalSolution {
            spec: spec.clone(),
            lambda_space: ansatz.lambda_space.clone(),
            mu_space: Some(ansatz.mu_space.clone()),
            lambda_coeffs,
            mu_coeffs,
            lambda_extra: ansatz.lambda_extra.clone(),
            dof: report.d.len(),
        }
    }

    /// Solution of the ODE problem, whose ansatz is a single lambda basis
    /// with the lifted terminal coefficient.
    pub fn from_ivp_report(
        spec: &ProblemSpec,
        lambda: &BasisSet1D,
        report: &SolveReport,
        lambda_terminal: f64,
    ) -> Result<Self> {
        let n = lambda.n_funcs();
        let (_, last) = lambda
            .boundary_interpolatory()
            .ok_or_else(|| Error::invalid("lambda basis must interpolate at t = T".to_string()))?;
        let mut lambda_coeffs = DVector::zeros(n);
        lambda_coeffs[last] = lambda_terminal;
        let mut k = 0;
        for i in 0..n {
            if i != last {
                lambda_coeffs[i] = report.d[k];
                k += 1;
            }
        }
        Ok(PrimalSolution {
            spec: spec.clone(),
            lambda_space: AnsatzSpace::OneD(lambda.clone()),
            mu_space: None,
            lambda_coeffs,
            mu_coeffs: DVector::zeros(0),
            lambda_extra: None,
            dof: report.d.len(),
        })
    }

    pub fn spec(&self) -> &ProblemSpec {
        &self.spec
    }

    /// Free coefficient count of the solve that produced this solution.
    pub fn dof(&self) -> usize {
        self.dof
    }

    pub fn lambda_coeffs(&self) -> &DVector<f64> {
        &self.lambda_coeffs
    }

    pub fn mu_coeffs(&self) -> &DVector<f64> {
        &self.mu_coeffs
    }

    pub fn lambda_space(&self) -> &AnsatzSpace {
        &self.lambda_space
    }

    pub fn mu_space(&self) -> Option<&AnsatzSpace> {
        self.mu_space.as_ref()
    }

    /// Dual field values and first derivatives at a point; `t` is required
    /// for the transient kinds and ignored by the rest.
    pub fn fields(&self, x: f64, t: Option<f64>) -> Result<FieldValues> {
        let mut out = FieldValues::default();
        match &self.lambda_space {
            AnsatzSpace::OneD(basis) => {
                let ev = basis.eval(x)?;
                let (v, d) = ev.combine(self.lambda_coeffs.as_slice());
                out.lambda = v;
                out.lambda_x = d;
                if let Some(extra) = &self.lambda_extra {
                    let (gv, gd) = extra.eval(x);
                    out.lambda += gv;
                    out.lambda_x += gd;
                }
            }
            AnsatzSpace::TwoD(tensor) => {
                let t = t.ok_or_else(|| {
                    Error::invalid("transient solutions need a time coordinate".to_string())
                })?;
                let ev = tensor.eval(x, t)?;
                for (k, &gi) in ev.indices.iter().enumerate() {
                    let c = self.lambda_coeffs[gi];
                    out.lambda += c * ev.values[k];
                    out.lambda_x += c * ev.d_dx[k];
                    out.lambda_t += c * ev.d_dt[k];
                }
            }
        }
        if let Some(space) = &self.mu_space {
            match space {
                AnsatzSpace::OneD(basis) => {
                    let ev = basis.eval(x)?;
                    let (v, d) = ev.combine(self.mu_coeffs.as_slice());
                    out.mu = v;
                    out.mu_x = d;
                }
                AnsatzSpace::TwoD(tensor) => {
                    let t = t.ok_or_else(|| {
                        Error::invalid("transient solutions need a time coordinate".to_string())
                    })?;
                    let ev = tensor.eval(x, t)?;
                    for (k, &gi) in ev.indices.iter().enumerate() {
                        let c = self.mu_coeffs[gi];
                        out.mu += c * ev.values[k];
                        out.mu_x += c * ev.d_dx[k];
                    }
                }
            }
        }
        Ok(out)
    }

    /// The recovered primal pair `(u, q)` at a point.
    ///
    /// For the ODE problem the argument is the time coordinate and `q` is
    /// the rate `a u` implied by the equation.
    pub fn eval(&self, x: f64, t: Option<f64>) -> Result<(f64, f64)> {
        let fv = self.fields(x, t)?;
        let alpha = self.spec.convection();
        let kappa = self.spec.diffusion();
        match self.spec.kind {
            ProblemKind::IvpOde => {
                let u = fv.lambda_x + self.spec.a * fv.lambda;
                Ok((u, self.spec.a * u))
            }
            ProblemKind::Laplace1D | ProblemKind::SteadyCd => {
                let u = fv.mu_x;
                let q = fv.mu - alpha * fv.lambda - kappa * fv.lambda_x;
                Ok((u, q))
            }
            ProblemKind::TransientCd | ProblemKind::TransientHeat => {
                let u = fv.lambda_t + fv.mu_x;
                let q = fv.mu - alpha * fv.lambda - kappa * fv.lambda_x;
                Ok((u, q))
            }
        }
    }
}
