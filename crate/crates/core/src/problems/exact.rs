//! Exact solutions of the model problems: closed forms where available and
//! the separated-variable series for the transient convection-diffusion
//! problem, with coefficients computed once per problem.

use crate::error::{Error, Result};
use crate::problem::{InitialCondition, ProblemKind, ProblemSpec};
use crate::quadrature::QuadratureRule;
use std::f64::consts::PI;

/// Series truncation for the transient convection-diffusion solution.
pub const SERIES_TERMS: usize = 1000;

/// Gauss points per half-period of `sin(n pi x)` in the coefficient
/// integrals.
const COEFF_POINTS: usize = 20;

#[derive(Debug, Clone)]
struct SeriesData {
    /// Sine coefficients of the transformed initial condition.
    b: Vec<f64>,
    /// `alpha / (2 kappa)`.
    conv_half: f64,
    /// `alpha^2 / (4 kappa)`.
    decay_conv: f64,
    /// `kappa pi^2`.
    decay_diff: f64,
}

/// Exact solution evaluator for a problem specification.
///
/// For the ODE problem the evaluation argument is the time coordinate and
/// the derivative slot carries `du/dt = a u`.
#[derive(Debug, Clone)]
pub struct ExactSolution {
    spec: ProblemSpec,
    series: Option<SeriesData>,
}

impl ExactSolution {
    pub fn new(spec: &ProblemSpec) -> Result<Self> {
        spec.validate()?;
        let series = match spec.kind {
            ProblemKind::TransientCd => Some(Self::build_series(spec)?),
            ProblemKind::TransientHeat => {
                Self::check_heat_family(spec)?;
                None
            }
            _ => None,
        };
        Ok(ExactSolution {
            spec: spec.clone(),
            series,
        })
    }

    /// The heat closed form covers the family
    /// `u0 = offset + amplitude sin(pi x / 2)` with Dirichlet value `offset`
    /// on the left and zero flux on the right.
    fn check_heat_family(spec: &ProblemSpec) -> Result<()> {
        match spec.u0 {
            InitialCondition::SinProfile {
                offset, half_waves, ..
            } if (half_waves - 0.5).abs() <= 1e-14 && (offset - spec.bc_left).abs() <= 1e-14 => {
                Ok(())
            }
            _ => Err(Error::invalid(
                "heat exact solution needs u0 = bc_left + amplitude*sin(pi x/2)".to_string(),
            )),
        }
    }

    fn build_series(spec: &ProblemSpec) -> Result<SeriesData> {
        if spec.kappa <= 0.0 {
            return Err(Error::invalid(
                "the transient series needs kappa > 0".to_string(),
            ));
        }
        if spec.bc_left != 0.0 || spec.bc_right != 0.0 {
            return Err(Error::invalid(
                "the transient series assumes homogeneous Dirichlet data".to_string(),
            ));
        }
        let conv_half = spec.alpha / (2.0 * spec.kappa);
        let rule = QuadratureRule::gauss_legendre(COEFF_POINTS)?;
        let u0 = spec.u0;
        let mut b = Vec::with_capacity(SERIES_TERMS);
        for n in 1..=SERIES_TERMS {
            // One panel per half-period of the sine factor keeps the fixed
            // rule accurate at every mode number.
            let mut acc = 0.0;
            for k in 0..n {
                let a = k as f64 / n as f64;
                let c = (k + 1) as f64 / n as f64;
                for (x, w) in rule.mapped(a, c) {
                    acc += w * (-conv_half * x).exp() * u0.eval(x) * (n as f64 * PI * x).sin();
                }
            }
            b.push(2.0 * acc);
        }
        Ok(SeriesData {
            b,
            conv_half,
            decay_conv: spec.alpha * spec.alpha / (4.0 * spec.kappa),
            decay_diff: spec.kappa * PI * PI,
        })
    }

    /// `(u, u_x)` at a point; `t` is required for the transient kinds.
    pub fn eval(&self, x: f64, t: Option<f64>) -> Result<(f64, f64)> {
        let spec = &self.spec;
        match spec.kind {
            ProblemKind::IvpOde => {
                let t = x;
                let u0 = spec.u0.scalar().ok_or_else(|| {
                    Error::invalid("the ODE problem takes a scalar initial value".to_string())
                })?;
                let u = u0 * (spec.a * t).exp();
                Ok((u, spec.a * u))
            }
            ProblemKind::Laplace1D => {
                let du = spec.bc_right - spec.bc_left;
                Ok((spec.bc_left + du * x, du))
            }
            ProblemKind::SteadyCd => {
                let du = spec.bc_right - spec.bc_left;
                if spec.alpha == 0.0 {
                    return Ok((spec.bc_left + du * x, du));
                }
                let den = spec.alpha.exp_m1();
                let u = spec.bc_left + du * (spec.alpha * x).exp_m1() / den;
                let ux = du * spec.alpha * (spec.alpha * x).exp() / den;
                Ok((u, ux))
            }
            ProblemKind::TransientHeat => {
                let t = required_time(t)?;
                let amp = match spec.u0 {
                    InitialCondition::SinProfile { amplitude, .. } => amplitude,
                    _ => unreachable!("validated at construction"),
                };
                let decay = (-spec.kappa * PI * PI / 4.0 * t).exp();
                let u = spec.bc_left + amp * (PI * x / 2.0).sin() * decay;
                let ux = amp * PI / 2.0 * (PI * x / 2.0).cos() * decay;
                Ok((u, ux))
            }
            ProblemKind::TransientCd => {
                let t = required_time(t)?;
                let series = self.series.as_ref().expect("built at construction");
                Ok(series_point(series, x, t))
            }
        }
    }

    /// Tabulate `(u, u_x)` on a tensor grid, row index `t`, column `x`.
    ///
    /// For the series solution the per-row mode amplitudes are shared across
    /// the row and the sine factors advance by recurrence, so a fine grid
    /// costs one multiply-add per mode per point.
    pub fn eval_grid(&self, xs: &[f64], ts: &[f64]) -> Result<(Vec<Vec<f64>>, Vec<Vec<f64>>)> {
        if self.spec.kind != ProblemKind::TransientCd {
            let mut u = Vec::with_capacity(ts.len().max(1));
            let mut ux = Vec::with_capacity(ts.len().max(1));
            if ts.is_empty() {
                let mut row_u = Vec::with_capacity(xs.len());
                let mut row_x = Vec::with_capacity(xs.len());
                for &x in xs {
                    let (v, d) = self.eval(x, None)?;
                    row_u.push(v);
                    row_x.push(d);
                }
                return Ok((vec![row_u], vec![row_x]));
            }
            for &t in ts {
                let mut row_u = Vec::with_capacity(xs.len());
                let mut row_x = Vec::with_capacity(xs.len());
                for &x in xs {
                    let (v, d) = self.eval(x, Some(t))?;
                    row_u.push(v);
                    row_x.push(d);
                }
                u.push(row_u);
                ux.push(row_x);
            }
            return Ok((u, ux));
        }

        let series = self.series.as_ref().expect("built at construction");
        let mut u = Vec::with_capacity(ts.len());
        let mut ux = Vec::with_capacity(ts.len());
        let mut amps = vec![0.0; series.b.len()];
        for &t in ts {
            let mut active = 0;
            for (k, &bn) in series.b.iter().enumerate() {
                let n = (k + 1) as f64;
                let exponent = -series.decay_diff * n * n * t;
                let amp = if exponent < -745.0 { 0.0 } else { bn * exponent.exp() };
                amps[k] = amp;
                if amp != 0.0 {
                    active = k + 1;
                }
            }
            let envelope_t = (-series.decay_conv * t).exp();
            let mut row_u = Vec::with_capacity(xs.len());
            let mut row_x = Vec::with_capacity(xs.len());
            for &x in xs {
                let theta = PI * x;
                let (sin_step, cos_step) = theta.sin_cos();
                let (mut s_n, mut c_n) = (sin_step, cos_step);
                let mut sum = 0.0;
                let mut sum_d = 0.0;
                for (k, &amp) in amps[..active].iter().enumerate() {
                    let n = (k + 1) as f64;
                    sum += amp * s_n;
                    sum_d += amp * n * PI * c_n;
                    let next_s = s_n * cos_step + c_n * sin_step;
                    let next_c = c_n * cos_step - s_n * sin_step;
                    s_n = next_s;
                    c_n = next_c;
                }
                let envelope_x = (series.conv_half * x).exp();
                let scale = envelope_t * envelope_x;
                row_u.push(scale * sum);
                row_x.push(scale * (series.conv_half * sum + sum_d));
            }
            u.push(row_u);
            ux.push(row_x);
        }
        Ok((u, ux))
    }
}

fn required_time(t: Option<f64>) -> Result<f64> {
    t.ok_or_else(|| Error::invalid("transient exact solution needs a time coordinate".to_string()))
}

fn series_point(series: &SeriesData, x: f64, t: f64) -> (f64, f64) {
    let mut sum = 0.0;
    let mut sum_d = 0.0;
    for (k, &bn) in series.b.iter().enumerate() {
        let n = (k + 1) as f64;
        let exponent = -series.decay_diff * n * n * t;
        if exponent < -745.0 {
            break;
        }
        let amp = bn * exponent.exp();
        let arg = n * PI * x;
        sum += amp * arg.sin();
        sum_d += amp * n * PI * arg.cos();
    }
    let scale = (-series.decay_conv * t).exp() * (series.conv_half * x).exp();
    (scale * sum, scale * (series.conv_half * sum + sum_d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn sin2pi() -> InitialCondition {
        InitialCondition::SinProfile {
            offset: 0.0,
            amplitude: 1.0,
            half_waves: 2.0,
        }
    }

    #[test]
    fn steady_cd_boundary_values() {
        let spec = ProblemSpec::steady_cd(50.0, 0.0, 1.0);
        let exact = ExactSolution::new(&spec).unwrap();
        let (u1, _) = exact.eval(1.0, None).unwrap();
        assert_abs_diff_eq!(u1, 1.0, epsilon = 1e-14);
        let (u0, _) = exact.eval(0.0, None).unwrap();
        assert_abs_diff_eq!(u0, 0.0, epsilon = 1e-14);
    }

    #[test]
    fn steady_cd_small_alpha_tends_to_linear() {
        let spec = ProblemSpec::steady_cd(1e-12, 0.0, 1.0);
        let exact = ExactSolution::new(&spec).unwrap();
        let (u, _) = exact.eval(0.3, None).unwrap();
        assert_abs_diff_eq!(u, 0.3, epsilon = 1e-10);
    }

    #[test]
    fn transient_series_reproduces_initial_condition() {
        let spec = ProblemSpec::transient_cd(0.01, 0.1, sin2pi());
        let exact = ExactSolution::new(&spec).unwrap();
        let mut worst: f64 = 0.0;
        for k in 0..=1000 {
            let x = k as f64 / 1000.0;
            let (u, _) = exact.eval(x, Some(0.0)).unwrap();
            worst = worst.max((u - spec.u0.eval(x)).abs());
        }
        assert!(worst <= 1e-6, "series misses u0 by {worst:.3e}");
    }

    #[test]
    fn series_grid_matches_pointwise_evaluation() {
        let spec = ProblemSpec::transient_cd(0.01, 0.1, sin2pi());
        let exact = ExactSolution::new(&spec).unwrap();
        let xs: Vec<f64> = (0..=20).map(|k| k as f64 / 20.0).collect();
        let ts: Vec<f64> = (0..=10).map(|k| k as f64 / 10.0).collect();
        let (u, ux) = exact.eval_grid(&xs, &ts).unwrap();
        for (r, &t) in ts.iter().enumerate() {
            for (c, &x) in xs.iter().enumerate() {
                let (pu, px) = exact.eval(x, Some(t)).unwrap();
                assert_abs_diff_eq!(u[r][c], pu, epsilon = 1e-10);
                assert_abs_diff_eq!(ux[r][c], px, epsilon = 1e-8 * px.abs().max(1.0));
            }
        }
    }

    #[test]
    fn heat_closed_form_corner_value() {
        let spec = ProblemSpec::transient_heat(
            1.0,
            1.0,
            InitialCondition::SinProfile {
                offset: 1.0,
                amplitude: 1.0,
                half_waves: 0.5,
            },
        );
        let exact = ExactSolution::new(&spec).unwrap();
        let (u, _) = exact.eval(1.0, Some(0.0)).unwrap();
        assert_abs_diff_eq!(u, 2.0, epsilon = 1e-14);
    }

    #[test]
    fn unsupported_heat_initial_condition_is_rejected() {
        let spec = ProblemSpec::transient_heat(1.0, 1.0, InitialCondition::Constant(1.0));
        assert!(ExactSolution::new(&spec).is_err());
        let spec = ProblemSpec::transient_cd(0.0, 0.1, sin2pi());
        assert!(ExactSolution::new(&spec).is_err());
    }

    #[test]
    fn ivp_exponential() {
        let spec = ProblemSpec::ivp(-2.0, 3.0, 1.0, 0.0);
        let exact = ExactSolution::new(&spec).unwrap();
        let (u, du) = exact.eval(0.5, None).unwrap();
        assert_abs_diff_eq!(u, 3.0 * (-1.0_f64).exp(), epsilon = 1e-14);
        assert_abs_diff_eq!(du, -2.0 * u, epsilon = 1e-14);
    }
}
