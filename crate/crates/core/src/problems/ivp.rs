//! Closed-form dual solution of the ODE boundary-value problem and the
//! adjoint-sensitivity companion computation.

use crate::error::{Error, Result};

/// Dual field, its rate and the recovered primal value at one time.
#[derive(Debug, Clone, Copy)]
pub struct IvpDualValues {
    pub lambda: f64,
    pub lambda_dot: f64,
    pub u_h: f64,
}

/// Closed form of the dual two-point problem
/// `l'' = a^2 l`, `l'(0) + a l(0) = u0`, `l(T) = lambda_T`:
/// `l(t) = c1 e^{|a| t} + c2 e^{-|a| t}` with the constants from the two
/// boundary conditions, and `u = l' + a l`. The recovered `u` cannot depend
/// on the arbitrary terminal value, which the tests verify.
pub fn ivp_dual_closed_form(
    a: f64,
    u0: f64,
    lambda_terminal: f64,
    t_final: f64,
    t: f64,
) -> Result<IvpDualValues> {
    if t_final <= 0.0 || !t_final.is_finite() {
        return Err(Error::invalid(format!(
            "terminal time must be positive, got {t_final}"
        )));
    }
    if !(0.0..=t_final).contains(&t) {
        return Err(Error::domain(format!("t = {t} outside [0, {t_final}]")));
    }
    if a == 0.0 {
        // Degenerate-rate limit: l = c1 + c2 t with l'(0) = u0.
        let c2 = u0;
        let c1 = lambda_terminal - c2 * t_final;
        return Ok(IvpDualValues {
            lambda: c1 + c2 * t,
            lambda_dot: c2,
            u_h: c2,
        });
    }
    let m = a.abs();
    // [ (|a|+a)   -(|a|-a) ] [c1]   [u0]
    // [ e^{|a|T}   e^{-|a|T}] [c2] = [lambda_T]
    let a11 = m + a;
    let a12 = -(m - a);
    let a21 = (m * t_final).exp();
    let a22 = (-m * t_final).exp();
    let det = a11 * a22 - a12 * a21;
    if det.abs() < 1e-300 {
        return Err(Error::Degenerate(
            "singular boundary system for the dual ODE".to_string(),
        ));
    }
    let c1 = (u0 * a22 - a12 * lambda_terminal) / det;
    let c2 = (a11 * lambda_terminal - u0 * a21) / det;
    let ep = (m * t).exp();
    let en = (-m * t).exp();
    let lambda = c1 * ep + c2 * en;
    let lambda_dot = m * (c1 * ep - c2 * en);
    Ok(IvpDualValues {
        lambda,
        lambda_dot,
        u_h: lambda_dot + a * lambda,
    })
}

const ADJOINT_STEPS: usize = 1000;

/// Sensitivity of `F = ∫_0^T u dt` to the initial value of `u' = a u`:
/// integrate the adjoint equation `l' + a l + 1 = 0` backward from
/// `l(T) = 0` with the classical fourth-order scheme and return `l(0)`.
pub fn adjoint_sensitivity(a: f64, t_final: f64) -> f64 {
    let h = -t_final / ADJOINT_STEPS as f64;
    let rhs = |lambda: f64| -(a * lambda + 1.0);
    let mut lambda = 0.0;
    for _ in 0..ADJOINT_STEPS {
        let k1 = rhs(lambda);
        let k2 = rhs(lambda + 0.5 * h * k1);
        let k3 = rhs(lambda + 0.5 * h * k2);
        let k4 = rhs(lambda + h * k3);
        lambda += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    lambda
}

/// `(e^{aT} - 1) / a`, continuous through `a = 0`.
pub fn adjoint_sensitivity_closed_form(a: f64, t_final: f64) -> f64 {
    if a.abs() < 1e-12 {
        t_final
    } else {
        (a * t_final).exp_m1() / a
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn growth_ode_recovered_exactly() {
        for k in 0..=100 {
            let t = k as f64 / 100.0;
            let v = ivp_dual_closed_form(1.0, 1.0, 0.0, 1.0, t).unwrap();
            assert_abs_diff_eq!(v.u_h, t.exp(), epsilon = 1e-12);
        }
    }

    #[test]
    fn terminal_data_changes_lambda_but_not_u() {
        for k in 0..=100 {
            let t = k as f64 / 100.0;
            let base = ivp_dual_closed_form(1.0, 1.0, 0.0, 1.0, t).unwrap();
            let shifted = ivp_dual_closed_form(1.0, 1.0, 7.0, 1.0, t).unwrap();
            assert_abs_diff_eq!(base.u_h, shifted.u_h, epsilon = 1e-12);
        }
        let a = ivp_dual_closed_form(1.0, 1.0, 0.0, 1.0, 1.0).unwrap();
        let b = ivp_dual_closed_form(1.0, 1.0, 7.0, 1.0, 1.0).unwrap();
        assert!((a.lambda - b.lambda).abs() > 1.0);
    }

    #[test]
    fn initial_value_is_attained() {
        let v = ivp_dual_closed_form(-2.0, 3.0, 0.0, 1.0, 0.0).unwrap();
        assert_abs_diff_eq!(v.u_h, 3.0, epsilon = 1e-12);
    }

    #[test]
    fn zero_rate_limit_is_constant() {
        let v = ivp_dual_closed_form(0.0, 2.5, 4.0, 1.0, 0.6).unwrap();
        assert_abs_diff_eq!(v.u_h, 2.5, epsilon = 1e-15);
    }

    #[test]
    fn adjoint_matches_closed_form() {
        assert_abs_diff_eq!(adjoint_sensitivity(1.0, 1.0), 1.0_f64.exp() - 1.0, epsilon = 1e-9);
        assert_abs_diff_eq!(adjoint_sensitivity(1e-8, 2.0), 2.0, epsilon = 1e-6);
        assert_abs_diff_eq!(
            adjoint_sensitivity(-3.0, 1.0),
            ((-3.0_f64).exp() - 1.0) / -3.0,
            epsilon = 1e-9
        );
        assert_abs_diff_eq!(
            adjoint_sensitivity(-3.0, 1.0),
            0.3167376438773787,
            epsilon = 1e-9
        );
    }
}
