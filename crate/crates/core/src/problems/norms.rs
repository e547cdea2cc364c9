//! Relative L2 / H1-seminorm errors of the recovered primal fields, and
//! grid-sampled maximum errors for the pointwise comparisons.

use super::exact::ExactSolution;
use super::primal::PrimalSolution;
use crate::ansatz::AnsatzSpace;
use crate::error::Result;
use crate::problem::ProblemKind;
use crate::quadrature::{merge_breakpoints, QuadratureRule, MAX_POINTS};

/// Relative errors of one solve:
/// `E_u = sqrt(∫(u - u_H)^2 / ∫u^2)` and the matching ratio for the
/// gradient field.
#[derive(Debug, Clone, Copy)]
pub struct ErrorPair {
    pub e_u: f64,
    pub e_q: f64,
    pub dof: usize,
}

/// Maximum pointwise errors over an evaluation grid, with the sup of the
/// exact fields for forming relative versions.
#[derive(Debug, Clone, Copy)]
pub struct MaxErrors {
    pub max_u: f64,
    pub max_q: f64,
    pub sup_u: f64,
    pub sup_q: f64,
}

/// Extra Gauss points past polynomial exactness, since the exact solution
/// is not polynomial.
const EXTRA_POINTS: usize = 3;

struct Accumulator {
    num_u: f64,
    den_u: f64,
    num_q: f64,
    den_q: f64,
}

impl Accumulator {
    fn new() -> Self {
        Accumulator {
            num_u: 0.0,
            den_u: 0.0,
            num_q: 0.0,
            den_q: 0.0,
        }
    }

    fn add(&mut self, w: f64, exact: (f64, f64), approx: (f64, f64)) {
        self.num_u += w * (exact.0 - approx.0).powi(2);
        self.den_u += w * exact.0 * exact.0;
        self.num_q += w * (exact.1 - approx.1).powi(2);
        self.den_q += w * exact.1 * exact.1;
    }

    fn finish(&self, dof: usize) -> ErrorPair {
        ErrorPair {
            e_u: (self.num_u / self.den_u).sqrt(),
            e_q: (self.num_q / self.den_q).sqrt(),
            dof,
        }
    }
}

fn spaces_of(solution: &PrimalSolution) -> (Vec<f64>, Vec<f64>, usize, usize) {
    // Breakpoints and per-direction degrees of the union of both dual
    // spaces (the lambda space alone for the ODE problem).
    match (solution.lambda_space(), solution.mu_space()) {
        (AnsatzSpace::OneD(lam), Some(AnsatzSpace::OneD(mu))) => {
            let breaks = merge_breakpoints(&lam.breakpoints(), &mu.breakpoints(), 1e-12);
            let deg = lam.degree().max(mu.degree());
            (breaks, Vec::new(), deg, 0)
        }
        (AnsatzSpace::TwoD(lam), Some(AnsatzSpace::TwoD(mu))) => {
            let bx = merge_breakpoints(
                &lam.basis_x.breakpoints(),
                &mu.basis_x.breakpoints(),
                1e-12,
            );
            let bt = merge_breakpoints(
                &lam.basis_t.breakpoints(),
                &mu.basis_t.breakpoints(),
                1e-12,
            );
            let dx = lam.basis_x.degree().max(mu.basis_x.degree());
            let dt = lam.basis_t.degree().max(mu.basis_t.degree());
            (bx, bt, dx, dt)
        }
        (AnsatzSpace::OneD(lam), None) => (lam.breakpoints(), Vec::new(), lam.degree(), 0),
        _ => unreachable!("mixed-dimension ansatz is rejected at construction"),
    }
}

/// Space(-time) relative error norms of a solved problem against its exact
/// solution, by per-span Gauss quadrature.
pub fn error_norms(solution: &PrimalSolution) -> Result<ErrorPair> {
    let exact = ExactSolution::new(solution.spec())?;
    let (breaks_x, breaks_t, deg_x, deg_t) = spaces_of(solution);
    let rule_x = QuadratureRule::gauss_legendre((deg_x + EXTRA_POINTS).min(MAX_POINTS))?;
    let mut acc = Accumulator::new();
    if solution.spec().kind.is_transient() {
        let rule_t = QuadratureRule::gauss_legendre((deg_t + EXTRA_POINTS).min(MAX_POINTS))?;
        for sx in breaks_x.windows(2) {
            for st in breaks_t.windows(2) {
                for (x, wx) in rule_x.mapped(sx[0], sx[1]) {
                    for (t, wt) in rule_t.mapped(st[0], st[1]) {
                        let e = exact.eval(x, Some(t))?;
                        let a = solution.eval(x, Some(t))?;
                        acc.add(wx * wt, e, a);
                    }
                }
            }
        }
    } else {
        for sx in breaks_x.windows(2) {
            for (x, w) in rule_x.mapped(sx[0], sx[1]) {
                let e = exact.eval(x, None)?;
                let a = solution.eval(x, None)?;
                acc.add(w, e, a);
            }
        }
    }
    Ok(acc.finish(solution.dof()))
}

/// Maximum pointwise errors on a uniform grid (`nx` points per direction,
/// `nt` for the time direction of transient problems).
pub fn max_errors(solution: &PrimalSolution, nx: usize, nt: Option<usize>) -> Result<MaxErrors> {
    let exact = ExactSolution::new(solution.spec())?;
    let spec = solution.spec();
    let xs: Vec<f64> = uniform_grid(nx, horizon(solution));
    let mut out = MaxErrors {
        max_u: 0.0,
        max_q: 0.0,
        sup_u: 0.0,
        sup_q: 0.0,
    };
    if spec.kind.is_transient() {
        let nt = nt.unwrap_or(nx);
        let ts: Vec<f64> = uniform_grid(nt, spec.t_final);
        let (u, ux) = exact.eval_grid(&xs, &ts)?;
        for (r, &t) in ts.iter().enumerate() {
            for (c, &x) in xs.iter().enumerate() {
                let (au, aq) = solution.eval(x, Some(t))?;
                out.max_u = out.max_u.max((u[r][c] - au).abs());
                out.max_q = out.max_q.max((ux[r][c] - aq).abs());
                out.sup_u = out.sup_u.max(u[r][c].abs());
                out.sup_q = out.sup_q.max(ux[r][c].abs());
            }
        }
    } else {
        for &x in &xs {
            let (eu, eq) = exact.eval(x, None)?;
            let (au, aq) = solution.eval(x, None)?;
            out.max_u = out.max_u.max((eu - au).abs());
            out.max_q = out.max_q.max((eq - aq).abs());
            out.sup_u = out.sup_u.max(eu.abs());
            out.sup_q = out.sup_q.max(eq.abs());
        }
    }
    Ok(out)
}

fn horizon(solution: &PrimalSolution) -> f64 {
    match solution.spec().kind {
        ProblemKind::IvpOde => solution.spec().t_final,
        _ => 1.0,
    }
}

pub(crate) fn uniform_grid(count: usize, end: f64) -> Vec<f64> {
    let n = count.max(2);
    (0..n).map(|k| end * k as f64 / (n - 1) as f64).collect()
}
