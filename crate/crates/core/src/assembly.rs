//! Galerkin assembly of the discrete dual system `K d = f`.
//!
//! The blocks follow the dual weak form of the transient
//! convection-diffusion equation; the steady problems reuse the same blocks
//! with the time direction dropped. With `C(v) = alpha v + kappa v_x`:
//!
//! ```text
//! K_ll = ∫∫ [ l_t' l_t + C(l)' C(l) ]      K_lm = ∫∫ [ l_t' m_x - C(l)' m ]
//! K_mm = ∫∫ [ m_x' m_x + m' m ]            K_ml = K_lm'   (stored as transpose)
//! f_l  = -∫ u0(x) l(x, 0) dx               f_m  = ∫ [ u2 m(1, t) - u1 m(0, t) ] dt
//! ```
//!
//! The heat problem keeps only the left boundary term in `f_m`. Cells are
//! integrated with a Gauss rule exact for every product of basis pieces, so
//! quadrature contributes no error to the convergence studies. Cell
//! contributions are computed independently (in parallel when enabled) and
//! merged in a fixed cell order for reproducible results.

use crate::ansatz::{AnsatzSpace, DualAnsatz};
use crate::basis::{BasisSet1D, Polynomial, TensorBasis2D};
use crate::error::{Error, Result};
use crate::parallel::{map_ordered, ExecMode};
use crate::problem::{ProblemKind, ProblemSpec};
use crate::quadrature::{merge_breakpoints, QuadratureRule, MAX_POINTS};
use nalgebra::{DMatrix, DVector};

/// Which dual field a free coefficient belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Field {
    Mu,
    Lambda,
}

/// The reduced symmetric system over the free coefficients, mu block first,
/// each block in basis-index order.
#[derive(Debug, Clone)]
pub struct AssembledSystem {
    pub k: DMatrix<f64>,
    pub f: DVector<f64>,
    pub dof_map: Vec<(Field, usize)>,
}

impl AssembledSystem {
    pub fn n_dof(&self) -> usize {
        self.f.len()
    }
}

/// Breakpoint dedup tolerance when merging the two bases' sites.
const MERGE_TOL: f64 = 1e-12;
/// Agreement threshold of the adaptive initial-condition quadrature.
const IC_QUAD_TOL: f64 = 1e-12;

/// Assemble with the default execution mode.
pub fn assemble(spec: &ProblemSpec, ansatz: &DualAnsatz) -> Result<AssembledSystem> {
    assemble_with_mode(spec, ansatz, ExecMode::default())
}

pub fn assemble_with_mode(
    spec: &ProblemSpec,
    ansatz: &DualAnsatz,
    mode: ExecMode,
) -> Result<AssembledSystem> {
    spec.validate()?;
    match (&ansatz.lambda_space, &ansatz.mu_space) {
        (AnsatzSpace::OneD(lam), AnsatzSpace::OneD(mu)) => {
            if spec.kind.is_transient() {
                return Err(Error::invalid(
                    "transient problems need tensor-product spaces".to_string(),
                ));
            }
            assemble_steady(spec, ansatz, lam, mu, mode)
        }
        (AnsatzSpace::TwoD(lam), AnsatzSpace::TwoD(mu)) => {
            if !spec.kind.is_transient() {
                return Err(Error::invalid(
                    "steady problems use univariate spaces".to_string(),
                ));
            }
            assemble_transient(spec, ansatz, lam, mu, mode)
        }
        _ => Err(Error::invalid(
            "lambda and mu spaces must have the same dimensionality".to_string(),
        )),
    }
}

/// Full-size block matrices before the masks are applied.
struct FullBlocks {
    kll: DMatrix<f64>,
    klm: DMatrix<f64>,
    kmm: DMatrix<f64>,
    f_lam: DVector<f64>,
    f_mu: DVector<f64>,
}

impl FullBlocks {
    /// Move lifted lambda data to the right-hand side and restrict to the
    /// free coefficients, mu block first.
    fn reduce(mut self, ansatz: &DualAnsatz) -> AssembledSystem {
        if ansatz.lambda_fixed.iter().any(|&v| v != 0.0) {
            let fixed = DVector::from_column_slice(&ansatz.lambda_fixed);
            self.f_lam -= &self.kll * &fixed;
            self.f_mu -= self.klm.transpose() * &fixed;
        }
        let mu_idx = ansatz.free_mu_indices();
        let lam_idx = ansatz.free_lambda_indices();
        let (nm, nl) = (mu_idx.len(), lam_idx.len());
        let n = nm + nl;
        let mut k = DMatrix::zeros(n, n);
        let mut f = DVector::zeros(n);
        for (r, &i) in mu_idx.iter().enumerate() {
            f[r] = self.f_mu[i];
            for (c, &j) in mu_idx.iter().enumerate() {
                k[(r, c)] = self.kmm[(i, j)];
            }
            for (c, &j) in lam_idx.iter().enumerate() {
                // K_ml is the transpose of the assembled K_lm block.
                k[(r, nm + c)] = self.klm[(j, i)];
            }
        }
        for (r, &i) in lam_idx.iter().enumerate() {
            f[nm + r] = self.f_lam[i];
            for (c, &j) in mu_idx.iter().enumerate() {
                k[(nm + r, c)] = self.klm[(i, j)];
            }
            for (c, &j) in lam_idx.iter().enumerate() {
                k[(nm + r, nm + c)] = self.kll[(i, j)];
            }
        }
        let dof_map = mu_idx
            .iter()
            .map(|&i| (Field::Mu, i))
            .chain(lam_idx.iter().map(|&i| (Field::Lambda, i)))
            .collect();
        AssembledSystem { k, f, dof_map }
    }
}

/// Per-cell contribution over the locally supported functions.
struct CellLocal {
    lam_idx: Vec<usize>,
    mu_idx: Vec<usize>,
    kll: DMatrix<f64>,
    klm: DMatrix<f64>,
    kmm: DMatrix<f64>,
    /// Bilinear-form action of the fixed lambda lift on the local tests.
    lift_lam: DVector<f64>,
    lift_mu: DVector<f64>,
}

fn scatter_cell(local: &CellLocal, blocks: &mut FullBlocks) {
    for (a, &gi) in local.lam_idx.iter().enumerate() {
        for (b, &gj) in local.lam_idx.iter().enumerate() {
            blocks.kll[(gi, gj)] += local.kll[(a, b)];
        }
        for (b, &gj) in local.mu_idx.iter().enumerate() {
            blocks.klm[(gi, gj)] += local.klm[(a, b)];
        }
        blocks.f_lam[gi] -= local.lift_lam[a];
    }
    for (a, &gi) in local.mu_idx.iter().enumerate() {
        for (b, &gj) in local.mu_idx.iter().enumerate() {
            blocks.kmm[(gi, gj)] += local.kmm[(a, b)];
        }
        blocks.f_mu[gi] -= local.lift_mu[a];
    }
}

fn assemble_steady(
    spec: &ProblemSpec,
    ansatz: &DualAnsatz,
    lam: &BasisSet1D,
    mu: &BasisSet1D,
    mode: ExecMode,
) -> Result<AssembledSystem> {
    let alpha = spec.convection();
    let kappa = spec.diffusion();
    let breaks = merge_breakpoints(&lam.breakpoints(), &mu.breakpoints(), MERGE_TOL);
    let count = lam.degree().max(mu.degree()) + 1;
    let rule = QuadratureRule::gauss_legendre(count.min(MAX_POINTS))?;
    let cells: Vec<(f64, f64)> = breaks.windows(2).map(|w| (w[0], w[1])).collect();
    let lift = ansatz.lambda_extra.clone();

    let locals: Vec<Result<CellLocal>> = map_ordered(mode, &cells, |&(a, b)| {
        steady_cell(lam, mu, alpha, kappa, lift.as_ref(), &rule, a, b)
    });

    let (n_lam, n_mu) = (lam.n_funcs(), mu.n_funcs());
    let mut blocks = FullBlocks {
        kll: DMatrix::zeros(n_lam, n_lam),
        klm: DMatrix::zeros(n_lam, n_mu),
        kmm: DMatrix::zeros(n_mu, n_mu),
        f_lam: DVector::zeros(n_lam),
        f_mu: DVector::zeros(n_mu),
    };
    for local in locals {
        scatter_cell(&local?, &mut blocks);
    }

    // Boundary terms of the mu equation from the primal Dirichlet data.
    let ev1 = mu.eval(1.0)?;
    for (k, &v) in ev1.values.iter().enumerate() {
        blocks.f_mu[ev1.first + k] += spec.bc_right * v;
    }
    let ev0 = mu.eval(0.0)?;
    for (k, &v) in ev0.values.iter().enumerate() {
        blocks.f_mu[ev0.first + k] -= spec.bc_left * v;
    }

    Ok(blocks.reduce(ansatz))
}

#[allow(clippy::too_many_arguments)]
fn steady_cell(
    lam: &BasisSet1D,
    mu: &BasisSet1D,
    alpha: f64,
    kappa: f64,
    lift: Option<&Polynomial>,
    rule: &QuadratureRule,
    a: f64,
    b: f64,
) -> Result<CellLocal> {
    let probe = 0.5 * (a + b);
    let lam_probe = lam.eval(probe)?;
    let mu_probe = mu.eval(probe)?;
    let (nl, nm) = (lam_probe.len(), mu_probe.len());
    let mut local = CellLocal {
        lam_idx: (lam_probe.first..lam_probe.first + nl).collect(),
        mu_idx: (mu_probe.first..mu_probe.first + nm).collect(),
        kll: DMatrix::zeros(nl, nl),
        klm: DMatrix::zeros(nl, nm),
        kmm: DMatrix::zeros(nm, nm),
        lift_lam: DVector::zeros(nl),
        lift_mu: DVector::zeros(nm),
    };
    let mut conv = vec![0.0; nl];
    for (x, w) in rule.mapped(a, b) {
        let le = lam.eval(x)?;
        let me = mu.eval(x)?;
        debug_assert_eq!(le.first, lam_probe.first);
        debug_assert_eq!(me.first, mu_probe.first);
        for i in 0..nl {
            conv[i] = alpha * le.values[i] + kappa * le.derivs[i];
        }
        for i in 0..nl {
            for j in 0..nl {
                local.kll[(i, j)] += w * (conv[i] * conv[j]);
            }
            for j in 0..nm {
                local.klm[(i, j)] -= w * conv[i] * me.values[j];
            }
        }
        for i in 0..nm {
            for j in 0..nm {
                local.kmm[(i, j)] +=
                    w * (me.derivs[i] * me.derivs[j] + me.values[i] * me.values[j]);
            }
        }
        if let Some(g) = lift {
            let (gv, gd) = g.eval(x);
            let cg = alpha * gv + kappa * gd;
            for i in 0..nl {
                local.lift_lam[i] += w * conv[i] * cg;
            }
            for i in 0..nm {
                local.lift_mu[i] -= w * cg * me.values[i];
            }
        }
    }
    Ok(local)
}

fn assemble_transient(
    spec: &ProblemSpec,
    ansatz: &DualAnsatz,
    lam: &TensorBasis2D,
    mu: &TensorBasis2D,
    mode: ExecMode,
) -> Result<AssembledSystem> {
    let alpha = spec.convection();
    let kappa = spec.diffusion();
    let breaks_x = merge_breakpoints(
        &lam.basis_x.breakpoints(),
        &mu.basis_x.breakpoints(),
        MERGE_TOL,
    );
    let breaks_t = merge_breakpoints(
        &lam.basis_t.breakpoints(),
        &mu.basis_t.breakpoints(),
        MERGE_TOL,
    );
    let count_x = lam.basis_x.degree().max(mu.basis_x.degree()) + 1;
    let count_t = lam.basis_t.degree().max(mu.basis_t.degree()) + 1;
    let rule_x = QuadratureRule::gauss_legendre(count_x.min(MAX_POINTS))?;
    let rule_t = QuadratureRule::gauss_legendre(count_t.min(MAX_POINTS))?;

    let mut cells = Vec::with_capacity((breaks_x.len() - 1) * (breaks_t.len() - 1));
    for wx in breaks_x.windows(2) {
        for wt in breaks_t.windows(2) {
            cells.push(((wx[0], wx[1]), (wt[0], wt[1])));
        }
    }

    let locals: Vec<Result<CellLocal>> = map_ordered(mode, &cells, |&(sx, st)| {
        transient_cell(lam, mu, alpha, kappa, &rule_x, &rule_t, sx, st)
    });

    let (n_lam, n_mu) = (lam.n_funcs(), mu.n_funcs());
    let mut blocks = FullBlocks {
        kll: DMatrix::zeros(n_lam, n_lam),
        klm: DMatrix::zeros(n_lam, n_mu),
        kmm: DMatrix::zeros(n_mu, n_mu),
        f_lam: DVector::zeros(n_lam),
        f_mu: DVector::zeros(n_mu),
    };
    for local in locals {
        scatter_cell(&local?, &mut blocks);
    }

    blocks.f_lam += initial_condition_force(spec, lam)?;
    blocks.f_mu += mu_boundary_force(spec, mu)?;

    Ok(blocks.reduce(ansatz))
}

#[allow(clippy::too_many_arguments)]
fn transient_cell(
    lam: &TensorBasis2D,
    mu: &TensorBasis2D,
    alpha: f64,
    kappa: f64,
    rule_x: &QuadratureRule,
    rule_t: &QuadratureRule,
    span_x: (f64, f64),
    span_t: (f64, f64),
) -> Result<CellLocal> {
    let probe_x = 0.5 * (span_x.0 + span_x.1);
    let probe_t = 0.5 * (span_t.0 + span_t.1);
    let lam_probe = lam.eval(probe_x, probe_t)?;
    let mu_probe = mu.eval(probe_x, probe_t)?;
    let (nl, nm) = (lam_probe.indices.len(), mu_probe.indices.len());
    let mut local = CellLocal {
        lam_idx: lam_probe.indices,
        mu_idx: mu_probe.indices,
        kll: DMatrix::zeros(nl, nl),
        klm: DMatrix::zeros(nl, nm),
        kmm: DMatrix::zeros(nm, nm),
        lift_lam: DVector::zeros(nl),
        lift_mu: DVector::zeros(nm),
    };
    let mut conv = vec![0.0; nl];
    for (x, wx) in rule_x.mapped(span_x.0, span_x.1) {
        let lex = lam.basis_x.eval(x)?;
        let mex = mu.basis_x.eval(x)?;
        for (t, wt) in rule_t.mapped(span_t.0, span_t.1) {
            let w = wx * wt;
            let let_ = lam.basis_t.eval(t)?;
            let met = mu.basis_t.eval(t)?;
            let le = lam.combine(&lex, &let_);
            let me = mu.combine(&mex, &met);
            debug_assert_eq!(le.indices, local.lam_idx);
            debug_assert_eq!(me.indices, local.mu_idx);
            for i in 0..nl {
                conv[i] = alpha * le.values[i] + kappa * le.d_dx[i];
            }
            for i in 0..nl {
                for j in 0..nl {
                    local.kll[(i, j)] += w * (le.d_dt[i] * le.d_dt[j] + conv[i] * conv[j]);
                }
                for j in 0..nm {
                    local.klm[(i, j)] += w * (le.d_dt[i] * me.d_dx[j] - conv[i] * me.values[j]);
                }
            }
            for i in 0..nm {
                for j in 0..nm {
                    local.kmm[(i, j)] +=
                        w * (me.d_dx[i] * me.d_dx[j] + me.values[i] * me.values[j]);
                }
            }
        }
    }
    Ok(local)
}

/// `f_l = -∫ u0(x) N_l(x, 0) dx`, with the Gauss count raised until two
/// successive counts agree, since the initial condition need not be
/// polynomial.
fn initial_condition_force(spec: &ProblemSpec, lam: &TensorBasis2D) -> Result<DVector<f64>> {
    let n = lam.n_funcs();
    if spec.u0.is_zero() {
        return Ok(DVector::zeros(n));
    }
    let et0 = lam.basis_t.eval(0.0)?;
    let breaks = lam.basis_x.breakpoints();
    let start = lam.basis_x.degree() + 2;
    let mut prev: Option<DVector<f64>> = None;
    for count in start..=MAX_POINTS {
        let rule = QuadratureRule::gauss_legendre(count)?;
        let mut f = DVector::zeros(n);
        for span in breaks.windows(2) {
            for (x, w) in rule.mapped(span[0], span[1]) {
                let ex = lam.basis_x.eval(x)?;
                let u0 = spec.u0.eval(x);
                let ev = lam.combine(&ex, &et0);
                for (k, &gi) in ev.indices.iter().enumerate() {
                    f[gi] -= w * u0 * ev.values[k];
                }
            }
        }
        if let Some(p) = prev {
            if (&f - &p).amax() <= IC_QUAD_TOL {
                return Ok(f);
            }
        }
        prev = Some(f);
    }
    Err(Error::NoConvergence(MAX_POINTS))
}

/// Boundary force of the mu equation: both spatial ends for the
/// convection-diffusion problem, only the Dirichlet end for heat.
fn mu_boundary_force(spec: &ProblemSpec, mu: &TensorBasis2D) -> Result<DVector<f64>> {
    let mut f = DVector::zeros(mu.n_funcs());
    let rule = QuadratureRule::gauss_legendre(mu.basis_t.degree() + 1)?;
    let breaks_t = mu.basis_t.breakpoints();
    let ex0 = mu.basis_x.eval(0.0)?;
    let ex1 = mu.basis_x.eval(1.0)?;
    for span in breaks_t.windows(2) {
        for (t, w) in rule.mapped(span[0], span[1]) {
            let et = mu.basis_t.eval(t)?;
            if spec.kind == ProblemKind::TransientCd && spec.bc_right != 0.0 {
                let ev = mu.combine(&ex1, &et);
                for (k, &gi) in ev.indices.iter().enumerate() {
                    f[gi] += w * spec.bc_right * ev.values[k];
                }
            }
            if spec.bc_left != 0.0 {
                let ev = mu.combine(&ex0, &et);
                for (k, &gi) in ev.indices.iter().enumerate() {
                    f[gi] -= w * spec.bc_left * ev.values[k];
                }
            }
        }
    }
    Ok(f)
}

/// Assemble the dual boundary-value problem of the ODE `du/dt = a u`:
///
/// ```text
/// K_ij = ∫ [ l_j' l_i' + a^2 l_j l_i ] dt - a l_j(0) l_i(0),
/// f_i  = -u0 l_i(0),
/// ```
///
/// with the terminal condition `l(T) = lambda_T` imposed by lifting the
/// last (interpolatory) coefficient.
pub fn assemble_ivp_ode(
    spec: &ProblemSpec,
    lambda: &BasisSet1D,
    lambda_terminal: f64,
) -> Result<AssembledSystem> {
    spec.validate()?;
    if spec.kind != ProblemKind::IvpOde {
        return Err(Error::invalid(format!(
            "expected the ODE problem kind, got {}",
            spec.kind.name()
        )));
    }
    let u0 = spec
        .u0
        .scalar()
        .ok_or_else(|| Error::invalid("the ODE problem takes a scalar initial value".to_string()))?;
    let (start, end) = lambda.domain();
    if start != 0.0 || (end - spec.t_final).abs() > 1e-12 {
        return Err(Error::invalid(format!(
            "lambda basis domain [{start}, {end}] does not match [0, {}]",
            spec.t_final
        )));
    }
    let (first, last) = lambda.boundary_interpolatory().ok_or_else(|| {
        Error::invalid("lambda basis cannot interpolate the terminal condition".to_string())
    })?;
    let _ = first;

    let n = lambda.n_funcs();
    let a = spec.a;
    let breaks = lambda.breakpoints();
    let rule = QuadratureRule::gauss_legendre((lambda.degree() + 1).min(MAX_POINTS))?;
    let mut k = DMatrix::zeros(n, n);
    for span in breaks.windows(2) {
        for (t, w) in rule.mapped(span[0], span[1]) {
            let ev = lambda.eval(t)?;
            for i in 0..ev.len() {
                for j in 0..ev.len() {
                    k[(ev.first + i, ev.first + j)] += w
                        * (ev.derivs[i] * ev.derivs[j]
                            + a * a * (ev.values[i] * ev.values[j]));
                }
            }
        }
    }
    let ev0 = lambda.eval(0.0)?;
    for i in 0..ev0.len() {
        for j in 0..ev0.len() {
            k[(ev0.first + i, ev0.first + j)] -= a * (ev0.values[i] * ev0.values[j]);
        }
    }
    let mut f = DVector::zeros(n);
    for i in 0..ev0.len() {
        f[ev0.first + i] = -u0 * ev0.values[i];
    }

    // Terminal Dirichlet condition: mask the last coefficient and move its
    // lifted value to the right-hand side.
    let free: Vec<usize> = (0..n).filter(|&i| i != last).collect();
    let nf = free.len();
    let mut kf = DMatrix::zeros(nf, nf);
    let mut ff = DVector::zeros(nf);
    for (r, &i) in free.iter().enumerate() {
        ff[r] = f[i] - k[(i, last)] * lambda_terminal;
        for (c, &j) in free.iter().enumerate() {
            kf[(r, c)] = k[(i, j)];
        }
    }
    let dof_map = free.iter().map(|&i| (Field::Lambda, i)).collect();
    Ok(AssembledSystem {
        k: kf,
        f: ff,
        dof_map,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ansatz::{build_dual_ansatz, BasisConfig, BasisFamily};
    use crate::basis::BSplineBasis;
    use crate::problem::InitialCondition;
    use approx::assert_abs_diff_eq;

    fn laplace_verification_ansatz() -> (ProblemSpec, DualAnsatz) {
        let spec = ProblemSpec::laplace(0.0, 1.0);
        let ansatz = build_dual_ansatz(
            &spec,
            BasisConfig::new(BasisFamily::Poly, 3, 1),
            BasisConfig::new(BasisFamily::Poly, 2, 1),
        )
        .unwrap();
        (spec, ansatz)
    }

    /// The 5x5 system of the quadratic-mu / cubic-lambda Laplace solve.
    fn laplace_expected_matrix() -> DMatrix<f64> {
        DMatrix::from_row_slice(
            5,
            5,
            &[
                1.0, 1.0 / 2.0, 1.0 / 3.0, 0.0, 0.0, //
                1.0 / 2.0, 4.0 / 3.0, 5.0 / 4.0, 1.0 / 6.0, 1.0 / 12.0, //
                1.0 / 3.0, 5.0 / 4.0, 23.0 / 15.0, 1.0 / 6.0, 1.0 / 10.0, //
                0.0, 1.0 / 6.0, 1.0 / 6.0, 1.0 / 3.0, 1.0 / 6.0, //
                0.0, 1.0 / 12.0, 1.0 / 10.0, 1.0 / 6.0, 2.0 / 15.0,
            ],
        )
    }

    #[test]
    fn laplace_system_matches_exact_algebra() {
        let (spec, ansatz) = laplace_verification_ansatz();
        let sys = assemble(&spec, &ansatz).unwrap();
        let expected = laplace_expected_matrix();
        assert_eq!(sys.n_dof(), 5);
        for i in 0..5 {
            for j in 0..5 {
                assert_abs_diff_eq!(sys.k[(i, j)], expected[(i, j)], epsilon = 1e-14);
            }
        }
        let f_expected = [1.0, 1.0, 1.0, 0.0, 0.0];
        for (i, &fe) in f_expected.iter().enumerate() {
            assert_abs_diff_eq!(sys.f[i], fe, epsilon = 1e-14);
        }
    }

    #[test]
    fn laplace_lifted_data_changes_only_the_force() {
        let (spec, ansatz) = laplace_verification_ansatz();
        // Fixed cubic carrying lambda(0) = 1, lambda(1) = 2.
        let ansatz = ansatz
            .with_lambda_lift(Polynomial::new(vec![1.0, -3.0, 1.0, 3.0]))
            .unwrap();
        let sys = assemble(&spec, &ansatz).unwrap();
        let expected_k = laplace_expected_matrix();
        for i in 0..5 {
            for j in 0..5 {
                assert_abs_diff_eq!(sys.k[(i, j)], expected_k[(i, j)], epsilon = 1e-14);
            }
        }
        let f_expected = [2.0, 29.0 / 12.0, 23.0 / 10.0, 11.0 / 6.0, 16.0 / 15.0];
        for (i, &fe) in f_expected.iter().enumerate() {
            assert_abs_diff_eq!(sys.f[i], fe, epsilon = 1e-14);
        }
    }

    #[test]
    fn homogeneous_transient_problem_has_zero_force() {
        let mut spec = ProblemSpec::transient_cd(0.0, 0.0, InitialCondition::Constant(0.0));
        spec.kappa = 0.0;
        let ansatz = build_dual_ansatz(
            &spec,
            BasisConfig::new(BasisFamily::BSpline, 3, 2),
            BasisConfig::new(BasisFamily::BSpline, 2, 2),
        )
        .unwrap();
        let sys = assemble(&spec, &ansatz).unwrap();
        assert_eq!(sys.f.amax(), 0.0);
    }

    #[test]
    fn stiffness_is_exactly_symmetric() {
        let spec = ProblemSpec::steady_cd(10.0, 0.0, 1.0);
        let ansatz = build_dual_ansatz(
            &spec,
            BasisConfig::new(BasisFamily::BSpline, 3, 8),
            BasisConfig::new(BasisFamily::BSpline, 2, 8),
        )
        .unwrap();
        let sys = assemble(&spec, &ansatz).unwrap();
        let diff = (&sys.k - sys.k.transpose()).amax();
        assert_eq!(diff, 0.0);
    }

    #[test]
    fn cross_block_agrees_with_directly_assembled_transpose() {
        // Assemble K_ml independently from its own quadrature loop and
        // compare against the stored transpose of K_lm.
        let spec = ProblemSpec::steady_cd(7.0, 0.0, 1.0);
        let ansatz = build_dual_ansatz(
            &spec,
            BasisConfig::new(BasisFamily::BSpline, 3, 6),
            BasisConfig::new(BasisFamily::BSpline, 2, 6),
        )
        .unwrap();
        let sys = assemble(&spec, &ansatz).unwrap();
        let lam = ansatz.lambda_space.as_one_d().unwrap();
        let mu = ansatz.mu_space.as_one_d().unwrap();
        let breaks = merge_breakpoints(&lam.breakpoints(), &mu.breakpoints(), MERGE_TOL);
        let rule = QuadratureRule::gauss_legendre(lam.degree().max(mu.degree()) + 1).unwrap();
        let mut kml = DMatrix::zeros(mu.n_funcs(), lam.n_funcs());
        for span in breaks.windows(2) {
            for (x, w) in rule.mapped(span[0], span[1]) {
                let le = lam.eval(x).unwrap();
                let me = mu.eval(x).unwrap();
                for i in 0..me.len() {
                    for j in 0..le.len() {
                        let conv = spec.alpha * le.values[j] + spec.kappa * le.derivs[j];
                        kml[(me.first + i, le.first + j)] -= w * conv * me.values[i];
                    }
                }
            }
        }
        let nm = ansatz.n_mu_free();
        for (r, &(field_r, i)) in sys.dof_map.iter().enumerate().take(nm) {
            assert_eq!(field_r, Field::Mu);
            for (c, &(field_c, j)) in sys.dof_map.iter().enumerate().skip(nm) {
                assert_eq!(field_c, Field::Lambda);
                assert_abs_diff_eq!(sys.k[(r, c)], kml[(i, j)], epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn ivp_rejects_mismatched_domain() {
        let spec = ProblemSpec::ivp(-1.0, 1.0, 2.0, 0.0);
        let basis =
            BasisSet1D::BSpline(BSplineBasis::uniform(3, 8, 0.0, 1.0).unwrap());
        assert!(assemble_ivp_ode(&spec, &basis, 0.0).is_err());
    }
}
