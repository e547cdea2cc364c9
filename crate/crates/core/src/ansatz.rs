//! Construction of admissible discrete spaces for the paired dual fields.
//!
//! Admissibility is a set of Dirichlet conditions on the dual variables
//! that may be chosen freely; each problem family fixes one choice. For
//! boundary-interpolatory B-splines the conditions are imposed by masking
//! end coefficients; the barycentric RePU and bubble-polynomial families
//! satisfy them by construction, so their masks stay full.

use crate::basis::{
    poly_lambda_family, poly_mu_family, BSplineBasis, BasisSet1D, Polynomial, RepuBasis, RepuKind,
    TensorBasis2D,
};
use crate::error::{Error, Result};
use crate::problem::{ProblemKind, ProblemSpec};

/// Which approximating family a dual field uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisFamily {
    BSpline,
    Repu,
    /// Global polynomials: monomials for mu, end-vanishing bubbles for
    /// lambda. Verification ansatz for the exact Laplace solves.
    Poly,
}

/// Degree and span count of one field's family.
#[derive(Debug, Clone, Copy)]
pub struct BasisConfig {
    pub family: BasisFamily,
    pub degree: usize,
    pub n: usize,
}

impl BasisConfig {
    pub fn new(family: BasisFamily, degree: usize, n: usize) -> Self {
        BasisConfig { family, degree, n }
    }
}

/// A discrete space for one dual field: univariate for the steady and ODE
/// problems, a tensor product on the space-time square otherwise.
#[derive(Debug, Clone)]
pub enum AnsatzSpace {
    OneD(BasisSet1D),
    TwoD(TensorBasis2D),
}

impl AnsatzSpace {
    pub fn n_funcs(&self) -> usize {
        match self {
            AnsatzSpace::OneD(b) => b.n_funcs(),
            AnsatzSpace::TwoD(t) => t.n_funcs(),
        }
    }

    pub fn as_one_d(&self) -> Option<&BasisSet1D> {
        match self {
            AnsatzSpace::OneD(b) => Some(b),
            AnsatzSpace::TwoD(_) => None,
        }
    }

    pub fn as_two_d(&self) -> Option<&TensorBasis2D> {
        match self {
            AnsatzSpace::TwoD(t) => Some(t),
            AnsatzSpace::OneD(_) => None,
        }
    }
}

/// Paired admissible spaces with the free-coefficient masks and any fixed
/// (lifted) lambda data.
#[derive(Debug, Clone)]
pub struct DualAnsatz {
    pub lambda_space: AnsatzSpace,
    pub mu_space: AnsatzSpace,
    pub lambda_free: Vec<bool>,
    pub mu_free: Vec<bool>,
    /// Fixed coefficient values carried by masked lambda coefficients.
    pub lambda_fixed: Vec<f64>,
    /// A fixed function added to lambda outside the coefficient span,
    /// carrying nonzero Dirichlet data (univariate problems only).
    pub lambda_extra: Option<Polynomial>,
}

impl DualAnsatz {
    pub fn n_lambda_free(&self) -> usize {
        self.lambda_free.iter().filter(|&&b| b).count()
    }

    pub fn n_mu_free(&self) -> usize {
        self.mu_free.iter().filter(|&&b| b).count()
    }

    /// Free mu coefficient indices in basis order; this is the leading
    /// block of the global unknown ordering.
    pub fn free_mu_indices(&self) -> Vec<usize> {
        self.mu_free
            .iter()
            .enumerate()
            .filter_map(|(i, &free)| free.then_some(i))
            .collect()
    }

    /// Free lambda coefficient indices in basis order; trailing block.
    pub fn free_lambda_indices(&self) -> Vec<usize> {
        self.lambda_free
            .iter()
            .enumerate()
            .filter_map(|(i, &free)| free.then_some(i))
            .collect()
    }

    /// Total unknowns of the discrete dual problem.
    pub fn n_dof(&self) -> usize {
        self.n_lambda_free() + self.n_mu_free()
    }

    /// Attach nonzero lambda Dirichlet data as a fixed added polynomial.
    pub fn with_lambda_lift(mut self, lift: Polynomial) -> Result<Self> {
        if matches!(self.lambda_space, AnsatzSpace::TwoD(_)) {
            return Err(Error::invalid(
                "polynomial lambda lift is supported for univariate problems only".to_string(),
            ));
        }
        self.lambda_extra = Some(lift);
        Ok(self)
    }
}

fn build_1d_field(cfg: BasisConfig, lambda_field: bool) -> Result<BasisSet1D> {
    match cfg.family {
        BasisFamily::BSpline => Ok(BasisSet1D::BSpline(BSplineBasis::uniform(
            cfg.degree, cfg.n, 0.0, 1.0,
        )?)),
        BasisFamily::Repu => {
            let kind = if lambda_field {
                RepuKind::Lambda
            } else {
                RepuKind::Mu
            };
            Ok(BasisSet1D::Repu(RepuBasis::uniform(cfg.degree, cfg.n, kind)?))
        }
        BasisFamily::Poly => {
            if lambda_field {
                Ok(BasisSet1D::Poly(poly_lambda_family(cfg.degree)?))
            } else {
                Ok(BasisSet1D::Poly(poly_mu_family(cfg.degree)?))
            }
        }
    }
}

/// Mask the three lambda faces of the transient convection-diffusion
/// problem (`x = 0`, `x = 1`, `t = T`) or the two of the heat problem
/// (`x = 0`, `t = T`).
fn tensor_mask(nx: usize, nt: usize, x_first: bool, x_last: bool, t_last: bool) -> Vec<bool> {
    let mut free = vec![true; nx * nt];
    for ix in 0..nx {
        for it in 0..nt {
            let boundary = (x_first && ix == 0)
                || (x_last && ix == nx - 1)
                || (t_last && it == nt - 1);
            if boundary {
                free[ix * nt + it] = false;
            }
        }
    }
    free
}

/// Build the admissible dual ansatz for a problem.
///
/// The mask enforces exactly the Dirichlet conditions of the problem's
/// admissible sets; families that vanish at the ends by construction keep a
/// full mask.
pub fn build_dual_ansatz(
    spec: &ProblemSpec,
    lambda_cfg: BasisConfig,
    mu_cfg: BasisConfig,
) -> Result<DualAnsatz> {
    spec.validate()?;
    if lambda_cfg.degree < 1 || mu_cfg.degree < 1 {
        return Err(Error::invalid(
            "basis degrees must be at least 1 to represent the Dirichlet constraints".to_string(),
        ));
    }
    match spec.kind {
        ProblemKind::Laplace1D | ProblemKind::SteadyCd => {
            let lambda = build_1d_field(lambda_cfg, true)?;
            let mu = build_1d_field(mu_cfg, false)?;
            let n_lam = lambda.n_funcs();
            let mut lambda_free = vec![true; n_lam];
            if let Some((first, last)) = lambda.boundary_interpolatory() {
                lambda_free[first] = false;
                lambda_free[last] = false;
            } else if !lambda.vanishes_at_ends() {
                return Err(Error::invalid(
                    "lambda family can neither interpolate nor vanish at the interval ends"
                        .to_string(),
                ));
            }
            let mu_free = vec![true; mu.n_funcs()];
            Ok(DualAnsatz {
                lambda_space: AnsatzSpace::OneD(lambda),
                mu_space: AnsatzSpace::OneD(mu),
                lambda_free,
                mu_free,
                lambda_fixed: vec![0.0; n_lam],
                lambda_extra: None,
            })
        }
        ProblemKind::TransientCd | ProblemKind::TransientHeat => {
            if lambda_cfg.family != BasisFamily::BSpline || mu_cfg.family != BasisFamily::BSpline {
                return Err(Error::invalid(
                    "transient problems use tensor-product B-spline spaces".to_string(),
                ));
            }
            let lam_1d = |_| -> Result<BasisSet1D> {
                Ok(BasisSet1D::BSpline(BSplineBasis::uniform(
                    lambda_cfg.degree,
                    lambda_cfg.n,
                    0.0,
                    1.0,
                )?))
            };
            let mu_1d = |_| -> Result<BasisSet1D> {
                Ok(BasisSet1D::BSpline(BSplineBasis::uniform(
                    mu_cfg.degree,
                    mu_cfg.n,
                    0.0,
                    1.0,
                )?))
            };
            let lambda = TensorBasis2D::new(lam_1d(())?, lam_1d(())?);
            let mu = TensorBasis2D::new(mu_1d(())?, mu_1d(())?);
            let (lnx, lnt) = (lambda.basis_x.n_funcs(), lambda.basis_t.n_funcs());
            let (mnx, mnt) = (mu.basis_x.n_funcs(), mu.basis_t.n_funcs());
            let (lambda_free, mu_free) = match spec.kind {
                ProblemKind::TransientCd => (
                    tensor_mask(lnx, lnt, true, true, true),
                    vec![true; mnx * mnt],
                ),
                ProblemKind::TransientHeat => (
                    tensor_mask(lnx, lnt, true, false, true),
                    tensor_mask(mnx, mnt, false, true, false),
                ),
                _ => unreachable!(),
            };
            let n_lam = lnx * lnt;
            Ok(DualAnsatz {
                lambda_space: AnsatzSpace::TwoD(lambda),
                mu_space: AnsatzSpace::TwoD(mu),
                lambda_free,
                mu_free,
                lambda_fixed: vec![0.0; n_lam],
                lambda_extra: None,
            })
        }
        ProblemKind::IvpOde => Err(Error::invalid(
            "the ODE problem uses a single lambda basis; assemble it directly".to_string(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::InitialCondition;

    #[test]
    fn steady_bspline_masks_two_end_coefficients() {
        let spec = ProblemSpec::steady_cd(10.0, 0.0, 1.0);
        let ansatz = build_dual_ansatz(
            &spec,
            BasisConfig::new(BasisFamily::BSpline, 3, 20),
            BasisConfig::new(BasisFamily::BSpline, 2, 20),
        )
        .unwrap();
        // n + q = 23 lambda functions, first and last constrained.
        assert_eq!(ansatz.lambda_free.len(), 23);
        assert_eq!(ansatz.n_lambda_free(), 21);
        assert!(!ansatz.lambda_free[0] && !ansatz.lambda_free[22]);
        assert_eq!(ansatz.n_mu_free(), 22);
    }

    #[test]
    fn repu_lambda_mask_stays_full() {
        let spec = ProblemSpec::steady_cd(10.0, 0.0, 1.0);
        let ansatz = build_dual_ansatz(
            &spec,
            BasisConfig::new(BasisFamily::Repu, 3, 8),
            BasisConfig::new(BasisFamily::Repu, 2, 8),
        )
        .unwrap();
        assert_eq!(ansatz.n_lambda_free(), 16);
        assert_eq!(ansatz.n_mu_free(), 16);
    }

    #[test]
    fn transient_cd_masks_three_faces() {
        let spec = ProblemSpec::transient_cd(
            0.01,
            0.1,
            InitialCondition::SinProfile {
                offset: 0.0,
                amplitude: 1.0,
                half_waves: 2.0,
            },
        );
        let ansatz = build_dual_ansatz(
            &spec,
            BasisConfig::new(BasisFamily::BSpline, 10, 1),
            BasisConfig::new(BasisFamily::BSpline, 9, 1),
        )
        .unwrap();
        assert_eq!(ansatz.n_mu_free(), 100);
        assert_eq!(ansatz.n_lambda_free(), 90);
    }

    #[test]
    fn heat_masks_lambda_two_faces_and_mu_right_face() {
        let spec =
            ProblemSpec::transient_heat(1.0, 1.0, InitialCondition::Constant(1.0));
        let ansatz = build_dual_ansatz(
            &spec,
            BasisConfig::new(BasisFamily::BSpline, 6, 1),
            BasisConfig::new(BasisFamily::BSpline, 5, 1),
        )
        .unwrap();
        assert_eq!(ansatz.n_mu_free(), 30);
        assert_eq!(ansatz.n_lambda_free(), 36);
    }

    #[test]
    fn degree_zero_cannot_represent_constraints() {
        let spec = ProblemSpec::steady_cd(10.0, 0.0, 1.0);
        assert!(build_dual_ansatz(
            &spec,
            BasisConfig::new(BasisFamily::BSpline, 0, 4),
            BasisConfig::new(BasisFamily::BSpline, 1, 4),
        )
        .is_err());
    }
}
