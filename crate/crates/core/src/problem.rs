//! Model-problem descriptions shared by assembly, exact solutions and the
//! command-line front end.

use crate::error::{Error, Result};

/// The problem families covered by the dual variational scheme here.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProblemKind {
    /// `du/dt = a u`, `u(0) = u0`, solved as a boundary-value problem in
    /// time with a terminal Dirichlet condition on the dual field.
    IvpOde,
    /// `u'' = 0` on `(0, 1)` with Dirichlet data at both ends.
    Laplace1D,
    /// `kappa u'' - alpha u' = 0` on `(0, 1)` with Dirichlet data.
    SteadyCd,
    /// `kappa u_xx - alpha u_x = u_t` on the space-time square, Dirichlet
    /// data on both spatial ends and an initial condition.
    TransientCd,
    /// `kappa u_xx = u_t` with Dirichlet data on the left and zero flux on
    /// the right.
    TransientHeat,
}

impl ProblemKind {
    pub fn is_transient(self) -> bool {
        matches!(self, ProblemKind::TransientCd | ProblemKind::TransientHeat)
    }

    pub fn name(self) -> &'static str {
        match self {
            ProblemKind::IvpOde => "ivp_ode",
            ProblemKind::Laplace1D => "laplace_1d",
            ProblemKind::SteadyCd => "steady_cd",
            ProblemKind::TransientCd => "transient_cd",
            ProblemKind::TransientHeat => "transient_heat",
        }
    }
}

/// Prescribed initial condition `u(x, 0)`; the scalar form doubles as the
/// initial value of the ODE problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InitialCondition {
    Constant(f64),
    /// `offset + amplitude * sin(half_waves * pi * x)`.
    SinProfile {
        offset: f64,
        amplitude: f64,
        half_waves: f64,
    },
}

impl InitialCondition {
    pub fn eval(&self, x: f64) -> f64 {
        match *self {
            InitialCondition::Constant(c) => c,
            InitialCondition::SinProfile {
                offset,
                amplitude,
                half_waves,
            } => offset + amplitude * (half_waves * std::f64::consts::PI * x).sin(),
        }
    }

    pub fn scalar(&self) -> Option<f64> {
        match *self {
            InitialCondition::Constant(c) => Some(c),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, InitialCondition::Constant(c) if *c == 0.0)
    }
}

/// Coefficients, boundary and initial data of one model problem.
#[derive(Debug, Clone)]
pub struct ProblemSpec {
    pub kind: ProblemKind,
    /// Diffusion / conductivity coefficient, nonnegative.
    pub kappa: f64,
    /// Convection coefficient (Peclet number in the steady experiments).
    pub alpha: f64,
    /// Rate of the ODE problem.
    pub a: f64,
    pub u0: InitialCondition,
    /// Dirichlet value at `x = 0`.
    pub bc_left: f64,
    /// Dirichlet value at `x = 1`; ignored by the heat problem whose right
    /// condition is zero flux, encoded by the kind.
    pub bc_right: f64,
    /// Terminal time of the time-dependent problems.
    pub t_final: f64,
    /// Terminal Dirichlet value for the dual field of the ODE problem,
    /// arbitrary by design.
    pub lambda_terminal: f64,
}

impl ProblemSpec {
    pub fn laplace(bc_left: f64, bc_right: f64) -> Self {
        ProblemSpec {
            kind: ProblemKind::Laplace1D,
            kappa: 1.0,
            alpha: 0.0,
            a: 0.0,
            u0: InitialCondition::Constant(0.0),
            bc_left,
            bc_right,
            t_final: 1.0,
            lambda_terminal: 0.0,
        }
    }

    pub fn steady_cd(alpha: f64, bc_left: f64, bc_right: f64) -> Self {
        ProblemSpec {
            kind: ProblemKind::SteadyCd,
            kappa: 1.0,
            alpha,
            a: 0.0,
            u0: InitialCondition::Constant(0.0),
            bc_left,
            bc_right,
            t_final: 1.0,
            lambda_terminal: 0.0,
        }
    }

    pub fn transient_cd(kappa: f64, alpha: f64, u0: InitialCondition) -> Self {
        ProblemSpec {
            kind: ProblemKind::TransientCd,
            kappa,
            alpha,
            a: 0.0,
            u0,
            bc_left: 0.0,
            bc_right: 0.0,
            t_final: 1.0,
            lambda_terminal: 0.0,
        }
    }

    pub fn transient_heat(kappa: f64, bc_left: f64, u0: InitialCondition) -> Self {
        ProblemSpec {
            kind: ProblemKind::TransientHeat,
            kappa,
            alpha: 0.0,
            a: 0.0,
            u0,
            bc_left,
            bc_right: 0.0,
            t_final: 1.0,
            lambda_terminal: 0.0,
        }
    }

    pub fn ivp(a: f64, u0: f64, t_final: f64, lambda_terminal: f64) -> Self {
        ProblemSpec {
            kind: ProblemKind::IvpOde,
            kappa: 0.0,
            alpha: 0.0,
            a,
            u0: InitialCondition::Constant(u0),
            bc_left: 0.0,
            bc_right: 0.0,
            t_final,
            lambda_terminal,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.kappa < 0.0 || !self.kappa.is_finite() {
            return Err(Error::invalid(format!(
                "kappa must be nonnegative, got {}",
                self.kappa
            )));
        }
        if !self.alpha.is_finite() || !self.a.is_finite() {
            return Err(Error::invalid("coefficients must be finite".to_string()));
        }
        if self.t_final <= 0.0 || !self.t_final.is_finite() {
            return Err(Error::invalid(format!(
                "terminal time must be positive, got {}",
                self.t_final
            )));
        }
        Ok(())
    }

    /// Effective convection coefficient entering the bilinear forms; the
    /// heat problem has none.
    pub fn convection(&self) -> f64 {
        match self.kind {
            ProblemKind::TransientHeat | ProblemKind::Laplace1D => 0.0,
            _ => self.alpha,
        }
    }

    /// Effective diffusion coefficient entering the bilinear forms.
    pub fn diffusion(&self) -> f64 {
        match self.kind {
            ProblemKind::Laplace1D => 1.0,
            _ => self.kappa,
        }
    }
}
