//! Duality-based variational solver for ODEs and PDEs that lack a primal
//! variational structure.
//!
//! The primal equation is treated as a constraint on an auxiliary strictly
//! convex potential; eliminating the primal variables through the
//! dual-to-primal (DtP) map leaves a concave maximization over the dual
//! (Lagrange multiplier) fields with freely choosable Dirichlet data. A
//! standard Galerkin discretization of the dual weak form produces a
//! symmetric system `K d = f`; solving it and pushing the dual coefficients
//! through the DtP map recovers the primal solution — no upwinding,
//! stabilization or time stepping, and transient problems become a single
//! space-time solve with a terminal boundary condition.
//!
//! The crate covers:
//!
//! - univariate B-spline, RePU (fixed shallow network) and polynomial
//!   families with tensor products on the space-time square ([`basis`]);
//! - per-span Gauss–Legendre quadrature exact for all assembled integrands
//!   ([`quadrature`]);
//! - finite-dimensional duality demonstrations ([`duality`]);
//! - assembly of the dual Galerkin system for the Laplace, steady and
//!   transient convection-diffusion, heat and scalar ODE problems
//!   ([`assembly`]);
//! - a symmetric solver with a minimum-norm path for singular consistent
//!   frame systems ([`solver`]);
//! - DtP recovery, exact solutions, error norms, convergence studies and
//!   adjoint sensitivities ([`problems`]).
//!
//! Assembly cells and refinement levels run data-parallel under the
//! `parallel` feature (enabled by default) and fall back to sequential
//! loops without it; both modes produce bitwise identical results.

pub mod ansatz;
pub mod assembly;
pub mod basis;
pub mod duality;
pub mod error;
pub mod parallel;
pub mod problem;
pub mod problems;
pub mod quadrature;
pub mod solver;

pub use ansatz::{build_dual_ansatz, AnsatzSpace, BasisConfig, BasisFamily, DualAnsatz};
pub use assembly::{assemble, assemble_ivp_ode, assemble_with_mode, AssembledSystem, Field};
pub use error::{Error, Result};
pub use parallel::ExecMode;
pub use problem::{InitialCondition, ProblemKind, ProblemSpec};
pub use problems::{
    adjoint_sensitivity, adjoint_sensitivity_closed_form, convergence_study,
    convergence_study_with_mode, error_norms, ivp_dual_closed_form, max_errors,
    ConvergenceRecord, ErrorPair, ExactSolution, MaxErrors, PrimalSolution,
};
pub use solver::{solve_symmetric_consistent, SolveMethod, SolveReport};
