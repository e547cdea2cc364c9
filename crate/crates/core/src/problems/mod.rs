//! Primal-field recovery through the DtP map, closed-form and series exact
//! solutions, error norms, refinement studies, and the ODE-side checks.

mod convergence;
mod exact;
mod ivp;
mod norms;
mod primal;

pub use convergence::{convergence_study, convergence_study_with_mode, ConvergenceRecord};
pub use exact::{ExactSolution, SERIES_TERMS};
pub use ivp::{adjoint_sensitivity, adjoint_sensitivity_closed_form, ivp_dual_closed_form, IvpDualValues};
pub use norms::{error_norms, max_errors, ErrorPair, MaxErrors};
pub use primal::{FieldValues, PrimalSolution};
