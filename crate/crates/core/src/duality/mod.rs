//! Finite-dimensional demonstrations of the dual formalism: a consistent
//! linear system solved through the dual normal equations, a pair of
//! quadratic equations solved by concave dual maximization, and
//! maximum-entropy barycentric coordinates from the entropy dual.

mod linear;
mod maxent;
mod quadratic;

pub use linear::{solve_linear_dual, LinearDualResult};
pub use maxent::{maxent_coordinates, MaxentResult};
pub use quadratic::{solve_quadratic_pair, QuadPairResult};
