//! Rescaling limits of nonlinearities, a discrete doubling search, and the
//! approach of the `u_k` family to the critical bubble.

pub mod convergence;
pub mod critical;
pub mod doubling;

pub use convergence::{uniform_convergence_check, uniform_convergence_check_system, ConvergenceRow, ConvergenceTable};
pub use critical::{critical_limit_check, CriticalRow, CriticalTable};
pub use doubling::{check_point, doubling_point, DiscreteField, DoublingChecks, DoublingOutcome};
