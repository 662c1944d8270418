//! Small numerical kernels shared by the analysis modules.

pub mod grid;
pub mod ode;
pub mod quad;
pub mod roots;
pub mod tridiag;
