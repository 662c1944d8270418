//! Numerical toolkit for Liouville-type questions on semilinear elliptic
//! equations `-Δu = f(u)` and two-component systems `-ΔU = f(U)`.
//!
//! The crate is organised by task:
//!
//! * [`nonlin`]: power-log nonlinearities, parsing, calculus, regular variation.
//! * [`criteria`]: hypothesis checkers and exponent/threshold formulas.
//! * [`radial`]: radial shooting, closed-form solutions, Pohozaev functionals.
//! * [`bounds`]: Dirichlet solves on balls, universal-bound measurements.
//! * [`rescaling`]: rescaling limits, discrete doubling, critical limits.
//!
//! Verdicts produced here are certified only on the sampled grids and with the
//! tolerances recorded in each report; nothing in this crate proves a theorem.

// `!(x > 0.0)` is used on purpose so that NaN inputs are rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod criteria;
pub mod error;
pub mod nonlin;
pub mod numeric;
pub mod radial;
pub mod rescaling;

pub use error::{Error, Result};
