//! Nonlinearities: representation, parsing, calculus and regular variation.

pub mod asymptotic;
pub mod expr;
pub mod parse;
pub mod presets;
pub mod regvar;
pub mod scalar;
pub mod special;
pub mod system;

pub use asymptotic::End;
pub use expr::{Expr, Side, Var};
pub use parse::{parse_const, parse_expr};
pub use regvar::{f_plus, regvar_profile, regvar_profile_system, EndProfile, RegVarProfile};
pub use scalar::{weighted_primitive, weighted_primitive_or_inf, ScalarNonlin};
pub use special::{phi_k, phi_k_min, theta};
pub use system::{SystemKind, SystemNonlin};
