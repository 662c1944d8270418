//! Hypothesis checkers for Liouville-type theorems and threshold formulas.
//!
//! Every check scans a log-spaced grid (default `[1e-6, 1e6]`, 2401 points,
//! tolerance `1e-9`) and returns a [`CheckVerdict`] whose `holds` field is
//! certified on that grid only.

pub mod exponents;
pub mod formulas;
pub mod gs_general;
pub mod scalar;
pub mod scan;
pub mod systems;
pub mod verdict;

pub use exponents::{exponents, Exponents, Geometry};
pub use formulas::{
    benchmark_thresholds, check_cor22, check_cor23, cor0_params, lambda0, BenchmarkThresholds, Cor0Params,
};
pub use gs_general::{check_gs_general, gs_coefficients, search_gs_params, GsParams};
pub use scalar::{check_gs_modified, check_theorem_a, check_theorem_b, check_thm1_scalar};
pub use scan::ScanGrid;
pub use systems::{
    check_lane_emden_region, check_proportional, check_thm1_conditions, lane_emden_region, LaneEmdenRegion,
};
pub use verdict::{CheckVerdict, Holds, TheoremId, Witness};
