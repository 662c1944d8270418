use serde::Serialize;

use super::ball::{solve_ball, BallOptions, Guess};
use crate::error::{Error, Result};
use crate::nonlin::ScalarNonlin;
use crate::radial::Source;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecayRow {
    pub radius: f64,
    /// `u(0; R)` of the Newton iterate started from the boundary lift.
    pub center: f64,
    pub max_abs: f64,
    pub converged: bool,
    /// Empirical proxy for `η(R)`: the centre value when the solve converged
    /// with `‖u‖∞ ≤ Λ`, and `0` otherwise (empty sup).
    pub eta: f64,
    pub warning: Option<String>,
}

/// Small-branch centre values on `B_R` with boundary value `b`, in
/// decreasing `R`. The output samples one family of solutions and is a
/// proxy for `η(R)`, not its sup over all solutions.
pub fn decay_scan(
    f: &ScalarNonlin,
    n: u32,
    cap: f64,
    b: f64,
    radii: &[f64],
    intervals: usize,
) -> Result<Vec<DecayRow>> {
    if !(cap > 0.0) || !(b >= 0.0 && b <= cap) {
        return Err(Error::Range(format!("need 0 <= b <= Lambda, got b = {b}, Lambda = {cap}")));
    }
    let mut rs = radii.to_vec();
    rs.sort_by(|a, b| b.total_cmp(a));
    let mut rows = Vec::with_capacity(rs.len());
    for r in rs {
        let opts = BallOptions { intervals, guess: Guess::Constant { value: b }, ..Default::default() };
        let sol = solve_ball(Source::Scalar(f), n, r, &[b], &opts)?;
        let max_abs = sol.max_abs();
        let center = sol.u[0][0];
        let warning = if !sol.converged {
            Some(format!("no small solution found: {}", sol.status))
        } else if max_abs > cap {
            Some(format!("branch jump: ||u|| = {max_abs} exceeds Lambda = {cap}"))
        } else {
            None
        };
        let eta = if warning.is_none() { center.abs() } else { 0.0 };
        rows.push(DecayRow { radius: r, center, max_abs, converged: sol.converged, eta, warning });
    }
    Ok(rows)
}
