use serde::Serialize;

use crate::error::{Error, Result};
use crate::nonlin::{f_plus, regvar_profile_system, End, ScalarNonlin, SystemNonlin};
use crate::numeric::grid;

/// Points of the `s`-grid on `[0, S]` (scalar case).
pub const SCALAR_POINTS: usize = 1000;
/// Points per axis of the `ξ`-grid on `[0, S]²` (system case).
pub const SYSTEM_POINTS_PER_AXIS: usize = 32;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceRow {
    pub lambda: f64,
    /// Sup-error over the sample grid.
    pub error: f64,
    /// Where the sup is attained.
    pub at: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceTable {
    pub direction: End,
    pub s_max: f64,
    /// Index of the limit profile.
    pub index: f64,
    pub points: usize,
    /// Rows in the order of approach (increasing `λ` towards infinity,
    /// decreasing towards zero).
    pub rows: Vec<ConvergenceRow>,
    /// Errors nonincreasing along the approach.
    pub monotone: bool,
    /// Errors strictly decreasing along the approach.
    pub strictly_decreasing: bool,
}

fn approach_order(lambdas: &[f64], end: End) -> Result<Vec<f64>> {
    if lambdas.is_empty() || lambdas.iter().any(|l| !(*l > 0.0 && l.is_finite())) {
        return Err(Error::Range("lambda samples must be positive and finite".into()));
    }
    let mut ls = lambdas.to_vec();
    match end {
        End::Infinity => ls.sort_by(f64::total_cmp),
        End::Zero => ls.sort_by(|a, b| b.total_cmp(a)),
    }
    Ok(ls)
}

fn finish(direction: End, s_max: f64, index: f64, points: usize, rows: Vec<ConvergenceRow>) -> ConvergenceTable {
    let monotone = rows.windows(2).all(|w| w[1].error <= w[0].error);
    let strictly_decreasing = rows.windows(2).all(|w| w[1].error < w[0].error);
    ConvergenceTable { direction, s_max, index, points, rows, monotone, strictly_decreasing }
}

/// `e(λ) = sup_{s ∈ [0, S]} |f(λs)/f(λ) − s^p|`. When `index` is `None`
/// the index of `f` at `end` is used.
pub fn uniform_convergence_check(
    f: &ScalarNonlin,
    index: Option<f64>,
    end: End,
    lambdas: &[f64],
    s_max: f64,
) -> Result<ConvergenceTable> {
    if !(s_max > 0.0) {
        return Err(Error::Range("S must be positive".into()));
    }
    let p = match index {
        Some(p) => p,
        None => f.index(end)?.0,
    };
    let s = grid::linear(0.0, s_max, SCALAR_POINTS);
    let mut rows = Vec::new();
    for lam in approach_order(lambdas, end)? {
        let ll = lam.ln();
        let den = f.value_ln(ll);
        if !(den.sign > 0.0) {
            return Err(Error::Domain(format!("f({lam:e}) is not positive")));
        }
        let mut row = ConvergenceRow { lambda: lam, error: 0.0, at: vec![0.0] };
        for &si in &s {
            let ratio = if si == 0.0 {
                f.value(0.0) / den.ln.exp()
            } else {
                let num = f.value_ln(ll + si.ln());
                num.sign * (num.ln - den.ln).exp()
            };
            let target = if si == 0.0 && p > 0.0 { 0.0 } else { si.powf(p) };
            let e = (ratio - target).abs();
            if e > row.error || e.is_nan() {
                row.error = e;
                row.at = vec![si];
            }
        }
        rows.push(row);
    }
    Ok(finish(end, s_max, p, SCALAR_POINTS, rows))
}

/// Vector analogue: `sup_{ξ ∈ [0,S]²} |f(λξ)/f⁺(λ) − f_lim(ξ)|` in the max
/// norm, where `f_lim` is the rescaling limit normalised to `f_lim⁺(1) = 1`.
pub fn uniform_convergence_check_system(
    sys: &SystemNonlin,
    end: End,
    lambdas: &[f64],
    s_max: f64,
) -> Result<ConvergenceTable> {
    if !(s_max > 0.0) {
        return Err(Error::Range("S must be positive".into()));
    }
    let prof = regvar_profile_system(sys)?;
    let lim = match end {
        End::Zero => prof.at_zero,
        End::Infinity => prof.at_infinity,
    };
    let axis = grid::linear(0.0, s_max, SYSTEM_POINTS_PER_AXIS);
    let mut rows = Vec::new();
    for lam in approach_order(lambdas, end)? {
        let norm = f_plus(sys, lam);
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(Error::Domain(format!("f⁺({lam:e}) = {norm} is not positive and finite")));
        }
        let mut row = ConvergenceRow { lambda: lam, error: 0.0, at: vec![0.0, 0.0] };
        for &a in &axis {
            for &b in &axis {
                let f = sys.eval(lam * a, lam * b);
                let e = (0..sys.m()).map(|i| (f[i] / norm - lim.limit[i].eval(a, b)).abs()).fold(0.0, f64::max);
                if e > row.error {
                    row.error = e;
                    row.at = vec![a, b];
                }
            }
        }
        rows.push(row);
    }
    Ok(finish(end, s_max, lim.index, SYSTEM_POINTS_PER_AXIS * SYSTEM_POINTS_PER_AXIS, rows))
}
