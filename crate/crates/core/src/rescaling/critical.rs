use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::{grid, roots};
use crate::radial::{uk_family, ClosedForm};

/// Radii `y ∈ [0, 10]` at which the rescaled profiles are compared.
pub const Y_MAX: f64 = 10.0;
pub const Y_POINTS: usize = 1001;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriticalRow {
    pub k: u32,
    pub p: f64,
    pub q: f64,
    /// `M_k = u_k(0)`.
    pub max: f64,
    /// `v_k(0)`.
    pub v_at_zero: f64,
    /// `max_y |−Δv_k − v_k^{p_S}|` on the y-grid.
    pub residual: f64,
    /// `c` of `(1 + c y²)^{−(n−2)/2}` best fitting `v_k` in the max norm.
    pub fit_rate: f64,
    pub fit_deviation: f64,
    /// Max-norm distance from the critical bubble with `c = 1/(n(n−2))`.
    pub bubble_deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriticalTable {
    pub n: u32,
    pub bubble_rate: f64,
    pub y_max: f64,
    pub y_points: usize,
    pub rows: Vec<CriticalRow>,
    pub residual_strictly_decreasing: bool,
}

fn max_gap(a: &ClosedForm, b: &ClosedForm, ys: &[f64]) -> f64 {
    ys.iter().map(|&y| (a.eval(y).0 - b.eval(y).0).abs()).fold(0.0, f64::max)
}

/// Rescale `u_k` to `v_k(y) = M_k⁻¹ u_k(M_k^{(1−q_k)/2} y)` and measure how
/// far it is from solving the critical equation `−Δv = v^{p_S}`.
pub fn critical_limit_check(n: u32, ks: &[u32]) -> Result<CriticalTable> {
    if n < 3 {
        return Err(Error::Range(format!("need n >= 3, got {n}")));
    }
    let nf = n as f64;
    let ps = (nf + 2.0) / (nf - 2.0);
    let power = (nf - 2.0) / 2.0;
    let bubble = ClosedForm::critical_bubble(n);
    let bubble_rate = 1.0 / (nf * (nf - 2.0));
    let ys = grid::linear(0.0, Y_MAX, Y_POINTS);
    let mut rows = Vec::with_capacity(ks.len());
    for &k in ks {
        let fam = uk_family(n, k)?;
        let v = fam.rescaled();
        let residual = ys.iter().map(|&y| (v.neg_laplacian(n, y) - v.eval(y).0.powf(ps)).abs()).fold(0.0, f64::max);
        let trial = |c: f64| ClosedForm::Bump { amp: 1.0, rate: c, power };
        let (lc, dev) = roots::golden_min(
            |lc| max_gap(&v, &trial(lc.exp()), &ys),
            (bubble_rate / 10.0).ln(),
            (bubble_rate * 10.0).ln(),
            1e-12,
            300,
        );
        rows.push(CriticalRow {
            k,
            p: fam.p,
            q: fam.q,
            max: fam.max,
            v_at_zero: v.eval(0.0).0,
            residual,
            fit_rate: lc.exp(),
            fit_deviation: dev,
            bubble_deviation: max_gap(&v, &bubble, &ys),
        });
    }
    let residual_strictly_decreasing = rows.windows(2).all(|w| w[1].residual < w[0].residual);
    Ok(CriticalTable { n, bubble_rate, y_max: Y_MAX, y_points: Y_POINTS, rows, residual_strictly_decreasing })
}
