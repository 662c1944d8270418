//! Sup/inf scans over log-spaced grids with kink handling and refinement.

use crate::error::Result;
use crate::nonlin::scalar::{cumulative_weighted_primitive, weighted_primitive};
use crate::nonlin::{ScalarNonlin, Side};
use crate::numeric::{grid, roots};

use super::verdict::ScanMeta;

/// Log-spaced scan range.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanGrid {
    pub lo: f64,
    pub hi: f64,
    pub points: usize,
    pub tol: f64,
}

impl Default for ScanGrid {
    fn default() -> Self {
        ScanGrid { lo: 1e-6, hi: 1e6, points: 2401, tol: 1e-9 }
    }
}

impl ScanGrid {
    pub fn meta(&self) -> ScanMeta {
        ScanMeta { lo: self.lo, hi: self.hi, points: self.points, tol: self.tol }
    }

    /// Grid points with a `1e-9` relative neighbourhood of each kink removed.
    pub fn points_avoiding(&self, kinks: &[f64]) -> Vec<f64> {
        grid::geometric(self.lo, self.hi, self.points)
            .into_iter()
            .filter(|s| kinks.iter().all(|k| (s - k).abs() > 1e-9 * k))
            .collect()
    }
}

/// Location and value of a scanned extremum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extremum {
    pub value: f64,
    pub at: f64,
    /// Set when the extremum is a one-sided limit at a kink.
    pub side: Option<Side>,
    /// The extremum sits at an end of the scan range and strictly beats
    /// every interior sample.
    pub on_boundary: bool,
}

/// Neighbours of `pts[i]`, pulled in so that no kink lies strictly inside.
fn bracket(pts: &[f64], i: usize, kinks: &[f64]) -> (f64, f64) {
    let x = pts[i];
    let mut lo = pts[i.saturating_sub(1)];
    let mut hi = pts[(i + 1).min(pts.len() - 1)];
    for &k in kinks {
        if k > lo && k < x {
            lo = k * (1.0 + 1e-9);
        }
        if k < hi && k > x {
            hi = k * (1.0 - 1e-9);
        }
    }
    (lo.min(x), hi.max(x))
}

/// Supremum of `g(s, side)` over the grid. At kinks both one-sided values
/// are sampled; elsewhere `side` is `Left`. The best grid sample is refined
/// by golden section in `ln s` between its neighbours (never across a kink).
pub fn sup_scan<G: Fn(f64, Side) -> f64>(g: G, sg: &ScanGrid, kinks: &[f64]) -> Extremum {
    let pts = sg.points_avoiding(kinks);
    let vals: Vec<f64> = pts.iter().map(|&s| g(s, Side::Left)).collect();
    let mut best = Extremum { value: f64::NEG_INFINITY, at: f64::NAN, side: None, on_boundary: false };
    let mut ibest = None;
    for (i, &v) in vals.iter().enumerate() {
        if v > best.value || (best.value.is_nan() && !v.is_nan()) {
            best = Extremum { value: v, at: pts[i], side: None, on_boundary: false };
            ibest = Some(i);
        }
    }
    let interior_max = vals[1..vals.len() - 1].iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if let Some(i) = ibest {
        let (lo, hi) = bracket(&pts, i, kinks);
        let (t, v) = roots::golden_max(|t| g(t.exp(), Side::Left), lo.ln(), hi.ln(), 1e-12, 200);
        if v > best.value {
            best.value = v;
            best.at = t.exp();
        }
        let edge = i == 0 || i == pts.len() - 1;
        best.on_boundary = edge && best.value > interior_max + 1e-12 * interior_max.abs();
    }
    for &k in kinks.iter().filter(|&&k| k >= sg.lo && k <= sg.hi) {
        for side in [Side::Left, Side::Right] {
            let v = g(k, side);
            if v > best.value {
                best = Extremum { value: v, at: k, side: Some(side), on_boundary: false };
            }
        }
    }
    best
}

/// Infimum counterpart of [`sup_scan`].
pub fn inf_scan<G: Fn(f64, Side) -> f64>(g: G, sg: &ScanGrid, kinks: &[f64]) -> Extremum {
    let e = sup_scan(|s, side| -g(s, side), sg, kinks);
    Extremum { value: -e.value, ..e }
}

/// `sup_s s^{w+1} f(s) / ∫₀ˢ σ^w f(σ) dσ` over the grid. Propagates
/// [`crate::Error::Divergent`] when the primitive is infinite.
pub fn primitive_ratio_sup(f: &ScalarNonlin, w: f64, sg: &ScanGrid) -> Result<Extremum> {
    let kinks = f.kinks();
    let mut pts = sg.points_avoiding(kinks);
    pts.extend(kinks.iter().copied().filter(|&k| k > sg.lo && k < sg.hi));
    pts.sort_by(f64::total_cmp);
    let prim = cumulative_weighted_primitive(f, w, &pts)?;
    let mut best = Extremum { value: f64::NEG_INFINITY, at: f64::NAN, side: None, on_boundary: false };
    let mut ib = 0;
    let ratio = |s: f64, big: f64| s.powf(w + 1.0) * f.value(s) / big;
    let vals: Vec<f64> = pts.iter().zip(&prim).map(|(&s, &p)| ratio(s, p)).collect();
    for (i, &v) in vals.iter().enumerate() {
        if v > best.value {
            best = Extremum { value: v, at: pts[i], side: None, on_boundary: false };
            ib = i;
        }
    }
    let (lo, hi) = bracket(&pts, ib, kinks);
    let refine = |t: f64| {
        let s = t.exp();
        match weighted_primitive(f, w, s) {
            Ok(p) => ratio(s, p),
            Err(_) => f64::NEG_INFINITY,
        }
    };
    let at_kink = kinks.iter().any(|k| (best.at - k).abs() <= 1e-12 * k);
    if !at_kink {
        let (t, v) = roots::golden_max(refine, lo.ln(), hi.ln(), 1e-12, 200);
        if v > best.value {
            best.value = v;
            best.at = t.exp();
        }
    }
    let interior = vals[1..vals.len() - 1].iter().copied().fold(f64::NEG_INFINITY, f64::max);
    best.on_boundary = (ib == 0 || ib == pts.len() - 1) && best.value > interior + 1e-12 * interior.abs();
    Ok(best)
}
