use serde::Serialize;

use crate::error::{Error, Result};
use crate::nonlin::{Expr, ScalarNonlin, SystemKind, SystemNonlin, Var};
use crate::numeric::grid;

const SCAN_LO: f64 = 1e-6;
const SCAN_HI: f64 = 1e6;
const SCAN_POINTS: usize = 2401;

/// `h_i(s) = s f_i(s)`, their monotone inverses and the derived quantities
/// `φ(t) = t / (h₁⁻¹(t) h₂⁻¹(t))` and `N(t₁, t₂) = 2A + h₁(t₂) + h₂(t₁)`.
/// All evaluations are carried out on `ln s`, so large arguments do not overflow.
#[derive(Debug, Clone)]
pub struct HCalculus {
    f1: ScalarNonlin,
    f2: ScalarNonlin,
    /// Monotonicity onset: `h₁, h₂` are positive and strictly increasing on the
    /// scan grid from here on.
    pub s0: f64,
    /// `inf_{s ≥ 0} h_i(s)` on the scan grid.
    pub inf_h: [f64; 2],
    /// Smallest grid value `A ≥ 2 max(s₀, -A₁, -A₂)`, inside the range of
    /// both inverses, with `φ` increasing on `[A, 1e6]`.
    pub a: f64,
    ls: Vec<f64>,
    lh: [Vec<f64>; 2],
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HSummary {
    pub s0: f64,
    pub a: f64,
    pub inf_h1: f64,
    pub inf_h2: f64,
}

impl HCalculus {
    /// From the two components written as functions of their own argument
    /// (`f₁` of `v`, `f₂` of `u`; both are parsed in `u`).
    pub fn new(f1: &ScalarNonlin, f2: &ScalarNonlin) -> Result<Self> {
        let ls: Vec<f64> = grid::geometric(SCAN_LO, SCAN_HI, SCAN_POINTS).iter().map(|s| s.ln()).collect();
        let lh_of = |f: &ScalarNonlin| -> Vec<f64> {
            ls.iter()
                .map(|&l| {
                    let y = f.value_ln(l);
                    if y.sign > 0.0 {
                        l + y.ln
                    } else {
                        f64::NEG_INFINITY
                    }
                })
                .collect()
        };
        let lh = [lh_of(f1), lh_of(f2)];
        let last = ls.len() - 1;
        let mut start = last;
        while start > 0 && lh.iter().all(|v| v[start - 1].is_finite() && v[start - 1] < v[start]) {
            start -= 1;
        }
        if start >= last - 1 || lh.iter().any(|v| !v[last].is_finite()) {
            return Err(Error::Invalid("h1, h2 are not eventually positive and increasing on [1e-6, 1e6]".into()));
        }
        let s0 = ls[start].exp();
        // h(0) = 0 is included.
        let inf = |f: &ScalarNonlin| ls.iter().map(|&l| l.exp() * f.value(l.exp())).fold(0.0, f64::min);
        let inf_h = [inf(f1), inf(f2)];
        let mut hc = HCalculus { f1: f1.clone(), f2: f2.clone(), s0, inf_h, a: f64::NAN, ls, lh };
        let lmin = hc.lh[0][start].max(hc.lh[1][start]);
        let floor = (2.0 * s0.max(-inf_h[0]).max(-inf_h[1])).max(lmin.exp());
        let lphi: Vec<(f64, f64)> =
            hc.ls.iter().filter(|&&l| l >= floor.ln() && l >= lmin).map(|&l| (l, hc.ln_phi(l))).collect();
        if lphi.len() < 2 {
            return Err(Error::Invalid("scan range too short above the monotonicity onset".into()));
        }
        // Last grid point from which ln φ rises by more than 1e-9 at every step.
        let mut k = lphi.len() - 1;
        while k > 0 && lphi[k].1 - lphi[k - 1].1 > 1e-9 {
            k -= 1;
        }
        if k >= lphi.len() - 1 {
            return Err(Error::Invalid("phi is not increasing near the end of the scan range".into()));
        }
        hc.a = lphi[k].0.exp();
        Ok(hc)
    }

    /// From a Lane-Emden system `(f₁(v), f₂(u))`.
    pub fn from_system(sys: &SystemNonlin) -> Result<Self> {
        if !matches!(sys.kind(), SystemKind::LaneEmden) {
            return Err(Error::Invalid("h-calculus needs a lane-emden system".into()));
        }
        let f1 = ScalarNonlin::new(sys.components()[0].subst(Var::V, &Expr::u()))?;
        let f2 = ScalarNonlin::new(sys.components()[1].clone())?;
        Self::new(&f1, &f2)
    }

    pub fn summary(&self) -> HSummary {
        HSummary { s0: self.s0, a: self.a, inf_h1: self.inf_h[0], inf_h2: self.inf_h[1] }
    }

    fn f(&self, i: usize) -> &ScalarNonlin {
        if i == 0 {
            &self.f1
        } else {
            &self.f2
        }
    }

    /// `ln h_i(e^l)`; `-∞` where `h_i ≤ 0`.
    pub fn ln_h(&self, i: usize, l: f64) -> f64 {
        let y = self.f(i).value_ln(l);
        if y.sign > 0.0 {
            l + y.ln
        } else {
            f64::NEG_INFINITY
        }
    }

    pub fn h(&self, i: usize, s: f64) -> f64 {
        s * self.f(i).value(s)
    }

    /// `ln h_i⁻¹(e^lt)` on the increasing branch `s ≥ s₀`: bracket from the
    /// table, then 200 bisection steps. Targets above the table are bracketed
    /// by doubling `ln s`. NaN below `h_i(s₀)`.
    pub fn ln_inv(&self, i: usize, lt: f64) -> f64 {
        let tab = &self.lh[i];
        let start = self.ls.partition_point(|&l| l < self.s0.ln());
        if !(lt >= tab[start]) {
            return f64::NAN;
        }
        let k = tab[start..].partition_point(|&v| v < lt) + start;
        let (mut lo, mut hi) = if k < tab.len() {
            (self.ls[k.saturating_sub(1).max(start)], self.ls[k])
        } else {
            let mut hi = *self.ls.last().unwrap();
            let lo = hi;
            while self.ln_h(i, hi) < lt {
                hi = 2.0 * hi.abs().max(1.0) + hi;
                if hi > 700.0 * 700.0 {
                    return f64::NAN;
                }
            }
            (lo, hi)
        };
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.ln_h(i, mid) < lt {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    pub fn inv(&self, i: usize, t: f64) -> f64 {
        self.ln_inv(i, t.ln()).exp()
    }

    /// `ln (h_i⁻¹ ∘ h_j)(e^l)`.
    pub fn ln_compose(&self, i: usize, j: usize, l: f64) -> f64 {
        self.ln_inv(i, self.ln_h(j, l))
    }

    /// `ln φ(e^lt)`.
    pub fn ln_phi(&self, lt: f64) -> f64 {
        lt - self.ln_inv(0, lt) - self.ln_inv(1, lt)
    }

    pub fn phi(&self, t: f64) -> f64 {
        self.ln_phi(t.ln()).exp()
    }

    pub fn big_n(&self, t1: f64, t2: f64) -> f64 {
        2.0 * self.a + self.h(0, t2) + self.h(1, t1)
    }

    /// `ln [f₂(u) / (h₁⁻¹∘h₂)(u)]` at `u = e^l` (first bound quantity without
    /// the distance factor); the second quantity swaps the roles.
    pub fn ln_bound_quantity(&self, which: usize, l: f64) -> f64 {
        let (i, j) = if which == 0 { (0, 1) } else { (1, 0) };
        let y = self.f(j).value_ln(l);
        if y.sign > 0.0 {
            y.ln - self.ln_compose(i, j, l)
        } else {
            f64::NEG_INFINITY
        }
    }
}

/// Exponents of the two bound quantities from the joint least-squares fit
/// `ln Q = e ln u + k ln ln u + c` over `u ∈ [lo, hi]` (`lo > e`).
///
/// The logarithmic exponent carries an `O(ln ln u / ln u)` bias from the
/// inverse functions, so windows far out (see [`ASYMPTOTIC_WINDOW`]) are
/// needed for two-digit accuracy. Evaluation is in log space throughout.
/// Default fit window for [`bound_exponents`].
pub const ASYMPTOTIC_WINDOW: (f64, f64) = (1e100, 1e300);

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundExponents {
    pub power: [f64; 2],
    pub log: [f64; 2],
}

pub fn bound_exponents(hc: &HCalculus, lo: f64, hi: f64, points: usize) -> BoundExponents {
    let l = grid::linear(lo.ln(), hi.ln(), points.max(3));
    let ll: Vec<f64> = l.iter().map(|x| x.ln()).collect();
    let mut out = BoundExponents { power: [0.0; 2], log: [0.0; 2] };
    for w in 0..2 {
        let y: Vec<f64> = l.iter().map(|&x| hc.ln_bound_quantity(w, x)).collect();
        let (e, k) = fit2(&l, &ll, &y);
        out.power[w] = e;
        out.log[w] = k;
    }
    out
}

/// Least squares `y ≈ a x + b z + c`; returns `(a, b)`.
fn fit2(x: &[f64], z: &[f64], y: &[f64]) -> (f64, f64) {
    let n = x.len() as f64;
    let mean = |v: &[f64]| v.iter().sum::<f64>() / n;
    let (mx, mz, my) = (mean(x), mean(z), mean(y));
    let (mut sxx, mut szz, mut sxz, mut sxy, mut szy) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for i in 0..x.len() {
        let (a, b, c) = (x[i] - mx, z[i] - mz, y[i] - my);
        sxx += a * a;
        szz += b * b;
        sxz += a * b;
        sxy += a * c;
        szy += b * c;
    }
    let det = sxx * szz - sxz * sxz;
    if det.abs() <= 1e-14 * sxx * szz {
        return (sxy / sxx, 0.0);
    }
    ((sxy * szz - szy * sxz) / det, (szy * sxx - sxy * sxz) / det)
}
