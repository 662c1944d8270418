//! Regular-variation profiles and the boundary maximum `f⁺`.

use serde::Serialize;

use super::asymptotic::{self, vanishes, End, Lead};
use super::expr::Expr;
use super::scalar::ScalarNonlin;
use super::system::SystemNonlin;
use crate::error::{Error, Result};
use crate::numeric::{grid, roots};

/// How an index was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum IndexMethod {
    Structural,
    Numeric,
}

/// Behaviour at one end: `f(λξ) ≈ c λ^index |ln λ|^log_power limit(ξ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct EndProfile {
    pub end: End,
    pub index: f64,
    /// Exponent of the slowly varying factor `|ln s|^b` (0 when `L` tends
    /// to a constant).
    pub log_power: f64,
    /// Normalised homogeneous limit, one expression per component.
    pub limit: Vec<Expr>,
    /// Max of the raw leading shape over `{|ξ| = 1}` used for normalising.
    pub scale: f64,
    pub method: IndexMethod,
}

impl EndProfile {
    /// Human-readable description of the slowly varying factor.
    pub fn slowly_varying(&self) -> String {
        if self.log_power == 0.0 {
            "tends to a positive constant".to_string()
        } else {
            format!("~ |log s|^{}", self.log_power)
        }
    }

    /// Max relative defect of `limit(μU) = μ^index limit(U)` over
    /// `μ ∈ {0.5, 2, 10}` and a sample of directions.
    pub fn homogeneity_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        let pts = [(1.0, 0.0), (0.0, 1.0), (1.0, 1.0), (0.3, 1.0), (1.0, 0.45), (2.0, 0.7), (0.2, 0.05)];
        for &(u, v) in &pts {
            for &mu in &[0.5, 2.0, 10.0] {
                for e in &self.limit {
                    let a = e.eval(mu * u, mu * v);
                    let b = mu.powf(self.index) * e.eval(u, v);
                    if !(a.is_finite() && b.is_finite()) {
                        continue;
                    }
                    let d = (a - b).abs() / a.abs().max(b.abs()).max(1e-300);
                    if a != b {
                        worst = worst.max(d);
                    }
                }
            }
        }
        worst
    }
}

/// Indices and rescaling limits at both ends.
#[derive(Debug, Clone, PartialEq)]
pub struct RegVarProfile {
    pub at_zero: EndProfile,
    pub at_infinity: EndProfile,
}

/// Least-squares index from `ln f` on `λ ∈ {10², …, 10⁸}` (reciprocals at 0).
/// Requires the last two decade slopes to agree to `1e-3`.
pub fn numeric_index(f: &ScalarNonlin, end: End) -> Result<f64> {
    let lams: Vec<f64> = (2..=8).map(|k| 10f64.powi(if end == End::Infinity { k } else { -k })).collect();
    let xs: Vec<f64> = lams.iter().map(|l| l.ln()).collect();
    let mut ys = Vec::with_capacity(xs.len());
    for &x in &xs {
        let y = f.value_ln(x);
        if !(y.sign > 0.0) || !y.ln.is_finite() {
            return Err(Error::NotRegularlyVarying(format!("f is not positive at {:e}", x.exp())));
        }
        ys.push(y.ln);
    }
    let local: Vec<f64> = (0..xs.len() - 1).map(|i| (ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i])).collect();
    let k = local.len();
    if (local[k - 1] - local[k - 2]).abs() >= 1e-3 {
        return Err(Error::NotRegularlyVarying(format!(
            "log-log slope still drifting: {:.6} vs {:.6}",
            local[k - 2],
            local[k - 1]
        )));
    }
    Ok(grid::ls_slope(&xs[k - 2..], &ys[k - 2..]).0)
}

/// Maximum over `{U ∈ [0, λ]², max(u, v) = λ}` of `g(U)`: dense sampling of
/// both outer edges followed by golden-section refinement around the best
/// samples. Returns the value and its location.
pub fn boundary_max<G: Fn(f64, f64) -> f64>(g: G, lam: f64) -> (f64, (f64, f64)) {
    const N: usize = 1024;
    let mut best = (f64::NEG_INFINITY, (lam, lam));
    for edge in 0..2 {
        let at = |t: f64| if edge == 0 { (lam, t) } else { (t, lam) };
        let val = |t: f64| {
            let (u, v) = at(t);
            g(u, v)
        };
        let ts = grid::linear(0.0, lam, N);
        let vals: Vec<f64> = ts.iter().map(|&t| val(t)).collect();
        let (imax, vmax) =
            vals.iter().enumerate().fold((0, f64::NEG_INFINITY), |acc, (i, &v)| if v > acc.1 { (i, v) } else { acc });
        let lo = ts[imax.saturating_sub(1)];
        let hi = ts[(imax + 1).min(N - 1)];
        let (tr, vr) = roots::golden_max(val, lo, hi, 1e-14, 200);
        let (t, v) = if vr > vmax { (tr, vr) } else { (ts[imax], vmax) };
        if v > best.0 {
            best = (v, at(t));
        }
    }
    best
}

/// `f⁺(λ) = max_{|U| = λ} |f(U)|` in the max norm.
pub fn f_plus(sys: &SystemNonlin, lam: f64) -> f64 {
    if sys.m() == 1 {
        return sys.norm_at(lam, 0.0);
    }
    boundary_max(|u, v| sys.norm_at(u, v), lam).0
}

fn end_from_leads(leads: Vec<Option<Lead>>, end: End, m: usize) -> Result<EndProfile> {
    let dominant = leads
        .iter()
        .flatten()
        .fold(None::<(f64, f64)>, |acc, l| {
            let cand = (l.index, l.log_power);
            match acc {
                None => Some(cand),
                Some(a) => {
                    let better = if (cand.0 - a.0).abs() > 1e-12 {
                        match end {
                            End::Infinity => cand.0 > a.0,
                            End::Zero => cand.0 < a.0,
                        }
                    } else {
                        cand.1 > a.1 + 1e-12
                    };
                    Some(if better { cand } else { a })
                }
            }
        })
        .ok_or_else(|| Error::NotRegularlyVarying("all components vanish".into()))?;
    let shapes: Vec<Expr> = leads
        .into_iter()
        .map(|l| match l {
            Some(l) if (l.index - dominant.0).abs() <= 1e-12 && (l.log_power - dominant.1).abs() <= 1e-12 => l.shape,
            _ => Expr::Const(0.0),
        })
        .collect();
    let scale = if m == 1 {
        shapes[0].eval(1.0, 0.0).abs()
    } else {
        boundary_max(|u, v| shapes.iter().map(|e| e.eval(u, v).abs()).fold(0.0, f64::max), 1.0).0
    };
    if !(scale > 0.0) || !scale.is_finite() {
        return Err(Error::NotRegularlyVarying(format!("degenerate leading shape (scale {scale})")));
    }
    let limit = shapes
        .into_iter()
        .map(|e| if e.is_zero() { e } else { Expr::product(vec![Expr::c(1.0 / scale), e]) })
        .collect();
    Ok(EndProfile { end, index: dominant.0, log_power: dominant.1, limit, scale, method: IndexMethod::Structural })
}

fn scalar_end(f: &ScalarNonlin, end: End) -> Result<EndProfile> {
    match f.lead(end) {
        Ok(l) => end_from_leads(vec![l], end, 1),
        Err(_) => {
            let p = numeric_index(f, end)?;
            Ok(EndProfile {
                end,
                index: p,
                log_power: 0.0,
                limit: vec![Expr::pow(Expr::u(), p)],
                scale: 1.0,
                method: IndexMethod::Numeric,
            })
        }
    }
}

/// Profile of a scalar nonlinearity.
pub fn regvar_profile(f: &ScalarNonlin) -> Result<RegVarProfile> {
    Ok(RegVarProfile { at_zero: scalar_end(f, End::Zero)?, at_infinity: scalar_end(f, End::Infinity)? })
}

/// Profile of a system; limits are normalised so that their own `f⁺(1)` is 1.
pub fn regvar_profile_system(sys: &SystemNonlin) -> Result<RegVarProfile> {
    let ends = [End::Zero, End::Infinity].map(|end| {
        let leads: std::result::Result<Vec<Option<Lead>>, _> =
            sys.components().iter().map(|c| asymptotic::lead(c, end)).collect();
        let leads = leads.map_err(|e| Error::NotRegularlyVarying(format!("component lead: {e:?}")))?;
        let prof = end_from_leads(leads, end, sys.m())?;
        if prof.limit.iter().all(vanishes) {
            return Err(Error::NotRegularlyVarying("limit vanishes".into()));
        }
        Ok(prof)
    });
    let [z, i] = ends;
    Ok(RegVarProfile { at_zero: z?, at_infinity: i? })
}
