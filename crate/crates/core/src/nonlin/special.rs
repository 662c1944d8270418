//! The bijection `θ` and the auxiliary family `φ_K(s) = (1 + K/s) log(K + s)`.

use crate::error::{Error, Result};
use crate::numeric::roots;

/// Inverse of `s ↦ s⁻¹ e^{s-1}` on `[1, ∞)`.
///
/// Safeguarded Newton on `s - 1 - ln s - ln K`, which is increasing for `s > 1`.
pub fn theta(k: f64) -> Result<f64> {
    if !(k >= 1.0) || !k.is_finite() {
        return Err(Error::Domain(format!("theta needs K >= 1, got {k}")));
    }
    if k == 1.0 {
        return Ok(1.0);
    }
    let lk = k.ln();
    let g = |s: f64| s - 1.0 - s.ln() - lk;
    let (mut lo, mut hi) = (1.0, 2.0 + 2.0 * lk);
    let mut s = 1.0 + lk + (1.0 + lk).ln();
    if !(s > lo && s < hi) {
        s = 0.5 * (lo + hi);
    }
    for _ in 0..200 {
        let gs = g(s);
        if gs == 0.0 {
            break;
        }
        if gs > 0.0 {
            hi = s;
        } else {
            lo = s;
        }
        let mut next = s - gs / (1.0 - 1.0 / s);
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        if (next - s).abs() <= 1e-16 * s {
            s = next;
            break;
        }
        s = next;
    }
    Ok(s)
}

/// `φ_K(s) = (1 + K s⁻¹) log(K + s)`.
pub fn phi_k(k: f64, s: f64) -> f64 {
    (1.0 + k / s) * (k + s).ln()
}

/// Minimiser and infimum of `φ_K` on `(0, ∞)`.
///
/// For `K = 1` the function is increasing and the infimum `1` is approached as
/// `s → 0⁺`; the minimiser is reported as `0`. For `K > 1` the minimiser is
/// the root of `s - K log(K + s)`, the numerator of `φ_K'`.
pub fn phi_k_min(k: f64) -> Result<(f64, f64)> {
    if !(k >= 1.0) || !k.is_finite() {
        return Err(Error::Domain(format!("phi_K needs K >= 1, got {k}")));
    }
    if k == 1.0 {
        return Ok((0.0, 1.0));
    }
    let d = |s: f64| s - k * (k + s).ln();
    let mut hi = k.max(1.0);
    while d(hi) <= 0.0 {
        hi *= 2.0;
    }
    let s = roots::bisect(d, 0.0, hi, 0.0, 400).ok_or_else(|| Error::Solver("phi_K bracket lost".into()))?;
    Ok((s, phi_k(k, s)))
}
