//! Closed-form thresholds and parameter windows.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::nonlin::theta;

use super::exponents::{exponents, Geometry};
use super::scan::ScanGrid;
use super::verdict::{CheckVerdict, Holds, TheoremId};

/// Thresholds in `K` for the benchmark `f(u) = (K + min(1, u^{p-1})) u^p`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BenchmarkThresholds {
    /// Explicit radial solution exists.
    pub k0: f64,
    /// Monotonicity of `s^{-p_S} f` holds for `K > k1`.
    pub k1: f64,
    /// Scalar Pohozaev-sign condition holds for `K > k2`.
    pub k2: f64,
    /// `φ`-ratio condition holds for `K > k3`.
    pub k3: f64,
}

pub fn benchmark_thresholds(n: u32, p: f64) -> Result<BenchmarkThresholds> {
    if n < 3 {
        return Err(Error::Range(format!("n = {n}: need n >= 3")));
    }
    let nf = n as f64;
    let ex = exponents(n, Geometry::Whole);
    if !(p > ex.kappa && p < ex.p_sobolev) {
        return Err(Error::Range(format!("p = {p} outside ({}, {})", ex.kappa, ex.p_sobolev)));
    }
    let a = (nf - 2.0) * p - nf;
    let k0 = a / (2.0 * p);
    let k1 = 2.0 * a / ((nf + 2.0) - (nf - 2.0) * p);
    let k2 = (p + 1.0) / (2.0 * p) * k1;
    let k3 = ((nf - 2.0) * p - 2.0) / (2.0 * (nf - 2.0) * p - nf) * k1;
    Ok(BenchmarkThresholds { k0, k1, k2, k3 })
}

/// `λ₀(ρ) = 2√(1-ρ)/(2-ρ)`.
pub fn lambda0(rho: f64) -> f64 {
    2.0 * (1.0 - rho).sqrt() / (2.0 - rho)
}

/// Parameter window for the log-modified gradient family.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Cor0Params {
    pub a0: f64,
    /// `θ(K)` (1 when `K = 1`).
    pub theta_k: f64,
    pub p_sobolev: f64,
    pub p_star_star: f64,
    /// `(ρ, λ₀(ρ))` on 21 equally spaced `ρ ∈ [0, 1]`.
    pub curve: Vec<(f64, f64)>,
}

pub fn cor0_params(p0: f64, k: f64, sigma: i8, n: u32, geometry: Geometry) -> Result<Cor0Params> {
    if n < 3 {
        return Err(Error::Range(format!("n = {n}: need n >= 3")));
    }
    let ex = exponents(n, geometry);
    if !(p0 > 1.0 && p0 < ex.p_star_star) {
        return Err(Error::Range(format!("p0 = {p0} outside (1, {})", ex.p_star_star)));
    }
    if !(k >= 1.0) {
        return Err(Error::Domain(format!("K = {k} < 1")));
    }
    if sigma != 1 && sigma != -1 {
        return Err(Error::Domain(format!("sigma = {sigma} not in {{-1, 1}}")));
    }
    let theta_k = theta(k)?;
    let a0 = if k == 1.0 {
        if sigma == -1 {
            (ex.p_sobolev - p0) / 2.0
        } else {
            (ex.p_star_star - p0) / 2.0
        }
    } else {
        (ex.p_star_star - p0) / 2.0 * theta_k
    };
    let curve = (0..=20).map(|i| i as f64 / 20.0).map(|r| (r, lambda0(r))).collect();
    Ok(Cor0Params { a0, theta_k, p_sobolev: ex.p_sobolev, p_star_star: ex.p_star_star, curve })
}

/// Parameter conditions `σa > 0`, `|a| < a₀`, `0 < λ < λ₀(|a|/a₀)`.
pub fn check_cor23(
    p0: f64,
    k: f64,
    sigma: i8,
    a: f64,
    lambda: f64,
    n: u32,
    geometry: Geometry,
) -> Result<CheckVerdict> {
    let c = cor0_params(p0, k, sigma, n, geometry)?;
    let tol = ScanGrid::default().tol;
    let mut v = CheckVerdict::new(TheoremId::Cor23, ScanGrid::default().meta());
    v.set("a0", c.a0);
    v.set("theta_K", c.theta_k);
    let sa = sigma as f64 * a;
    v.push("sigma a > 0", Holds::strict(sa, tol), sa, "sign of the log exponent");
    let am = c.a0 - a.abs();
    v.push("|a| < a0", Holds::strict(am, tol), am, format!("a0 = {}", c.a0));
    let rho = (a.abs() / c.a0).min(1.0);
    let l0 = lambda0(rho);
    v.set("rho", rho);
    v.set("lambda0", l0);
    let lm = lambda.min(l0 - lambda);
    v.push("0 < lambda < lambda0", Holds::strict(lm, tol), lm, format!("lambda0 = {l0}"));
    v.margin = sa.min(am).min(lm);
    Ok(v)
}

/// Parameter conditions for the two-potential gradient family `F = G + H`.
pub fn check_cor22(
    alpha: f64,
    beta: f64,
    lambda: f64,
    mu: f64,
    b: f64,
    n: u32,
    geometry: Geometry,
) -> Result<CheckVerdict> {
    if n < 3 {
        return Err(Error::Range(format!("n = {n}: need n >= 3")));
    }
    let ex = exponents(n, geometry);
    let tol = ScanGrid::default().tol;
    let mut v = CheckVerdict::new(TheoremId::Cor22, ScanGrid::default().meta());
    let conds = [
        ("1 < alpha", alpha - 1.0, true),
        ("alpha < beta", beta - alpha, true),
        ("beta <= p_S", ex.p_sobolev - beta, false),
        ("alpha < p**", ex.p_star_star - alpha, true),
        ("lambda > -1", lambda + 1.0, true),
        ("mu >= -1", mu + 1.0, false),
        ("b >= 0", b, false),
    ];
    let mut margin = f64::INFINITY;
    for (name, m, strict) in conds {
        let h = if strict { Holds::strict(m, tol) } else { Holds::non_strict(m, tol) };
        v.push(name, h, m, "");
        margin = margin.min(m);
    }
    v.margin = margin;
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn benchmark_values() {
        let t = benchmark_thresholds(4, 2.5).unwrap();
        for (x, y) in [(t.k0, 0.2), (t.k1, 2.0), (t.k2, 1.4), (t.k3, 1.0)] {
            assert!((x - y).abs() < 1e-12);
        }
        assert!(benchmark_thresholds(4, 3.0).is_err());
    }

    #[test]
    fn cor0_examples() {
        let c = cor0_params(2.0, 1.0, -1, 3, Geometry::Whole).unwrap();
        assert_eq!(c.a0, 1.5);
        assert_eq!(lambda0(0.0), 1.0);
        assert!((lambda0(0.5) - 2f64.sqrt() / 1.5).abs() < 1e-15);
        let v = check_cor23(2.0, 1.0, -1, -0.5, 0.5, 3, Geometry::Whole).unwrap();
        assert_eq!(v.holds, Holds::Yes);
    }
}
