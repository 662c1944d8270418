use std::collections::BTreeMap;

use serde::Serialize;

use super::profile::{Provenance, RadialProfile};
use crate::error::{Error, Result};
use crate::nonlin::ScalarNonlin;
use crate::numeric::grid;

/// Radial profile known in closed form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ClosedForm {
    Zero,
    /// `amp · (1 + rate r²)^(-power)`.
    Bump {
        amp: f64,
        rate: f64,
        power: f64,
    },
}

impl ClosedForm {
    /// `(1 + r²/(n(n-2)))^{-(n-2)/2}`, the entire solution of `-Δu = u^{p_S}` with `u(0) = 1`.
    pub fn critical_bubble(n: u32) -> ClosedForm {
        let nf = n as f64;
        ClosedForm::Bump { amp: 1.0, rate: 1.0 / (nf * (nf - 2.0)), power: (nf - 2.0) / 2.0 }
    }

    /// `(1 + λr²)^{-1/(p-1)}`, `λ = (p-1)²/(4p)`, for the benchmark at its lowest threshold.
    pub fn benchmark(p: f64) -> ClosedForm {
        ClosedForm::Bump { amp: 1.0, rate: (p - 1.0) * (p - 1.0) / (4.0 * p), power: 1.0 / (p - 1.0) }
    }

    /// `(u, u', u'')` at `r`.
    pub fn eval(&self, r: f64) -> (f64, f64, f64) {
        match *self {
            ClosedForm::Zero => (0.0, 0.0, 0.0),
            ClosedForm::Bump { amp, rate, power } => {
                let w = 1.0 + rate * r * r;
                let u = amp * w.powf(-power);
                let du = -2.0 * amp * rate * power * r * w.powf(-power - 1.0);
                let d2u = -2.0 * amp * rate * power * w.powf(-power - 2.0) * (w - 2.0 * rate * (power + 1.0) * r * r);
                (u, du, d2u)
            }
        }
    }

    /// `-Δu` in dimension `n`, analytic at the origin.
    pub fn neg_laplacian(&self, n: u32, r: f64) -> f64 {
        match *self {
            ClosedForm::Zero => 0.0,
            ClosedForm::Bump { amp, rate, power } => {
                let w = 1.0 + rate * r * r;
                let nf = n as f64;
                2.0 * amp * rate * power * w.powf(-power - 2.0) * (nf * w - 2.0 * rate * (power + 1.0) * r * r)
            }
        }
    }

    /// Sample on `points` equally spaced radii of `[0, r_max]`.
    pub fn profile(&self, n: u32, r_max: f64, points: usize) -> RadialProfile {
        let r = grid::linear(0.0, r_max, points.max(2));
        let (u, du): (Vec<f64>, Vec<f64>) = r.iter().map(|&x| self.eval(x)).map(|(a, b, _)| (a, b)).unzip();
        RadialProfile { n, r, u: vec![u], du: vec![du], provenance: Provenance::ClosedForm }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ResidualReport {
    pub max: f64,
    pub at: f64,
    pub points: usize,
}

/// `max |-u'' - (n-1)u'/r - f(u)|` over `points` equally spaced radii of `[r_lo, r_hi]`.
pub fn verify_closed_form(
    cand: &ClosedForm,
    f: &ScalarNonlin,
    n: u32,
    r_lo: f64,
    r_hi: f64,
    points: usize,
) -> ResidualReport {
    let mut rep = ResidualReport { max: 0.0, at: r_lo, points };
    for r in grid::linear(r_lo, r_hi, points.max(2)) {
        let (u, _, _) = cand.eval(r);
        let fu = if u > 0.0 { f.value(u) } else { f.zero_value() };
        let res = (cand.neg_laplacian(n, r) - fu).abs();
        if !(res <= rep.max) {
            rep.max = res;
            rep.at = r;
        }
    }
    rep
}

/// Explicit bounded solutions of `-Δu = u^{p_k} + u^{q_k}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UkFamily {
    pub n: u32,
    pub k: u32,
    pub p: f64,
    pub q: f64,
    pub xi: f64,
    /// `u_k(0)`.
    pub max: f64,
    /// `u_k(0)^{p-1}`.
    pub max_pow: f64,
    pub profile: ClosedForm,
}

impl UkFamily {
    pub fn nonlinearity(&self) -> Result<ScalarNonlin> {
        let mut prm = BTreeMap::new();
        prm.insert("p".to_string(), self.p);
        prm.insert("q".to_string(), self.q);
        ScalarNonlin::parse("u^p + u^q", &prm)
    }

    /// `v(y) = M⁻¹ u_k(M^{(1-q)/2} y)`, normalized to `v(0) = 1`.
    pub fn rescaled(&self) -> ClosedForm {
        match self.profile {
            ClosedForm::Bump { rate, power, .. } => {
                ClosedForm::Bump { amp: 1.0, rate: rate * self.max.powf(1.0 - self.q), power }
            }
            ClosedForm::Zero => ClosedForm::Zero,
        }
    }
}

pub fn uk_family(n: u32, k: u32) -> Result<UkFamily> {
    if n < 3 || k < 1 {
        return Err(Error::Range(format!("need n >= 3 and k >= 1, got n = {n}, k = {k}")));
    }
    let (nf, kf) = (n as f64, k as f64);
    let p = nf / (nf - 2.0) + 1.0 / kf;
    let q = 2.0 * p - 1.0;
    let xi = (nf - 2.0) / (kf * p.sqrt() * (p - 1.0));
    let max_pow = 2.0 * kf * p / (nf - 2.0);
    let max = max_pow.powf(1.0 / (p - 1.0));
    let profile = ClosedForm::Bump { amp: max, rate: 1.0 / (xi * xi), power: 1.0 / (p - 1.0) };
    Ok(UkFamily { n, k, p, q, xi, max, max_pow, profile })
}
