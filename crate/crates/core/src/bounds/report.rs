use serde::Serialize;

use super::ball::BvpSolution;
use super::hcalc::HCalculus;
use crate::error::{Error, Result};
use crate::radial::Source;

/// Which universal-bound quantity to measure.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "mode", rename_all = "kebab-case")]
pub enum BoundMode {
    /// `f(u) d² / u` on `{u > 0}`.
    Scalar,
    /// `|f(U)| d² / |U|` on `{|U| ≥ Λ}` (Euclidean norms).
    System { threshold: f64 },
    /// `f₂(u) d² / (h₁⁻¹∘h₂)(u)` on `{u ≥ s₀}` and `f₁(v) d² / (h₂⁻¹∘h₁)(v)` on `{v ≥ s₀}`.
    LaneEmden,
}

impl BoundMode {
    pub fn name(&self) -> &'static str {
        match self {
            BoundMode::Scalar => "scalar",
            BoundMode::System { .. } => "system",
            BoundMode::LaneEmden => "lane-emden",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DomainSup {
    pub radius: f64,
    /// Sup over interior nodes of the region (0 when the region is empty).
    pub sup: f64,
    pub at: f64,
    /// Second quantity (lane-emden mode only).
    pub sup2: Option<f64>,
    pub at2: Option<f64>,
    pub nodes: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub mode: BoundMode,
    pub domains: Vec<DomainSup>,
    /// `max / min` of the per-domain sups (1 when all vanish).
    pub ratio: f64,
    pub warnings: Vec<String>,
}

fn ratio(v: impl Iterator<Item = f64> + Clone) -> f64 {
    let max = v.clone().fold(f64::NEG_INFINITY, f64::max);
    let min = v.fold(f64::INFINITY, f64::min);
    if max == 0.0 {
        1.0
    } else {
        max / min
    }
}

/// Per-domain sup of the tested quantity over interior nodes.
pub fn domain_sup(sol: &BvpSolution, mode: BoundMode, src: Source<'_>, hcal: Option<&HCalculus>) -> Result<DomainSup> {
    let m = sol.u.len();
    let last = sol.r.len() - 1;
    let mut out = DomainSup { radius: sol.radius, sup: 0.0, at: f64::NAN, sup2: None, at2: None, nodes: 0 };
    let mut best2 = (0.0, f64::NAN);
    for j in 0..last {
        let d2 = sol.distance(j).powi(2);
        let uj: Vec<f64> = (0..m).map(|i| sol.u[i][j]).collect();
        let (q1, q2) = match mode {
            BoundMode::Scalar => {
                if uj[0] <= 0.0 {
                    continue;
                }
                (Some(src.eval(&uj)[0] * d2 / uj[0]), None)
            }
            BoundMode::System { threshold } => {
                let nu = uj.iter().map(|x| x * x).sum::<f64>().sqrt();
                if nu < threshold || nu == 0.0 {
                    continue;
                }
                let f = src.eval(&uj);
                let nf = f[..m].iter().map(|x| x * x).sum::<f64>().sqrt();
                (Some(nf * d2 / nu), None)
            }
            BoundMode::LaneEmden => {
                let hc = hcal.ok_or_else(|| Error::Invalid("lane-emden mode needs the h-calculus".into()))?;
                if m != 2 {
                    return Err(Error::Invalid("lane-emden mode needs two components".into()));
                }
                let q = |w: usize, s: f64| {
                    if s >= hc.s0 && s > 0.0 {
                        Some(hc.ln_bound_quantity(w, s.ln()).exp() * d2)
                    } else {
                        None
                    }
                };
                (q(0, uj[0]), q(1, uj[1]))
            }
        };
        if q1.is_some() || q2.is_some() {
            out.nodes += 1;
        }
        if let Some(x) = q1.filter(|x| x.is_finite()) {
            if x > out.sup || out.at.is_nan() {
                out.sup = x;
                out.at = sol.r[j];
            }
        }
        if let Some(x) = q2.filter(|x| x.is_finite()) {
            if x > best2.0 || best2.1.is_nan() {
                best2 = (x, sol.r[j]);
            }
        }
    }
    if mode == BoundMode::LaneEmden {
        out.sup2 = Some(best2.0);
        out.at2 = Some(best2.1);
    }
    Ok(out)
}

/// Measure the bound quantity on a family of solutions of the same problem on
/// different domains.
pub fn bound_report(
    sols: &[BvpSolution],
    mode: BoundMode,
    src: Source<'_>,
    hcal: Option<&HCalculus>,
) -> Result<BoundReport> {
    let mut warnings = Vec::new();
    let mut domains = Vec::with_capacity(sols.len());
    for s in sols {
        if !s.converged {
            warnings.push(format!("solution on R = {} did not converge: {}", s.radius, s.status));
        }
        let d = domain_sup(s, mode, src, hcal)?;
        if d.nodes == 0 && s.max_abs() > 0.0 {
            warnings.push(format!("R = {}: region restriction excludes every node", s.radius));
        }
        domains.push(d);
    }
    let ratio = ratio(domains.iter().map(|d| d.sup));
    Ok(BoundReport { mode, domains, ratio, warnings })
}
