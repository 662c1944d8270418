//! Integral-estimate conditions with free parameters `(q, k, m₁, m₂, γ₁, γ₂)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::nonlin::{End, ScalarNonlin};
use crate::numeric::{grid, roots};

use super::scan::{primitive_ratio_sup, ScanGrid};
use super::verdict::{CheckVerdict, Holds, TheoremId};

/// Free parameters of the general check.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GsParams {
    pub q: f64,
    pub k: f64,
    pub m: [f64; 2],
    pub gamma: [f64; 2],
}

/// `(α, β, γ)` as functions of `(n, q, k)`.
pub fn gs_coefficients(n: u32, q: f64, k: f64) -> (f64, f64, f64) {
    let nf = n as f64;
    let alpha = -(nf - 1.0) / nf * k * k + (q - 1.0) * k - q * (q - 1.0) / 2.0;
    let beta = (nf + 2.0) / nf * k - 1.5 * q;
    let gamma = -(nf - 1.0) / nf;
    (alpha, beta, gamma)
}

/// Open window for `m_i`: `(2/3, 2n/(3n-4))`.
pub fn m_window(n: u32) -> (f64, f64) {
    let nf = n as f64;
    (2.0 / 3.0, 2.0 * nf / (3.0 * nf - 4.0))
}

/// Open window for `γ_i`: `(1, n/(n-4)₊)`, infinite above for `n <= 4`.
pub fn gamma_window(n: u32) -> (f64, f64) {
    let nf = n as f64;
    (1.0, if n <= 4 { f64::INFINITY } else { nf / (nf - 4.0) })
}

const TIE: f64 = 1e-12;

/// Power and log exponents of a ratio `s^e |ln s|^lp` at one end.
#[derive(Debug, Clone, Copy)]
struct Growth {
    e: f64,
    lp: f64,
}

impl Growth {
    /// Boundedness at `end` and a signed margin on the power exponent.
    fn bounded(self, end: End) -> (Holds, f64) {
        let margin = match end {
            End::Zero => self.e,
            End::Infinity => -self.e,
        };
        let h = if margin > TIE {
            Holds::Yes
        } else if margin < -TIE {
            Holds::No
        } else if self.lp <= 0.0 {
            Holds::Yes
        } else {
            Holds::No
        };
        (h, margin)
    }
}

/// Ends of `f`, the effective `f-Lip` exponent and the ends of `F_q`.
struct Ends {
    f0: (f64, f64),
    finf: (f64, f64),
    p_lip: f64,
    big0: (f64, f64),
    big_inf: (f64, f64),
}

fn ends(f: &ScalarNonlin, q: f64) -> Result<Ends> {
    let f0 = f.index(End::Zero)?;
    let finf = f.index(End::Infinity)?;
    let p_lip = if f0.1 <= 0.0 { f0.0 } else { f0.0 - 1e-3 };
    let big0 = (f0.0 + q, f0.1);
    let s = finf.0 + q;
    let big_inf = if s > TIE {
        (s, finf.1)
    } else if s < -TIE || finf.1 < -1.0 {
        (0.0, 0.0)
    } else {
        (0.0, finf.1 + 1.0)
    };
    Ok(Ends { f0, finf, p_lip, big0, big_inf })
}

/// `s^{(1-q/2)m} F_q^{2m-1} / f` at an end.
fn gs4_growth(e: &Ends, q: f64, m: f64, end: End) -> Growth {
    let (fp, fl, bp, bl) = match end {
        End::Zero => (e.f0.0, e.f0.1, e.big0.0, e.big0.1),
        End::Infinity => (e.finf.0, e.finf.1, e.big_inf.0, e.big_inf.1),
    };
    Growth { e: (1.0 - q / 2.0) * m + (2.0 * m - 1.0) * bp - fp, lp: (2.0 * m - 1.0) * bl - fl }
}

/// `s^{(2+q)γ} / (f F_q)` at an end.
fn gs3_growth(e: &Ends, q: f64, g: f64, end: End) -> Growth {
    let (fp, fl, bp, bl) = match end {
        End::Zero => (e.f0.0, e.f0.1, e.big0.0, e.big0.1),
        End::Infinity => (e.finf.0, e.finf.1, e.big_inf.0, e.big_inf.1),
    };
    Growth { e: (2.0 + q) * g - fp - bp, lp: -(fl + bl) }
}

fn in_open(x: f64, (lo, hi): (f64, f64)) -> bool {
    x > lo && x < hi
}

fn validate(n: u32, prm: &GsParams) -> Result<()> {
    if n < 3 {
        return Err(Error::Range(format!("n = {n}: need n >= 3")));
    }
    if (prm.k + 1.0).abs() < 1e-14 {
        return Err(Error::Range("k must differ from -1".into()));
    }
    if prm.q < -2.0 || (prm.q == -2.0 && n != 3) {
        return Err(Error::Range(format!("q = {} needs q >= -2, and q = -2 only for n = 3", prm.q)));
    }
    let mw = m_window(n);
    if !prm.m.iter().all(|&m| in_open(m, mw)) {
        return Err(Error::Range(format!("m_i must lie in ({}, {}), got {:?}", mw.0, mw.1, prm.m)));
    }
    let gw = gamma_window(n);
    if prm.q > -2.0 && !prm.gamma.iter().all(|&g| in_open(g, gw)) {
        return Err(Error::Range(format!("gamma_i must lie in ({}, {}), got {:?}", gw.0, gw.1, prm.gamma)));
    }
    Ok(())
}

/// Evaluate all conditions at fixed parameters.
pub fn check_gs_general(f: &ScalarNonlin, n: u32, prm: &GsParams) -> Result<CheckVerdict> {
    validate(n, prm)?;
    let sg = ScanGrid::default();
    let (q, k) = (prm.q, prm.k);
    let mut v = CheckVerdict::new(TheoremId::GsGeneral, sg.meta());
    let (alpha, beta, gamma) = gs_coefficients(n, q, k);
    for (name, x) in
        [("q", q), ("k", k), ("m1", prm.m[0]), ("m2", prm.m[1]), ("gamma1", prm.gamma[0]), ("gamma2", prm.gamma[1])]
    {
        v.set(name, x);
    }
    v.set("alpha", alpha);
    v.set("beta", beta);
    v.set("gamma", gamma);

    let e = ends(f, q)?;
    v.set("p_lip", e.p_lip);
    v.push("f-Lip", Holds::non_strict(e.p_lip, sg.tol), e.p_lip, format!("f <= C s^{} on (0, 1]", e.p_lip));
    let qm = q + e.p_lip;
    v.push("q > -p", Holds::strict(qm, sg.tol), qm, "F_q finite at 0");
    if qm <= sg.tol {
        v.margin = qm;
        return Ok(v);
    }

    let cq = primitive_ratio_sup(f, q - 1.0, &sg)?;
    if cq.on_boundary {
        v.warnings.push(format!("c_q attained at the end of the scan range (s = {:e})", cq.at));
    }
    v.set("c_q", cq.value);
    let lin = -beta + cq.value * gamma;
    v.push("alpha > 0", Holds::strict(alpha, sg.tol), alpha, "alpha from (n, q, k)");
    v.push("-beta + c_q gamma > 0", Holds::strict(lin, sg.tol), lin, format!("c_q = {}", cq.value));
    v.margin = alpha.min(lin);
    if alpha < -sg.tol {
        v.witness("alpha > 0", vec![q, k], alpha, 0.0);
    }
    if lin < -sg.tol {
        v.witness("-beta + c_q gamma > 0", vec![cq.at], lin, 0.0);
    }

    let labels = ["omega1", "omega2"];
    let ends_of = [End::Zero, End::Infinity];
    for i in 0..2 {
        let g = gs4_growth(&e, q, prm.m[i], ends_of[i]);
        let (h, m) = g.bounded(ends_of[i]);
        v.push(&format!("hypGS4 on {}", labels[i]), h, m, format!("ratio ~ s^{} |log s|^{}", g.e, g.lp));
    }
    if q > -2.0 {
        for i in 0..2 {
            let g = gs3_growth(&e, q, prm.gamma[i], ends_of[i]);
            let (h, m) = g.bounded(ends_of[i]);
            v.push(&format!("hypGS3 on {}", labels[i]), h, m, format!("ratio ~ s^{} |log s|^{}", g.e, g.lp));
        }
    }
    Ok(v)
}

/// Interior sample of an open window used for `m_i` and `γ_i`.
fn window_samples((lo, hi): (f64, f64)) -> Vec<f64> {
    let hi = if hi.is_finite() { hi } else { lo + 100.0 };
    (0..64).map(|j| lo + (hi - lo) * (j as f64 + 0.5) / 64.0).collect()
}

fn best_by<F: Fn(f64) -> f64>(xs: &[f64], score: F) -> f64 {
    xs.iter()
        .copied()
        .fold((f64::NAN, f64::NEG_INFINITY), |acc, x| {
            let s = score(x);
            if s > acc.1 {
                (x, s)
            } else {
                acc
            }
        })
        .0
}

/// Parameters for one `q`: `k` maximises `min(α, -β + c_q γ)` (a concave
/// function of `k`), `m_i` and `γ_i` maximise the exponent margins.
fn params_for_q(f: &ScalarNonlin, n: u32, q: f64, cq: f64) -> Result<GsParams> {
    let (_, _, gamma) = gs_coefficients(n, q, 0.0);
    let obj = |k: f64| {
        let (a, b, _) = gs_coefficients(n, q, k);
        a.min(-b + cq * gamma)
    };
    let (mut k, _) = roots::golden_max(obj, -50.0, 50.0, 1e-12, 300);
    if (k + 1.0).abs() < 1e-9 {
        k = -1.0 + 1e-6;
    }
    let e = ends(f, q)?;
    let ms = window_samples(m_window(n));
    let gs = window_samples(gamma_window(n));
    let m1 = best_by(&ms, |m| gs4_growth(&e, q, m, End::Zero).e);
    let m2 = best_by(&ms, |m| -gs4_growth(&e, q, m, End::Infinity).e);
    let g1 = best_by(&gs, |g| gs3_growth(&e, q, g, End::Zero).e);
    let g2 = best_by(&gs, |g| -gs3_growth(&e, q, g, End::Infinity).e);
    Ok(GsParams { q, k, m: [m1, m2], gamma: [g1, g2] })
}

/// Grid over `q` (including `1 - κ`) with per-`q` optimisation of the other
/// parameters. Returns the verdict with the largest minimum margin among
/// parameter points whose structural conditions hold, or the best overall
/// margin when none do.
pub fn search_gs_params(f: &ScalarNonlin, n: u32) -> Result<(GsParams, CheckVerdict)> {
    if n < 3 {
        return Err(Error::Range(format!("n = {n}: need n >= 3")));
    }
    let nf = n as f64;
    let kappa = nf / (nf - 2.0);
    let (p0, _) = f.index(End::Zero)?;
    let qmin: f64 = if n == 3 { -2.0 } else { -2.0 + 1e-6 };
    let qmin = qmin.max(-p0 + 1e-3);
    let mut qs = grid::linear(qmin, 1.0 - 1e-3, 48);
    if 1.0 - kappa >= qmin {
        qs.push(1.0 - kappa);
    }
    let sg = ScanGrid::default();
    let mut best: Option<(bool, f64, GsParams, CheckVerdict)> = None;
    for q in qs {
        let cq = match primitive_ratio_sup(f, q - 1.0, &sg) {
            Ok(e) => e.value,
            Err(Error::Divergent(_)) => continue,
            Err(e) => return Err(e),
        };
        let prm = params_for_q(f, n, q, cq)?;
        let v = match check_gs_general(f, n, &prm) {
            Ok(v) => v,
            Err(Error::Range(_)) => continue,
            Err(e) => return Err(e),
        };
        let structural = v
            .conditions
            .iter()
            .filter(|c| !c.name.starts_with("alpha") && !c.name.starts_with("-beta"))
            .all(|c| c.holds == Holds::Yes);
        let better = match &best {
            None => true,
            Some((s, m, _, _)) => (structural && !*s) || (structural == *s && v.margin > *m),
        };
        if better {
            best = Some((structural, v.margin, prm, v));
        }
    }
    let (_, _, prm, mut v) = best.ok_or_else(|| Error::Range("no admissible q in [-2, 1)".into()))?;
    v.set("searched_q_points", 49.0);
    Ok((prm, v))
}
