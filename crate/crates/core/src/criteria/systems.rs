//! Checkers for two-component systems.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::nonlin::{Expr, SystemKind, SystemNonlin, Var};
use crate::numeric::grid;

use super::exponents::{exponents, Geometry};
use super::scan::{sup_scan, ScanGrid};
use super::verdict::{CheckVerdict, Holds, TheoremId};

/// Points `r·d` with `d` on the unit max-norm sphere of the quadrant.
struct BoxGrid {
    radii: Vec<f64>,
    dirs: Vec<(f64, f64)>,
}

impl BoxGrid {
    fn new(m: f64) -> Self {
        let radii = grid::geometric(m * 1e-6, m, 121);
        let dirs =
            grid::linear(0.0, 2.0, 129).into_iter().map(|t| if t <= 1.0 { (1.0, t) } else { (2.0 - t, 1.0) }).collect();
        BoxGrid { radii, dirs }
    }

    /// Extremum of `g(u, v, r)` (`r = |U|`): returns value, point and
    /// whether it sits on the innermost radius while strictly beating every
    /// other radius.
    fn extremum<G: Fn(f64, f64, f64) -> f64>(&self, g: G, want_max: bool) -> (f64, (f64, f64), bool) {
        let better = |a: f64, b: f64| if want_max { a > b } else { a < b };
        let init = if want_max { f64::NEG_INFINITY } else { f64::INFINITY };
        let mut best = (init, (0.0, 0.0));
        let mut best_rest = init;
        for (i, &r) in self.radii.iter().enumerate() {
            for &(du, dv) in &self.dirs {
                let (u, v) = (r * du, r * dv);
                let val = g(u, v, r);
                if better(val, best.0) {
                    best = (val, (u, v));
                }
                if i > 0 && better(val, best_rest) {
                    best_rest = val;
                }
            }
        }
        let scale = best.0.abs().max(best_rest.abs());
        let inner = better(best.0, best_rest) && (best.0 - best_rest).abs() > 1e-9 * scale;
        (best.0, best.1, inner)
    }
}

/// Growth bound (B), Pohozaev-sign bound (C) and positive combination (D)
/// on `[0, M]²`, with `|U|` the max norm.
pub fn check_thm1_conditions(
    sys: &SystemNonlin,
    n: u32,
    geometry: Geometry,
    m_box: f64,
    p: f64,
    q: f64,
) -> Result<CheckVerdict> {
    let pot = sys.potential().ok_or_else(|| Error::MissingPotential("gradient kind required".into()))?;
    if n < 3 {
        return Err(Error::Range(format!("n = {n}: need n >= 3")));
    }
    if !(1.0 < q && q <= p) {
        return Err(Error::Range(format!("need 1 < q <= p, got p = {p}, q = {q}")));
    }
    if !(m_box > 0.0) {
        return Err(Error::Range(format!("M = {m_box} must be positive")));
    }
    let nf = n as f64;
    let ex = exponents(n, geometry);
    let tol = ScanGrid::default().tol;
    let bg = BoxGrid::new(m_box);
    let mut v = CheckVerdict::new(
        TheoremId::Thm1,
        super::verdict::ScanMeta { lo: bg.radii[0], hi: m_box, points: bg.radii.len() * bg.dirs.len(), tol },
    );
    v.set("M", m_box);
    let f0 = pot.eval(0.0, 0.0);

    let (cm, at, inner) = bg.extremum(|u, v, r| sys.norm_at(u, v) / r.powf(q), true);
    v.set("C_M", cm);
    let hb = if !cm.is_finite() {
        Holds::No
    } else if inner {
        v.warnings.push("(B): sup attained at the innermost radius; growth near 0 may exceed |U|^q".into());
        Holds::Indeterminate
    } else {
        Holds::Yes
    };
    v.push("(B) |f(U)| <= C_M |U|^q", hb, cm, format!("sup at ({}, {})", at.0, at.1));

    let poh = |u: f64, w: f64| {
        let f = sys.eval(u, w);
        2.0 * nf * (pot.eval(u, w) - f0) - (nf - 2.0) * (u * f[0] + w * f[1])
    };
    let (cmin, at, inner) = bg.extremum(|u, w, r| poh(u, w) / r.powf(p + 1.0), false);
    v.set("c_M", cmin);
    if inner {
        v.warnings.push("(C): inf attained at the innermost radius".into());
    }
    let hc = Holds::strict(cmin, tol);
    v.push("(C) 2nF - (n-2) U.f >= c_M |U|^(p+1)", hc, cmin, format!("inf at ({}, {})", at.0, at.1));
    if hc == Holds::No {
        v.witness("(C) 2nF - (n-2) U.f >= c_M |U|^(p+1)", vec![at.0, at.1], poh(at.0, at.1), 0.0);
    }

    let mut best = (f64::NEG_INFINITY, 0.5, (0.0, 0.0), false);
    for i in 0..64 {
        let x1 = (i as f64 + 0.5) / 64.0;
        let (c, at, inner) = bg.extremum(
            |u, w, r| {
                let f = sys.eval(u, w);
                (x1 * f[0] + (1.0 - x1) * f[1]) / r.powf(p)
            },
            false,
        );
        if c > best.0 {
            best = (c, x1, at, inner);
        }
    }
    v.set("xi1", best.1);
    v.set("c_D", best.0);
    if best.3 {
        v.warnings.push("(D): inf attained at the innermost radius".into());
    }
    let hd = Holds::strict(best.0, tol);
    v.push("(D) xi.f(U) >= c |U|^p", hd, best.0, format!("xi = ({}, {})", best.1, 1.0 - best.1));
    if hd == Holds::No {
        v.witness("(D) xi.f(U) >= c |U|^p", vec![best.2 .0, best.2 .1, best.1], best.0, 0.0);
    }

    let mid = (p + q) / 2.0;
    v.set("p0_mid", mid);
    v.set("half_gap", (p - q) / 2.0);
    v.set("p_star_star", ex.p_star_star);
    let wm = (mid - 1.0).min(ex.p_star_star - mid);
    v.push("1 < p0 < p**", Holds::strict(wm, tol), wm, format!("p0 = (p+q)/2 = {mid}, gap {}", (p - q) / 2.0));
    v.margin = cmin.min(best.0);
    Ok(v)
}

fn scan_points() -> Vec<f64> {
    let sg = ScanGrid::default();
    grid::geometric(sg.lo, sg.hi, sg.points)
}

/// Structural assumptions of the proportional-components template and,
/// for `λ ∈ [0, 1)`, the extra monotonicity/convexity of
/// `h(s) = φ(s, s) k(s) g(s)`.
pub fn check_proportional(
    sys: &SystemNonlin,
    eps: f64,
    geometry: Geometry,
    n: u32,
    m_box: f64,
) -> Result<CheckVerdict> {
    let SystemKind::Proportional { phi, k, g, lambda } = sys.kind() else {
        return Err(Error::Invalid("proportional kind required".into()));
    };
    let lambda = *lambda;
    if !(eps >= 0.0) || ((eps == 0.0) != (lambda > 0.0)) {
        return Err(Error::Range(format!("need eps = 0 exactly when lambda > 0 (lambda = {lambda}, eps = {eps})")));
    }
    let sg = ScanGrid::default();
    let tol = sg.tol;
    let mut v = CheckVerdict::new(TheoremId::Proportional, sg.meta());
    v.set("lambda", lambda);
    v.set("eps", eps);
    let pts = scan_points();
    let at = |e: &Expr, s: f64| e.eval(s, 0.0);

    let lin = grid::linear(0.0, m_box, 65);
    let mut phi_min = (f64::INFINITY, (0.0, 0.0));
    for &a in &lin {
        for &b in &lin {
            let y = phi.eval(a, b);
            if y < phi_min.0 {
                phi_min = (y, (a, b));
            }
        }
    }
    v.set("c_M", phi_min.0);
    v.push("phi >= c_M > 0", Holds::strict(phi_min.0, tol), phi_min.0, format!("inf over [0, {m_box}]^2"));
    if phi_min.0 <= tol {
        v.witness("phi >= c_M > 0", vec![phi_min.1 .0, phi_min.1 .1], phi_min.0, 0.0);
    }

    let g0 = at(g, 0.0);
    v.push("g(0) = 0", Holds::from_bool(g0 == 0.0), -g0.abs(), format!("g(0) = {g0}"));
    let gmin = pts.iter().map(|&s| at(g, s)).fold(f64::INFINITY, f64::min);
    v.push("g > 0", Holds::from_bool(gmin > 0.0), gmin, "on the scan grid");

    let tilde = if lambda > 0.0 { Expr::product(vec![k.clone(), g.clone()]) } else { g.clone() };
    let dtilde = tilde.deriv(Var::U);
    let mut worst = (f64::INFINITY, 0.0);
    for &s in &pts {
        let el = s * at(&dtilde, s) / at(&tilde, s).abs();
        if el < worst.0 {
            worst = (el, s);
        }
    }
    v.push("phi_tilde' > 0", Holds::from_bool(worst.0 > 0.0), worst.0, "min of s phi_tilde'/|phi_tilde| on the grid");
    if worst.0 <= 0.0 {
        v.witness("phi_tilde' > 0", vec![worst.1], worst.0, 0.0);
    }

    let k0 = at(k, 0.0) - eps;
    v.push("k_tilde(0) >= 0", Holds::non_strict(k0, tol), k0, format!("k(0) - eps = {k0}"));
    if k0 < -tol {
        v.witness("k_tilde(0) >= 0", vec![0.0], k0, 0.0);
    }
    let ratio: Vec<f64> = pts.iter().map(|&s| (at(k, s) - eps) / at(g, s)).collect();
    let mut rise = (f64::NEG_INFINITY, 0.0);
    for (i, w) in ratio.windows(2).enumerate() {
        let r = (w[1] - w[0]) / w[0].abs().max(w[1].abs()).max(1e-300);
        if r > rise.0 {
            rise = (r, pts[i + 1]);
        }
    }
    v.push("k_tilde/g nonincreasing", Holds::non_strict(-rise.0, tol), -rise.0, "largest relative rise on the grid");
    if rise.0 > tol {
        v.witness("k_tilde/g nonincreasing", vec![rise.1], rise.0, 0.0);
    }

    if lambda == 1.0 {
        v.push("lambda != 1", Holds::No, 0.0, "no Liouville statement at lambda = 1");
    } else if lambda < 1.0 {
        let h = Expr::product(vec![phi.subst(Var::V, &Expr::u()), k.clone(), g.clone()]);
        match geometry {
            Geometry::Whole => {
                if n < 3 {
                    return Err(Error::Range(format!("whole-space condition needs n >= 3, got {n}")));
                }
                let ps = exponents(n, Geometry::Whole).p_sobolev;
                let e = sup_scan(
                    |s, side| {
                        let (val, d) = h.eval_dual(s, 0.0, Var::U, side);
                        s * d / val
                    },
                    &sg,
                    &[],
                );
                let margin = ps - e.value;
                v.set("sup_h_elasticity", e.value);
                v.push("s^-p_S h nonincreasing", Holds::non_strict(margin, tol), margin, "sup s h'/h <= p_S");
                if margin < -tol {
                    v.witness("s^-p_S h nonincreasing", vec![e.at], e.value, ps);
                }
                let normalized: Vec<f64> = pts.iter().map(|&s| (at(&h, s).ln() - ps * s.ln()).exp()).collect();
                let tv: f64 = normalized.windows(2).map(|w| (w[1] - w[0]).abs()).sum();
                let top = normalized.iter().copied().fold(0.0, f64::max);
                v.push("s^-p_S h nonconstant", Holds::from_bool(tv > 1e-9 * top), tv, "total variation");
                v.margin = margin;
            }
            Geometry::Half => {
                let hv: Vec<f64> = pts.iter().map(|&s| at(&h, s)).collect();
                let mut worst = (f64::INFINITY, 0.0);
                for i in 1..pts.len() - 1 {
                    let sl = (hv[i] - hv[i - 1]) / (pts[i] - pts[i - 1]);
                    let sr = (hv[i + 1] - hv[i]) / (pts[i + 1] - pts[i]);
                    let d = (sr - sl) / sl.abs().max(sr.abs()).max(1e-300);
                    if d < worst.0 {
                        worst = (d, pts[i]);
                    }
                }
                v.push("h convex", Holds::non_strict(worst.0, tol), worst.0, "normalised second differences");
                if worst.0 < -tol {
                    v.witness("h convex", vec![worst.1], worst.0, 0.0);
                }
                v.margin = worst.0;
            }
        }
    }
    if v.margin == f64::INFINITY {
        v.margin = -rise.0;
    }
    Ok(v)
}

/// Position of `(p, q)` relative to the Lane–Emden hyperbola.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LaneEmdenRegion {
    /// `1/(p+1) + 1/(q+1)`.
    pub lhs: f64,
    /// `(n-2)/n`.
    pub rhs: f64,
    pub subcritical: bool,
    pub critical: bool,
    pub alpha: f64,
    pub beta: f64,
    /// `p, q <= p_S` and not both equal to `p_S`.
    pub both_at_most_sobolev: bool,
    /// `max(α, β) >= n - 2`.
    pub scaling_flag: bool,
    /// Either sufficient nonexistence flag.
    pub nonexistence_known: bool,
}

pub fn lane_emden_region(p: f64, q: f64, n: u32) -> Result<LaneEmdenRegion> {
    if !(p > 0.0 && q > 0.0 && p * q > 1.0) {
        return Err(Error::Range(format!("need p, q > 0 and pq > 1, got ({p}, {q})")));
    }
    if n < 3 {
        return Err(Error::Range(format!("n = {n}: need n >= 3")));
    }
    let nf = n as f64;
    let ps = exponents(n, Geometry::Whole).p_sobolev;
    let lhs = 1.0 / (p + 1.0) + 1.0 / (q + 1.0);
    let rhs = (nf - 2.0) / nf;
    let critical = (lhs - rhs).abs() <= 1e-12;
    let alpha = 2.0 * (p + 1.0) / (p * q - 1.0);
    let beta = 2.0 * (q + 1.0) / (p * q - 1.0);
    let at_ps = |x: f64| (x - ps).abs() <= 1e-12 * ps;
    let both = p <= ps * (1.0 + 1e-12) && q <= ps * (1.0 + 1e-12) && !(at_ps(p) && at_ps(q));
    let scaling = alpha.max(beta) >= nf - 2.0;
    Ok(LaneEmdenRegion {
        lhs,
        rhs,
        subcritical: lhs > rhs && !critical,
        critical,
        alpha,
        beta,
        both_at_most_sobolev: both,
        scaling_flag: scaling,
        nonexistence_known: both || scaling,
    })
}

/// Verdict form of [`lane_emden_region`]: holds when a sufficient
/// nonexistence flag is set; margin is the hyperbola gap.
pub fn check_lane_emden_region(p: f64, q: f64, n: u32) -> Result<CheckVerdict> {
    let r = lane_emden_region(p, q, n)?;
    let sg = ScanGrid::default();
    let mut v = CheckVerdict::new(TheoremId::LaneEmdenRegion, sg.meta());
    let gap = r.lhs - r.rhs;
    v.set("lhs", r.lhs);
    v.set("rhs", r.rhs);
    v.set("alpha", r.alpha);
    v.set("beta", r.beta);
    v.push("below hyperbola", Holds::strict(gap, 1e-12), gap, "1/(p+1) + 1/(q+1) > (n-2)/n");
    v.holds = Holds::from_bool(r.nonexistence_known);
    v.conditions.push(super::verdict::Condition {
        name: "sufficient nonexistence flag".into(),
        holds: v.holds,
        margin: gap,
        detail: format!("p, q <= p_S: {}; max(alpha, beta) >= n - 2: {}", r.both_at_most_sobolev, r.scaling_flag),
    });
    v.margin = gap;
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nonlin::parse_expr;
    use std::collections::BTreeMap;

    fn e(t: &str) -> Expr {
        parse_expr(t, &BTreeMap::new()).unwrap()
    }

    #[test]
    fn lane_emden_examples() {
        let r = lane_emden_region(2.0, 3.0, 3).unwrap();
        assert!(r.subcritical);
        assert!((r.alpha - 1.2).abs() < 1e-15 && (r.beta - 1.6).abs() < 1e-15);
        let c = lane_emden_region(5.0, 5.0, 3).unwrap();
        assert!(c.critical && !c.subcritical);
    }

    #[test]
    fn decoupled_powers_d_condition() {
        let s = SystemNonlin::gradient(e("(u^4 + v^4)/4")).unwrap();
        let v = check_thm1_conditions(&s, 3, Geometry::Whole, 1.0, 3.0, 3.0).unwrap();
        assert_eq!(v.condition("(D) xi.f(U) >= c |U|^p").unwrap().holds, Holds::Yes);
    }

    #[test]
    fn proportional_monomials() {
        let s = SystemNonlin::proportional(e("1"), e("u^0.5"), e("u^2"), 0.5).unwrap();
        let v = check_proportional(&s, 0.0, Geometry::Whole, 3, 10.0).unwrap();
        assert_eq!(v.holds, Holds::Yes);
        let s = SystemNonlin::proportional(e("1"), e("u^3"), e("u^2"), 0.5).unwrap();
        let v = check_proportional(&s, 0.0, Geometry::Whole, 3, 10.0).unwrap();
        assert_eq!(v.condition("k_tilde/g nonincreasing").unwrap().holds, Holds::No);
    }
}
