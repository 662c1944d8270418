use std::collections::BTreeMap;

use super::asymptotic::{self, End, Lead, LeadFailure};
use super::expr::{Expr, Side, Var};
use super::parse::parse_expr;
use crate::error::{Error, Result};
use crate::numeric::{grid, quad, roots};

/// Range on which construction-time checks and kink searches are run.
pub const SAMPLE_LO: f64 = 1e-8;
pub const SAMPLE_HI: f64 = 1e8;

/// Scalar nonlinearity `f(u)` with its symbolic derivative and kink set.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarNonlin {
    expr: Expr,
    deriv: Expr,
    kinks: Vec<f64>,
    positive: bool,
    zero_value: f64,
}

impl ScalarNonlin {
    /// Build from an expression in `u`. Fails if the expression mentions `v`
    /// or is not finite on a geometric sample of `[1e-8, 1e8]`.
    pub fn new(expr: Expr) -> Result<Self> {
        if expr.depends_on(Var::V) {
            return Err(Error::Invalid("scalar nonlinearity must not depend on v".into()));
        }
        let samples = grid::geometric(SAMPLE_LO, SAMPLE_HI, 161);
        let mut positive = true;
        for &s in &samples {
            let y = expr.eval(s, 0.0);
            if !y.is_finite() {
                return Err(Error::Domain(format!("`{expr}` is not finite at u = {s:e}")));
            }
            positive &= y > 0.0;
        }
        let kinks = find_kinks(&expr, SAMPLE_LO, SAMPLE_HI);
        let deriv = expr.deriv(Var::U);
        let z = expr.eval(0.0, 0.0);
        let zero_value = if z.is_finite() {
            z
        } else {
            match asymptotic::lead(&expr, End::Zero) {
                Ok(None) => 0.0,
                Ok(Some(l)) if l.index > 0.0 => 0.0,
                Ok(Some(l)) if l.index == 0.0 && l.log_power == 0.0 => l.shape.eval(1.0, 1.0),
                Ok(Some(l)) if l.index == 0.0 && l.log_power < 0.0 => 0.0,
                Ok(Some(l)) => f64::INFINITY.copysign(l.shape.eval(1.0, 1.0)),
                Err(_) => z,
            }
        };
        Ok(ScalarNonlin { expr, deriv, kinks, positive, zero_value })
    }

    /// Parse and build.
    pub fn parse(text: &str, params: &BTreeMap<String, f64>) -> Result<Self> {
        Self::new(parse_expr(text, params)?)
    }

    pub fn expr(&self) -> &Expr {
        &self.expr
    }

    pub fn deriv_expr(&self) -> &Expr {
        &self.deriv
    }

    /// Whether `f > 0` held on every construction sample.
    pub fn is_positive(&self) -> bool {
        self.positive
    }

    /// Limit value used at `s = 0`.
    pub fn zero_value(&self) -> f64 {
        self.zero_value
    }

    /// Kinks of min/max branches inside `[1e-8, 1e8]`, sorted.
    pub fn kinks(&self) -> &[f64] {
        &self.kinks
    }

    /// Unchecked value; uses the limit at `0` and returns NaN for `s < 0`.
    pub fn value(&self, s: f64) -> f64 {
        if s == 0.0 {
            self.zero_value
        } else if s < 0.0 {
            f64::NAN
        } else {
            self.expr.eval(s, 0.0)
        }
    }

    /// Checked value.
    pub fn eval(&self, s: f64) -> Result<f64> {
        if !s.is_finite() || s < 0.0 {
            return Err(Error::Domain(format!("argument {s} outside [0, ∞)")));
        }
        let y = self.value(s);
        if y.is_finite() {
            Ok(y)
        } else {
            Err(Error::Domain(format!("`{}` undefined at u = {s}", self.expr)))
        }
    }

    /// Value of `f` at `exp(ls)` in signed-log form.
    pub fn value_ln(&self, ls: f64) -> super::expr::SLog {
        self.expr.eval_ln(ls, 0.0)
    }

    /// Symbolic derivative value (left branch convention at exact ties).
    pub fn deriv_at(&self, s: f64) -> f64 {
        self.deriv.eval(s, 0.0)
    }

    /// Left and right derivatives at `s`.
    pub fn one_sided(&self, s: f64) -> (f64, f64) {
        (self.expr.eval_dual(s, 0.0, Var::U, Side::Left).1, self.expr.eval_dual(s, 0.0, Var::U, Side::Right).1)
    }

    /// Derivative as a new nonlinearity.
    pub fn derivative(&self) -> Result<ScalarNonlin> {
        ScalarNonlin::new(self.deriv.clone())
    }

    /// Distance (relative) from `s` to the nearest kink.
    pub fn kink_distance(&self, s: f64) -> f64 {
        self.kinks.iter().map(|k| (s - k).abs() / k).fold(f64::INFINITY, f64::min)
    }

    /// Structural lead at an end.
    pub fn lead(&self, end: End) -> std::result::Result<Option<Lead>, LeadFailure> {
        asymptotic::lead(&self.expr, end)
    }

    /// Local index at an end: structural when possible, numeric otherwise.
    pub fn index(&self, end: End) -> Result<(f64, f64)> {
        match self.lead(end) {
            Ok(Some(l)) => Ok((l.index, l.log_power)),
            Ok(None) => Err(Error::NotRegularlyVarying("expression vanishes identically".into())),
            Err(_) => super::regvar::numeric_index(self, end).map(|p| (p, 0.0)),
        }
    }
}

/// Zeros of the min/max switch functions of `e` on `[lo, hi]`.
pub fn find_kinks(e: &Expr, lo: f64, hi: f64) -> Vec<f64> {
    let switches = e.switch_functions();
    if switches.is_empty() {
        return Vec::new();
    }
    let pts = grid::geometric(lo, hi, 2001);
    let mut out = Vec::new();
    for sw in switches {
        let vals: Vec<f64> = pts.iter().map(|&s| sw.eval(s, 0.0)).collect();
        for i in 0..pts.len() - 1 {
            let (a, b) = (vals[i], vals[i + 1]);
            if !(a.is_finite() && b.is_finite()) {
                continue;
            }
            if a == 0.0 {
                out.push(pts[i]);
            } else if a.signum() != b.signum() && b != 0.0 {
                if let Some(r) = roots::bisect_log(|s| sw.eval(s, 0.0), pts[i], pts[i + 1], 1e-16, 200) {
                    out.push(r);
                }
            }
        }
    }
    out.sort_by(f64::total_cmp);
    out.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * b.abs());
    out
}

/// `∫₀ˢ σ^w f(σ) dσ`.
///
/// Sums of monomials are integrated in closed form. Otherwise the integral
/// is split as an analytic head `ε^{w+1} f(ε) / (w + q₀ + 1)` on `(0, ε]`, with
/// `q₀` the index of `f` at `0`, plus adaptive quadrature in `t = ln σ` on
/// `[ε, s]` broken at kinks. Returns [`Error::Divergent`] when
/// `w + q₀ + 1 <= 0`.
pub fn weighted_primitive(f: &ScalarNonlin, w: f64, s: f64) -> Result<f64> {
    if !(s >= 0.0) || !s.is_finite() {
        return Err(Error::Domain(format!("upper limit {s} outside [0, ∞)")));
    }
    if let Some(monos) = f.expr().as_monomials() {
        let mut acc = 0.0;
        for (c, e) in monos {
            if c == 0.0 {
                continue;
            }
            let d = w + e + 1.0;
            if d <= 0.0 {
                return Err(Error::Divergent(format!("σ^{w}·σ^{e} is not integrable at 0")));
            }
            if s > 0.0 {
                acc += c * s.powf(d) / d;
            }
        }
        return Ok(acc);
    }
    let (q0, _) = f.index(End::Zero)?;
    let d = w + q0 + 1.0;
    if d <= 0.0 {
        return Err(Error::Divergent(format!("local index {q0} at 0 with weight {w}")));
    }
    if s == 0.0 {
        return Ok(0.0);
    }
    let ls = s.ln();
    let integrand = |t: f64| {
        let y = f.value_ln(t);
        if y.sign == 0.0 {
            0.0
        } else {
            y.sign * ((w + 1.0) * t + y.ln).exp()
        }
    };
    let le = (ls - 40.0 / d).max(-690.0).min(ls);
    let head = integrand(le) / d;
    let mut breaks = vec![le];
    breaks.extend(f.kinks().iter().map(|k| k.ln()).filter(|&t| t > le && t < ls));
    breaks.push(ls);
    let body = quad::integrate_split(integrand, &breaks, 0.0, 1e-12);
    Ok(head + body.value)
}

/// [`weighted_primitive`] with divergence mapped to `+∞`.
pub fn weighted_primitive_or_inf(f: &ScalarNonlin, w: f64, s: f64) -> Result<f64> {
    match weighted_primitive(f, w, s) {
        Err(Error::Divergent(_)) => Ok(f64::INFINITY),
        r => r,
    }
}

/// Weighted primitive on an increasing grid, accumulated segment by segment
/// with a 10-point Gauss rule in `ln σ` (segments are split at kinks).
pub fn cumulative_weighted_primitive(f: &ScalarNonlin, w: f64, pts: &[f64]) -> Result<Vec<f64>> {
    let mut out = Vec::with_capacity(pts.len());
    let mut acc = weighted_primitive(f, w, pts[0])?;
    out.push(acc);
    let g = |t: f64| {
        let s = t.exp();
        s.powf(w + 1.0) * f.value(s)
    };
    for win in pts.windows(2) {
        let (a, b) = (win[0].ln(), win[1].ln());
        let mut cuts = vec![a];
        cuts.extend(f.kinks().iter().map(|k| k.ln()).filter(|&t| t > a && t < b));
        cuts.push(b);
        for c in cuts.windows(2) {
            acc += quad::gauss_legendre10(g, c[0], c[1]);
        }
        out.push(acc);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sc(text: &str) -> ScalarNonlin {
        ScalarNonlin::parse(text, &BTreeMap::new()).unwrap()
    }

    #[test]
    fn values_and_limits() {
        assert_eq!(sc("u^3").eval(2.0).unwrap(), 8.0);
        assert_eq!(sc("u^2*log(2+u)").eval(0.0).unwrap(), 0.0);
        assert!(sc("u^2").is_positive());
        assert!(!sc("u^2 - 1").is_positive());
    }

    #[test]
    fn rejects_v_and_nan() {
        assert!(ScalarNonlin::parse("u+v", &BTreeMap::new()).is_err());
        assert!(ScalarNonlin::parse("log(0.5+u)^0.5", &BTreeMap::new()).is_err());
    }

    #[test]
    fn benchmark_kink_found() {
        let mut p = BTreeMap::new();
        p.insert("K".into(), 0.2);
        let f = ScalarNonlin::parse("(K + min(1, u^1.5)) * u^2.5", &p).unwrap();
        assert_eq!(f.kinks().len(), 1);
        assert!((f.kinks()[0] - 1.0).abs() < 1e-14);
        let (l, r) = f.one_sided(1.0);
        assert!((l - (1.2 * 2.5 + 1.5)).abs() < 1e-12 && (r - 1.2 * 2.5).abs() < 1e-12);
    }

    #[test]
    fn primitives() {
        let f = sc("u^2.5");
        assert!((weighted_primitive(&f, 0.5, 2.0).unwrap() - 2f64.powf(4.0) / 4.0).abs() < 1e-13);
        assert!(weighted_primitive(&f, -4.0, 1.0).is_err());
        assert_eq!(weighted_primitive_or_inf(&f, -4.0, 1.0).unwrap(), f64::INFINITY);
        let g = sc("u^2*log(2+u)");
        let w = weighted_primitive(&g, 0.0, 1.0).unwrap();
        let t = quad::trapezoid(|x| x * x * (2.0 + x).ln(), 0.0, 1.0, 20000);
        assert!((w - t).abs() < 1e-8, "{w} {t}");
    }

    #[test]
    fn singular_weight_with_log() {
        let g = sc("u^2*log(2+u)");
        let w = weighted_primitive(&g, -2.0, 3.0).unwrap();
        let exact = quad::integrate(|x: f64| (2.0 + x).ln(), 0.0, 3.0, 0.0, 1e-14, 100).value;
        assert!((w / exact - 1.0).abs() < 1e-10, "{w} {exact}");
    }

    #[test]
    fn cumulative_matches_direct() {
        let f = sc("(0.5 + min(1, u^1.5)) * u^2.5");
        let pts = grid::geometric(1e-3, 10.0, 200);
        let cum = cumulative_weighted_primitive(&f, -2.0, &pts).unwrap();
        for &i in &[0usize, 57, 199] {
            let d = weighted_primitive(&f, -2.0, pts[i]).unwrap();
            assert!((cum[i] / d - 1.0).abs() < 1e-10, "{i}: {} {d}", cum[i]);
        }
    }
}
