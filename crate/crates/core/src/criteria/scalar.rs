//! Checkers for scalar equations `-Δu = f(u)`.

use crate::error::{Error, Result};
use crate::nonlin::{End, ScalarNonlin, Side};

use super::exponents::{exponents, Geometry};
use super::scan::{primitive_ratio_sup, sup_scan, ScanGrid};
use super::verdict::{CheckVerdict, Holds, TheoremId};

fn need_dimension(n: u32) -> Result<()> {
    if n < 3 {
        return Err(Error::Range(format!("dimension n = {n}: these checks need n >= 3")));
    }
    Ok(())
}

fn boundary_warning(v: &mut CheckVerdict, what: &str, on_boundary: bool, at: f64) {
    if on_boundary {
        v.warnings.push(format!("{what} attained at the end of the scan range (s = {at:e}); widen the grid"));
    }
}

/// Pure powers `c u^p`: holds iff `p < p_S`.
pub fn check_theorem_a(f: &ScalarNonlin, n: u32) -> Result<CheckVerdict> {
    need_dimension(n)?;
    let ps = exponents(n, Geometry::Whole).p_sobolev;
    let sg = ScanGrid::default();
    let mut v = CheckVerdict::new(TheoremId::A, sg.meta());
    let monos = f.expr().as_monomials().unwrap_or_default();
    let [(c, p)] = monos.as_slice() else {
        return Err(Error::Invalid(format!("`{}` is not a single power c*u^p", f.expr())));
    };
    v.push("positive coefficient", Holds::from_bool(*c > 0.0), *c, "c > 0");
    let margin = ps - p;
    v.push("subcritical", Holds::strict(margin, sg.tol), margin, format!("p = {p} < p_S = {ps}"));
    v.margin = margin;
    v.set("p", *p);
    v.set("p_S", ps);
    if margin < -sg.tol {
        v.witness("subcritical", vec![*p], *p, ps);
    }
    Ok(v)
}

/// `s^{-p_S} f(s)` nonincreasing and nonconstant, via `sup s f'/f <= p_S`
/// (one-sided derivatives at kinks) and the total variation of
/// `s^{-p_S} f` on the grid.
pub fn check_theorem_b(f: &ScalarNonlin, n: u32) -> Result<CheckVerdict> {
    check_theorem_b_on(f, n, &ScanGrid::default())
}

pub fn check_theorem_b_on(f: &ScalarNonlin, n: u32, sg: &ScanGrid) -> Result<CheckVerdict> {
    need_dimension(n)?;
    let ps = exponents(n, Geometry::Whole).p_sobolev;
    let mut v = CheckVerdict::new(TheoremId::B, sg.meta());
    v.push("positive", Holds::from_bool(f.is_positive()), f64::NAN, "f(s) > 0 on the sample grid");
    let elasticity = |s: f64, side: Side| {
        let (l, r) = f.one_sided(s);
        s * if side == Side::Left { l } else { r } / f.value(s)
    };
    let e = sup_scan(elasticity, sg, f.kinks());
    let margin = ps - e.value;
    boundary_warning(&mut v, "sup s f'/f", e.on_boundary, e.at);
    v.set("sup_elasticity", e.value);
    v.set("argsup", e.at);
    v.set("p_S", ps);
    v.margin = margin;

    let pts = sg.points_avoiding(&[]);
    let normalized: Vec<f64> = pts.iter().map(|&s| (s.ln() * -ps + f.value(s).ln()).exp()).collect();
    let tv: f64 = normalized.windows(2).map(|w| (w[1] - w[0]).abs()).sum();
    let top = normalized.iter().copied().fold(0.0, f64::max);
    let nonconstant = tv > 1e-9 * top;
    v.set("total_variation", tv);

    let mono = if margin.abs() <= sg.tol { Holds::Indeterminate } else { Holds::from_bool(margin > 0.0) };
    v.push("nonincreasing", mono, margin, "sup s f'(s)/f(s) <= p_S");
    v.push("nonconstant", Holds::from_bool(nonconstant), tv - 1e-9 * top, "total variation of s^-p_S f(s)");
    if mono == Holds::No {
        let side = match e.side {
            Some(Side::Right) => 1.0,
            Some(Side::Left) => -1.0,
            None => 0.0,
        };
        v.witness("nonincreasing", vec![e.at, side], e.value, ps);
    }
    if !nonconstant {
        v.witness("nonconstant", vec![sg.lo, sg.hi], tv, 1e-9 * top);
    }
    Ok(v)
}

/// Growth-window fit plus `Q = sup f/(s^{κ-1} φ) < κ` with
/// `φ(s) = ∫₀ˢ σ^{-κ} f`. An infinite `φ` makes the condition vacuous.
pub fn check_gs_modified(f: &ScalarNonlin, n: u32) -> Result<CheckVerdict> {
    check_gs_modified_on(f, n, &ScanGrid::default())
}

pub fn check_gs_modified_on(f: &ScalarNonlin, n: u32, sg: &ScanGrid) -> Result<CheckVerdict> {
    need_dimension(n)?;
    let ex = exponents(n, Geometry::Whole);
    let (ps, kappa) = (ex.p_sobolev, ex.kappa);
    let mut v = CheckVerdict::new(TheoremId::GsModified, sg.meta());
    v.set("kappa", kappa);
    for (name, end) in [("p1", End::Zero), ("p2", End::Infinity)] {
        match f.index(end) {
            Ok((p, _)) => {
                v.set(name, p);
                let m = (p - 1.0).min(ps - p);
                v.push(&format!("{name} in (1, p_S)"), Holds::strict(m, sg.tol), m, format!("local index {p}"));
            }
            Err(e) => {
                v.push(&format!("{name} in (1, p_S)"), Holds::Indeterminate, f64::NAN, e.to_string());
            }
        }
    }
    match primitive_ratio_sup(f, -kappa, sg) {
        Err(Error::Divergent(msg)) => {
            v.set("Q", f64::NAN);
            v.push("Q < kappa", Holds::Yes, f64::INFINITY, format!("phi is infinite ({msg})"));
            v.margin = f64::INFINITY;
        }
        Err(e) => return Err(e),
        Ok(q) => {
            let margin = kappa - q.value;
            boundary_warning(&mut v, "Q", q.on_boundary, q.at);
            v.set("Q", q.value);
            v.set("argsup", q.at);
            v.push("Q < kappa", Holds::strict(margin, sg.tol), margin, "sup f(s)/(s^(kappa-1) phi(s))");
            v.margin = margin;
            if margin < -sg.tol {
                v.witness("Q < kappa", vec![q.at], q.value, kappa);
            }
        }
    }
    Ok(v)
}

/// Scalar form of the gradient-system condition: `sup s f/F < p_S + 1`
/// with `F(s) = ∫₀ˢ f`.
pub fn check_thm1_scalar(f: &ScalarNonlin, n: u32) -> Result<CheckVerdict> {
    need_dimension(n)?;
    let sg = ScanGrid::default();
    let bound = exponents(n, Geometry::Whole).p_sobolev + 1.0;
    let mut v = CheckVerdict::new(TheoremId::Thm1, sg.meta());
    let e = primitive_ratio_sup(f, 0.0, &sg)?;
    let margin = bound - e.value;
    boundary_warning(&mut v, "sup s f/F", e.on_boundary, e.at);
    v.set("sup_sf_over_F", e.value);
    v.set("argsup", e.at);
    v.push("s f <= (p_S + 1 - eps) F", Holds::strict(margin, sg.tol), margin, "sup s f(s)/F(s) < p_S + 1");
    v.margin = margin;
    if margin < -sg.tol {
        v.witness("s f <= (p_S + 1 - eps) F", vec![e.at], e.value, bound);
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    fn bench(k: f64) -> ScalarNonlin {
        let mut p = BTreeMap::new();
        p.insert("K".into(), k);
        ScalarNonlin::parse("(K + min(1, u^1.5)) * u^2.5", &p).unwrap()
    }

    #[test]
    fn theorem_b_on_examples() {
        let sq = ScalarNonlin::parse("u^2", &BTreeMap::new()).unwrap();
        let v = check_theorem_b(&sq, 3).unwrap();
        assert_eq!(v.holds, Holds::Yes);
        assert!((v.margin - 3.0).abs() < 1e-12);
        assert_eq!(check_theorem_b(&bench(2.5), 4).unwrap().holds, Holds::Yes);
        let bad = check_theorem_b(&bench(1.5), 4).unwrap();
        assert_eq!(bad.holds, Holds::No);
        let w = &bad.witnesses[0];
        assert!((w.point[0] - 1.0).abs() < 1e-9 && w.point[1] == -1.0);
    }

    #[test]
    fn gs_modified_closed_forms() {
        let ok = check_gs_modified(&bench(1.2), 4).unwrap();
        assert_eq!(ok.holds, Holds::Yes);
        assert!((ok.value("Q").unwrap() - 3.0 * 2.2 / 3.4).abs() < 1e-9);
        let bad = check_gs_modified(&bench(0.8), 4).unwrap();
        assert_eq!(bad.holds, Holds::No);
        assert!((bad.value("Q").unwrap() - 3.0 * 1.8 / 2.6).abs() < 1e-9);
    }

    #[test]
    fn gs_modified_vacuous_when_phi_infinite() {
        let f = ScalarNonlin::parse("u^0.5", &BTreeMap::new()).unwrap();
        let v = check_gs_modified(&f, 4).unwrap();
        assert_eq!(v.condition("Q < kappa").unwrap().holds, Holds::Yes);
        assert_eq!(v.margin, f64::INFINITY);
    }
}
