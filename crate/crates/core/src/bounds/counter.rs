use std::collections::BTreeMap;

use serde::Serialize;

use crate::criteria::Geometry;
use crate::error::{Error, Result};
use crate::nonlin::{parse_expr, SystemNonlin};
use crate::numeric::grid;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CounterProfile {
    /// `c |x|^a`.
    Power { c: f64, a: f64 },
    /// `cosh(√λ x)`.
    Cosh { rate: f64 },
    /// `sinh(√λ x)`.
    Sinh { rate: f64 },
}

impl CounterProfile {
    /// `(w, w'')`.
    pub fn eval(&self, x: f64) -> (f64, f64) {
        match *self {
            CounterProfile::Power { c, a } => {
                let y = x.abs();
                (c * y.powf(a), c * a * (a - 1.0) * y.powf(a - 2.0))
            }
            CounterProfile::Cosh { rate } => {
                let w = (rate * x).cosh();
                (w, rate * rate * w)
            }
            CounterProfile::Sinh { rate } => {
                let w = (rate * x).sinh();
                (w, rate * rate * w)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Counterexample {
    pub profile: CounterProfile,
    pub geometry: Geometry,
    /// `max |−w'' − f₁(w, 0)| / (1 + |w''|)` and `max |f₂(w, 0)|` on the grid.
    pub residual: f64,
    pub x_range: (f64, f64),
    pub points: usize,
    /// `w(0)` (vanishes in the half-space case).
    pub at_origin: f64,
}

/// Unbounded semitrivial `(w, 0)` solution of the proportional system with
/// `φ ≡ 1`, `k = s^p`, `g = s^q`, reduced to `w'' = λ w^{p+q}` in one variable.
pub fn proportional_counterexample(p: f64, q: f64, lambda: f64, geometry: Geometry) -> Result<Counterexample> {
    if !(p > 0.0 && q >= p && p + q <= 1.0 + 1e-15 && lambda > 0.0) {
        return Err(Error::Range(format!(
            "need 0 < p <= q, p + q <= 1, lambda > 0; got p = {p}, q = {q}, lambda = {lambda}"
        )));
    }
    let s = p + q;
    let profile = if (s - 1.0).abs() <= 1e-15 {
        match geometry {
            Geometry::Whole => CounterProfile::Cosh { rate: lambda.sqrt() },
            Geometry::Half => CounterProfile::Sinh { rate: lambda.sqrt() },
        }
    } else {
        let a = 2.0 / (1.0 - s);
        let c = (lambda / (a * (a - 1.0))).powf(1.0 / (1.0 - s));
        CounterProfile::Power { c, a }
    };
    let mut prm = BTreeMap::new();
    prm.insert("p".to_string(), p);
    prm.insert("q".to_string(), q);
    let sys =
        SystemNonlin::proportional(parse_expr("1", &prm)?, parse_expr("u^p", &prm)?, parse_expr("u^q", &prm)?, lambda)?;
    let (lo, hi) = match geometry {
        Geometry::Whole => (-10.0, 10.0),
        Geometry::Half => (0.0, 10.0),
    };
    let points = 2001;
    let mut residual = 0.0f64;
    for x in grid::linear(lo, hi, points) {
        let (w, d2w) = profile.eval(x);
        if w < 0.0 {
            return Err(Error::Invalid(format!("profile negative at x = {x}")));
        }
        let f = sys.eval(w, 0.0);
        let r1 = (-d2w - f[0]).abs() / (1.0 + d2w.abs());
        residual = residual.max(r1).max(f[1].abs());
    }
    Ok(Counterexample { profile, geometry, residual, x_range: (lo, hi), points, at_origin: profile.eval(0.0).0 })
}
