//! Named nonlinearity families written in the expression language.

use std::collections::BTreeMap;

use super::parse::{parse_const, parse_expr};
use super::scalar::ScalarNonlin;
use super::system::SystemNonlin;
use crate::error::{Error, Result};

/// Structural template of a preset and its expression texts.
#[derive(Debug, Clone, PartialEq)]
pub enum Template {
    Scalar { f: String },
    Gradient { potential: String },
    LaneEmden { f1: String, f2: String },
    Proportional { phi: String, k: String, g: String, lambda: String },
}

/// A named family with default parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct Preset {
    pub name: &'static str,
    pub summary: &'static str,
    pub template: Template,
    pub defaults: Vec<(&'static str, f64)>,
}

fn s(x: &str) -> String {
    x.to_string()
}

/// `g(x) = x^((p0+1)/2) log^a(K + x^sigma)` written for variable `x`.
pub fn log_power_text(x: &str) -> String {
    format!("{x}^((p0+1)/2) * log(K + {x}^sigma)^a")
}

fn log_gradient_potential() -> String {
    let (gu, gv) = (log_power_text("u"), log_power_text("v"));
    format!("({gu})^2 + ({gv})^2 - 2*lambda*({gu})*({gv})")
}

fn log_gradient_scalar() -> String {
    let g = log_power_text("u");
    let dg = "((p0+1)/2 * u^((p0-1)/2) * log(K + u^sigma)^a \
              + a*sigma * u^((p0+1)/2) * log(K + u^sigma)^(a-1) * u^(sigma-1) / (K + u^sigma))";
    format!("2*(1-lambda) * ({g}) * {dg}")
}

/// All shipped presets.
pub fn catalog() -> Vec<Preset> {
    vec![
        Preset {
            name: "power",
            summary: "pure power u^p",
            template: Template::Scalar { f: s("u^p") },
            defaults: vec![("p", 3.0)],
        },
        Preset {
            name: "benchmark",
            summary: "piecewise benchmark (K + min(1, u^(p-1))) u^p",
            template: Template::Scalar { f: s("(K + min(1, u^(p-1))) * u^p") },
            defaults: vec![("K", 0.2), ("p", 2.5)],
        },
        Preset {
            name: "uk",
            summary: "two-power nonlinearity u^p_k + u^(2p_k - 1), p_k = n/(n-2) + 1/k",
            template: Template::Scalar { f: s("u^(n/(n-2) + 1/k) + u^(2*(n/(n-2) + 1/k) - 1)") },
            defaults: vec![("n", 3.0), ("k", 10.0)],
        },
        Preset {
            name: "log-gradient",
            summary:
                "gradient system with F = g(u)^2 + g(v)^2 - 2 lambda g(u) g(v), g = s^((p0+1)/2) log^a(K + s^sigma)",
            template: Template::Gradient { potential: log_gradient_potential() },
            defaults: vec![("p0", 2.0), ("a", 0.5), ("K", 1.0), ("sigma", 1.0), ("lambda", 0.5)],
        },
        Preset {
            name: "log-gradient-diagonal",
            summary: "restriction of the log-gradient system to u = v: 2(1 - lambda) g g'",
            template: Template::Scalar { f: log_gradient_scalar() },
            defaults: vec![("p0", 2.0), ("a", 0.5), ("K", 1.0), ("sigma", 1.0), ("lambda", 0.5)],
        },
        Preset {
            name: "cubic-quintic",
            summary: "gradient system with two homogeneous potentials H1 (degree p+1) and H2 (degree q+1)",
            template: Template::Gradient {
                potential: s("(u^(p+1) + v^(p+1) + 2*lambda*u^((p+1)/2)*v^((p+1)/2))/(p+1) \
                              + b*(u^(q+1) + v^(q+1) + 2*mu*u^((q+1)/2)*v^((q+1)/2))/(q+1)"),
            },
            defaults: vec![("p", 3.0), ("q", 5.0), ("lambda", 0.5), ("mu", 0.5), ("b", 1.0)],
        },
        Preset {
            name: "proportional-power",
            summary: "proportional system with phi = 1, k = s^r + b s^q, g = s^p",
            template: Template::Proportional { phi: s("1"), k: s("u^r + b*u^q"), g: s("u^p"), lambda: s("lambda") },
            defaults: vec![("p", 2.0), ("q", 1.5), ("r", 0.5), ("b", 1.0), ("lambda", 0.5)],
        },
        Preset {
            name: "proportional-log",
            summary: "proportional system with phi = log^-d(K+u+v), k = s^r log^a(K+s), g = s^p log^b(K+s)",
            template: Template::Proportional {
                phi: s("log(K + u + v)^(-d)"),
                k: s("u^r * log(K + u)^a"),
                g: s("u^p * log(K + u)^b"),
                lambda: s("lambda"),
            },
            defaults: vec![("p", 2.0), ("r", 0.5), ("a", 0.5), ("b", 1.0), ("d", 2.0), ("K", 2.0), ("lambda", 0.5)],
        },
        Preset {
            name: "lane-emden",
            summary: "Lane-Emden pair f1 = v^p, f2 = u^q",
            template: Template::LaneEmden { f1: s("v^p"), f2: s("u^q") },
            defaults: vec![("p", 2.0), ("q", 3.0)],
        },
        Preset {
            name: "lane-emden-log",
            summary: "log-perturbed Lane-Emden pair f1 = v^p log^a(K+v), f2 = u^q log^b(K+u)",
            template: Template::LaneEmden { f1: s("v^p * log(K + v)^a"), f2: s("u^q * log(K + u)^b") },
            defaults: vec![("p", 2.0), ("q", 3.0), ("a", 1.0), ("b", 2.0), ("K", 1.0)],
        },
    ]
}

/// Look up a preset by name.
pub fn find(name: &str) -> Result<Preset> {
    catalog().into_iter().find(|p| p.name == name).ok_or_else(|| Error::Invalid(format!("unknown preset `{name}`")))
}

impl Preset {
    /// Defaults overridden by `params`.
    pub fn bind(&self, params: &BTreeMap<String, f64>) -> BTreeMap<String, f64> {
        let mut out: BTreeMap<String, f64> = self.defaults.iter().map(|(k, v)| (k.to_string(), *v)).collect();
        for (k, v) in params {
            out.insert(k.clone(), *v);
        }
        out
    }

    /// Build as a scalar nonlinearity.
    pub fn scalar(&self, params: &BTreeMap<String, f64>) -> Result<ScalarNonlin> {
        match &self.template {
            Template::Scalar { f } => ScalarNonlin::parse(f, &self.bind(params)),
            _ => Err(Error::Invalid(format!("preset `{}` is a system", self.name))),
        }
    }

    /// Build as a system (scalar presets become one-component systems).
    pub fn system(&self, params: &BTreeMap<String, f64>) -> Result<SystemNonlin> {
        let b = self.bind(params);
        match &self.template {
            Template::Scalar { f } => Ok(SystemNonlin::scalar(&ScalarNonlin::parse(f, &b)?)),
            Template::Gradient { potential } => SystemNonlin::gradient(parse_expr(potential, &b)?),
            Template::LaneEmden { f1, f2 } => SystemNonlin::lane_emden(parse_expr(f1, &b)?, parse_expr(f2, &b)?),
            Template::Proportional { phi, k, g, lambda } => SystemNonlin::proportional(
                parse_expr(phi, &b)?,
                parse_expr(k, &b)?,
                parse_expr(g, &b)?,
                parse_const(lambda, &b)?,
            ),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_preset_builds_with_defaults() {
        for p in catalog() {
            let sys = p.system(&BTreeMap::new()).unwrap_or_else(|e| panic!("{}: {e}", p.name));
            assert!(sys.m() >= 1);
        }
    }

    #[test]
    fn diagonal_reduction_matches_gradient() {
        let mut prm = BTreeMap::new();
        prm.insert("K".to_string(), 2.0);
        prm.insert("sigma".to_string(), -1.0);
        prm.insert("a".to_string(), 0.7);
        let sys = find("log-gradient").unwrap().system(&prm).unwrap();
        let f = find("log-gradient-diagonal").unwrap().scalar(&prm).unwrap();
        for &s in &[0.01, 0.5, 1.0, 7.0] {
            let fs = sys.eval(s, s);
            assert!((fs[0] / f.value(s) - 1.0).abs() < 1e-12);
            assert!((fs[1] / f.value(s) - 1.0).abs() < 1e-12);
        }
    }
}
