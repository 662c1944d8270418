use crate::error::{Error, Result};
use crate::nonlin::{weighted_primitive, ScalarNonlin, SystemNonlin};

/// Right-hand side of `-d_i Δu_i = f_i(U)`, extended by `0` for negative
/// arguments.
#[derive(Debug, Clone, Copy)]
pub enum Source<'a> {
    Scalar(&'a ScalarNonlin),
    System(&'a SystemNonlin),
}

impl Source<'_> {
    pub fn m(&self) -> usize {
        match self {
            Source::Scalar(_) => 1,
            Source::System(s) => s.m(),
        }
    }

    pub fn diffusion(&self, i: usize) -> f64 {
        match self {
            Source::Scalar(_) => 1.0,
            Source::System(s) => s.diffusion()[i],
        }
    }

    pub fn eval(&self, u: &[f64]) -> [f64; 2] {
        match self {
            Source::Scalar(f) => [if u[0] >= 0.0 { f.value(u[0]) } else { 0.0 }, 0.0],
            Source::System(s) => {
                let v = if s.m() > 1 { u[1] } else { 0.0 };
                s.eval_clamped(u[0], v)
            }
        }
    }

    /// Row-major Jacobian of [`Source::eval`].
    pub fn jacobian(&self, u: &[f64]) -> [f64; 4] {
        match self {
            Source::Scalar(f) => {
                let d = if u[0] >= 0.0 { f.deriv_at(u[0]) } else { 0.0 };
                [if d.is_finite() { d } else { 0.0 }, 0.0, 0.0, 0.0]
            }
            Source::System(s) => {
                let (a, b) = (u[0], if s.m() > 1 { u[1] } else { 0.0 });
                let mut j = s.jacobian(a.max(0.0), b.max(0.0));
                if a < 0.0 {
                    j[0] = 0.0;
                    j[2] = 0.0;
                }
                if b < 0.0 {
                    j[1] = 0.0;
                    j[3] = 0.0;
                }
                j
            }
        }
    }

    /// Potential `F` with `F(0) = 0`.
    pub fn potential(&self, u: &[f64]) -> Result<f64> {
        match self {
            Source::Scalar(f) => {
                if u[0] > 0.0 {
                    weighted_primitive(f, 0.0, u[0])
                } else {
                    Ok(0.0)
                }
            }
            Source::System(s) => {
                let p =
                    s.potential().ok_or_else(|| Error::MissingPotential("system is not of gradient type".into()))?;
                let v = if s.m() > 1 { u[1] } else { 0.0 };
                let base = p.eval(0.0, 0.0);
                let base = if base.is_finite() { base } else { 0.0 };
                Ok(p.eval(u[0].max(0.0), v.max(0.0)) - base)
            }
        }
    }

    /// Whether a potential is available.
    pub fn has_potential(&self) -> bool {
        match self {
            Source::Scalar(_) => true,
            Source::System(s) => s.potential().is_some(),
        }
    }
}
