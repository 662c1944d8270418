use super::expr::{Expr, Var};
use super::scalar::ScalarNonlin;
use crate::error::{Error, Result};
use crate::numeric::grid;

/// Structural template of a vector nonlinearity.
#[derive(Debug, Clone, PartialEq)]
pub enum SystemKind {
    /// Arbitrary components in `u`, `v`.
    Generic,
    /// `f = ∇F`.
    Gradient { potential: Expr },
    /// `f₁` depends on `v` only, `f₂` on `u` only.
    LaneEmden,
    /// `f = (φ k(u)(g(v) - λ g(u)), φ k(v)(g(u) - λ g(v)))`.
    Proportional { phi: Expr, k: Expr, g: Expr, lambda: f64 },
}

/// Vector nonlinearity with `m ∈ {1, 2}` components and diagonal diffusion.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemNonlin {
    kind: SystemKind,
    comps: Vec<Expr>,
    jac: Vec<Vec<Expr>>,
    diffusion: Vec<f64>,
}

fn check_finite(comps: &[Expr]) -> Result<()> {
    let pts = grid::geometric(1e-4, 1e4, 17);
    for &u in &pts {
        for &v in &pts {
            for (i, c) in comps.iter().enumerate() {
                let y = c.eval(u, v);
                if !y.is_finite() {
                    return Err(Error::Domain(format!("component {} is not finite at ({u:e}, {v:e})", i + 1)));
                }
            }
        }
    }
    Ok(())
}

impl SystemNonlin {
    fn build(kind: SystemKind, comps: Vec<Expr>) -> Result<Self> {
        check_finite(&comps)?;
        let vars = if comps.len() == 1 { vec![Var::U] } else { vec![Var::U, Var::V] };
        let jac = comps.iter().map(|c| vars.iter().map(|&x| c.deriv(x)).collect()).collect();
        let m = comps.len();
        Ok(SystemNonlin { kind, comps, jac, diffusion: vec![1.0; m] })
    }

    /// One-component system wrapping a scalar nonlinearity.
    pub fn scalar(f: &ScalarNonlin) -> Self {
        let e = f.expr().clone();
        let j = vec![vec![f.deriv_expr().clone()]];
        SystemNonlin { kind: SystemKind::Generic, comps: vec![e], jac: j, diffusion: vec![1.0] }
    }

    pub fn generic(f1: Expr, f2: Expr) -> Result<Self> {
        Self::build(SystemKind::Generic, vec![f1, f2])
    }

    /// `f = ∇F`; the symmetry `∂f₁/∂v = ∂f₂/∂u` is cross-checked by central
    /// differences.
    pub fn gradient(potential: Expr) -> Result<Self> {
        let comps = vec![potential.deriv(Var::U), potential.deriv(Var::V)];
        let s = Self::build(SystemKind::Gradient { potential }, comps)?;
        for &(u, v) in &[(0.3, 0.8), (1.1, 0.6), (2.0, 2.5), (0.7, 1.9)] {
            let h = 1e-5;
            let d12 = (s.comps[0].eval(u, v + h * v) - s.comps[0].eval(u, v - h * v)) / (2.0 * h * v);
            let d21 = (s.comps[1].eval(u + h * u, v) - s.comps[1].eval(u - h * u, v)) / (2.0 * h * u);
            if (d12 - d21).abs() > 1e-5 * d12.abs().max(d21.abs()).max(1e-8) {
                return Err(Error::Invalid(format!("mixed partials disagree at ({u}, {v}): {d12} vs {d21}")));
            }
        }
        Ok(s)
    }

    /// `-Δu = f₁(v)`, `-Δv = f₂(u)`.
    pub fn lane_emden(f1: Expr, f2: Expr) -> Result<Self> {
        if f1.depends_on(Var::U) || f2.depends_on(Var::V) {
            return Err(Error::Invalid("lane-emden kind needs f1 = f1(v) and f2 = f2(u)".into()));
        }
        Self::build(SystemKind::LaneEmden, vec![f1, f2])
    }

    /// Proportional-components template; `k` and `g` are written in `u`.
    pub fn proportional(phi: Expr, k: Expr, g: Expr, lambda: f64) -> Result<Self> {
        if !(lambda >= 0.0) {
            return Err(Error::Range(format!("lambda must be >= 0, got {lambda}")));
        }
        if k.depends_on(Var::V) || g.depends_on(Var::V) {
            return Err(Error::Invalid("k and g must be functions of u".into()));
        }
        let v = Expr::v();
        let (ku, kv) = (k.clone(), k.subst(Var::U, &v));
        let (gu, gv) = (g.clone(), g.subst(Var::U, &v));
        let f1 = Expr::product(vec![
            phi.clone(),
            ku,
            Expr::sum(vec![gv.clone(), Expr::product(vec![Expr::c(-lambda), gu.clone()])]),
        ]);
        let f2 = Expr::product(vec![phi.clone(), kv, Expr::sum(vec![gu, Expr::product(vec![Expr::c(-lambda), gv])])]);
        Self::build(SystemKind::Proportional { phi, k, g, lambda }, vec![f1, f2])
    }

    /// Replace the diagonal diffusion coefficients.
    pub fn with_diffusion(mut self, d: Vec<f64>) -> Result<Self> {
        if d.len() != self.comps.len() || d.iter().any(|x| !(*x > 0.0)) {
            return Err(Error::Invalid("diffusion needs one positive entry per component".into()));
        }
        self.diffusion = d;
        Ok(self)
    }

    pub fn m(&self) -> usize {
        self.comps.len()
    }

    pub fn kind(&self) -> &SystemKind {
        &self.kind
    }

    pub fn components(&self) -> &[Expr] {
        &self.comps
    }

    pub fn diffusion(&self) -> &[f64] {
        &self.diffusion
    }

    pub fn potential(&self) -> Option<&Expr> {
        match &self.kind {
            SystemKind::Gradient { potential } => Some(potential),
            _ => None,
        }
    }

    /// Component values at `(u, v)`; the second entry is `0` when `m = 1`.
    pub fn eval(&self, u: f64, v: f64) -> [f64; 2] {
        let mut out = [0.0; 2];
        for (i, c) in self.comps.iter().enumerate() {
            out[i] = c.eval(u, v);
        }
        out
    }

    /// Values with negative arguments replaced by `0`.
    pub fn eval_clamped(&self, u: f64, v: f64) -> [f64; 2] {
        self.eval(u.max(0.0), v.max(0.0))
    }

    /// Row-major Jacobian `∂f_i/∂U_j` (only the leading `m × m` block is used).
    pub fn jacobian(&self, u: f64, v: f64) -> [f64; 4] {
        let mut out = [0.0; 4];
        for (i, row) in self.jac.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                out[i * 2 + j] = e.eval(u, v);
            }
        }
        out
    }

    /// Max-norm of `f(U)`.
    pub fn norm_at(&self, u: f64, v: f64) -> f64 {
        let f = self.eval(u, v);
        f[0].abs().max(f[1].abs())
    }
}
