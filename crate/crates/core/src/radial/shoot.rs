use serde::Serialize;

use super::profile::{Provenance, RadialProfile};
use crate::error::{Error, Result};
use crate::nonlin::ScalarNonlin;
use crate::numeric::ode::Dopri5;

/// Integration controls for [`shoot`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ShootOptions {
    pub r_max: f64,
    /// Local error budget per unit step.
    pub tol: f64,
    /// Blow-up is declared once `u > blowup_factor · s₀`.
    pub blowup_factor: f64,
    /// Radius up to which the origin series is used; scaled down by the
    /// natural length `sqrt(s₀ / f(s₀))` when that is below 1.
    pub r_start: f64,
    /// Keep integrating after the first zero (with `f` extended by `0`).
    pub past_zero: bool,
}

impl Default for ShootOptions {
    fn default() -> Self {
        ShootOptions { r_max: 1e3, tol: 1e-12, blowup_factor: 1e8, r_start: 1e-4, past_zero: false }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "tag")]
pub enum ShootOutcome {
    FirstZero { radius: f64 },
    PositiveOnHorizon { r_max: f64, u: f64, du: f64 },
    BlowUp { radius: f64 },
    Inconclusive { reason: String },
}

impl ShootOutcome {
    pub fn name(&self) -> &'static str {
        match self {
            ShootOutcome::FirstZero { .. } => "FirstZero",
            ShootOutcome::PositiveOnHorizon { .. } => "PositiveOnHorizon",
            ShootOutcome::BlowUp { .. } => "BlowUp",
            ShootOutcome::Inconclusive { .. } => "Inconclusive",
        }
    }

    pub fn first_zero(&self) -> Option<f64> {
        match self {
            ShootOutcome::FirstZero { radius } => Some(*radius),
            _ => None,
        }
    }
}

fn extended(f: &ScalarNonlin, u: f64) -> f64 {
    if u >= 0.0 {
        f.value(u)
    } else {
        0.0
    }
}

/// Integrate `-(r^{n-1}u')' = r^{n-1} f(u)`, `u(0) = s₀`, `u'(0) = 0` and
/// classify the trajectory.
pub fn shoot(f: &ScalarNonlin, n: u32, s0: f64, opts: &ShootOptions) -> Result<(RadialProfile, ShootOutcome)> {
    if n < 1 {
        return Err(Error::Range("dimension must be >= 1".into()));
    }
    if !(s0 > 0.0 && opts.r_max > 0.0 && opts.tol > 0.0) {
        return Err(Error::Range("s0, r_max and tol must be positive".into()));
    }
    // Integrate in w = u / s₀, ρ = r / L with L = min(1, (s₀/f(s₀))^½), so
    // the error control sees O(1) quantities whatever the centre value.
    let nm1 = n as f64 - 1.0;
    let f0 = extended(f, s0);
    let df0 = if s0 > 0.0 { f.deriv_at(s0) } else { 0.0 };
    let len = if f0 > 0.0 { (s0 / f0).sqrt().min(1.0) } else { 1.0 };
    let gain = len * len / s0;
    let rhs = |rho: f64, y: &[f64], dy: &mut [f64]| {
        dy[0] = y[1];
        dy[1] = -gain * extended(f, s0 * y[0]) - nm1 * y[1] / rho;
    };
    let rho_max = opts.r_max / len;
    let rho0 = opts.r_start.min(rho_max / 2.0);
    let r0 = rho0 * len;
    let nf = n as f64;
    // u = s₀ - f r²/(2n) + f f' r⁴/(8n(n+2)) + O(r⁶)
    let c4 = f0 * df0 / (8.0 * nf * (nf + 2.0));
    let u0 = s0 - f0 * r0 * r0 / (2.0 * nf) + c4 * r0.powi(4);
    let du0 = -f0 * r0 / nf + 4.0 * c4 * r0.powi(3);
    let du_unit = s0 / len;

    let mut prof = RadialProfile {
        n,
        r: vec![0.0, r0],
        u: vec![vec![s0, u0]],
        du: vec![vec![0.0, du0]],
        provenance: Provenance::Shooting,
    };
    let mut ode = Dopri5::new(&rhs, rho0, vec![u0 / s0, du0 / du_unit], rho0, opts.tol);
    let mut zero = None;
    let mut rising = false;
    while ode.t < rho_max {
        let (t_prev, y_prev) = (ode.t, ode.y.clone());
        if ode.step(rho_max).is_none() {
            return Ok((
                prof,
                ShootOutcome::Inconclusive { reason: format!("step size underflow at r = {}", t_prev * len) },
            ));
        }
        if !ode.y.iter().all(|x| x.is_finite()) || ode.y[0] > opts.blowup_factor {
            return Ok((prof, ShootOutcome::BlowUp { radius: ode.t * len }));
        }
        if zero.is_none() && ode.y[0] <= 0.0 {
            let probe = Dopri5::new(&rhs, t_prev, y_prev, 0.0, opts.tol);
            let (mut lo, mut hi) = (0.0, ode.t - t_prev);
            let mut hit = probe.trial(hi);
            for _ in 0..200 {
                if hit.y[0].abs() <= 1e-12 {
                    break;
                }
                let mid = 0.5 * (lo + hi);
                let tr = probe.trial(mid);
                if tr.y[0] > 1e-12 {
                    lo = mid;
                } else {
                    hi = mid;
                    hit = tr;
                }
            }
            let radius = (t_prev + hi) * len;
            zero = Some(radius);
            if !opts.past_zero {
                if radius > *prof.r.last().unwrap() {
                    prof.r.push(radius);
                    prof.u[0].push(hit.y[0] * s0);
                    prof.du[0].push(hit.y[1] * du_unit);
                }
                return Ok((prof, ShootOutcome::FirstZero { radius }));
            }
        }
        rising |= ode.y[1] > 0.0;
        prof.r.push(if ode.t >= rho_max { opts.r_max } else { ode.t * len });
        prof.u[0].push(ode.y[0] * s0);
        prof.du[0].push(ode.y[1] * du_unit);
    }
    let out = match zero {
        Some(radius) => ShootOutcome::FirstZero { radius },
        None if rising => {
            ShootOutcome::Inconclusive { reason: format!("u > 0 up to r_max = {} but u' changed sign", opts.r_max) }
        }
        None => ShootOutcome::PositiveOnHorizon { r_max: opts.r_max, u: ode.y[0] * s0, du: ode.y[1] * du_unit },
    };
    Ok((prof, out))
}
