use serde::Serialize;
use statrs::function::gamma::gamma;

use super::profile::RadialProfile;
use super::source::Source;
use crate::criteria::{exponents, Geometry, ScanGrid};
use crate::error::{Error, Result};
use crate::nonlin::scalar::cumulative_weighted_primitive;
use crate::nonlin::{weighted_primitive, ScalarNonlin};
use crate::numeric::{grid, quad, roots};

/// Area of the unit sphere in `R^n`.
pub fn sphere_area(n: u32) -> f64 {
    let h = n as f64 / 2.0;
    2.0 * std::f64::consts::PI.powf(h) / gamma(h)
}

fn sobolev(n: u32) -> Result<f64> {
    if n < 3 {
        return Err(Error::Range(format!("n = {n}: need n >= 3")));
    }
    Ok(exponents(n, Geometry::Whole).p_sobolev)
}

/// `ψ(s) = s f(s) - (p_S + 1) ∫₀ˢ f`.
pub fn pohozaev_psi(f: &ScalarNonlin, n: u32, s: f64) -> Result<f64> {
    let ps = sobolev(n)?;
    Ok(s * f.eval(s)? - (ps + 1.0) * weighted_primitive(f, 0.0, s)?)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PsiScan {
    /// Largest scanned `s₀` with `ψ ≥ 0` on `(0, s₀]`; `0` when `ψ < 0` at the first sample.
    pub s0: f64,
    /// `ψ ≥ 0` held on the whole scan range.
    pub reached_end: bool,
    /// `(s, ψ(s))` on the scan grid.
    pub samples: Vec<(f64, f64)>,
}

/// Scan `ψ` on a log grid. Values above `-tol · (s f + (p_S+1) H)` count as
/// nonnegative; the first sign change is refined by bisection.
pub fn psi_scan(f: &ScalarNonlin, n: u32, sg: &ScanGrid) -> Result<PsiScan> {
    let ps = sobolev(n)?;
    let pts = grid::geometric(sg.lo, sg.hi, sg.points);
    let prim = cumulative_weighted_primitive(f, 0.0, &pts)?;
    let mut samples = Vec::with_capacity(pts.len());
    let mut first_bad = None;
    for (i, (&s, &h)) in pts.iter().zip(&prim).enumerate() {
        let sf = s * f.value(s);
        let psi = sf - (ps + 1.0) * h;
        samples.push((s, psi));
        if first_bad.is_none() && psi < -sg.tol * (sf.abs() + (ps + 1.0) * h.abs()) {
            first_bad = Some(i);
        }
    }
    let (s0, reached_end) = match first_bad {
        None => (sg.hi, true),
        Some(0) => (0.0, false),
        Some(i) => {
            let g = |s: f64| pohozaev_psi(f, n, s).unwrap_or(f64::NAN);
            let s0 = roots::bisect(g, pts[i - 1], pts[i], 1e-12 * pts[i], 200).unwrap_or(pts[i - 1]);
            (s0, false)
        }
    };
    Ok(PsiScan { s0, reached_end, samples })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RpResidual {
    /// `∫_{B_R} 2nF(U) - (n-2) U·f(U)`.
    pub volume: f64,
    /// Boundary terms at `|x| = R`.
    pub boundary: f64,
    pub radius: f64,
    /// `|volume - boundary| / max(|volume|, |boundary|, 1e-30)`.
    pub residual: f64,
    /// Size of the individual terms (volume integral of the absolute
    /// integrand plus absolute boundary terms). Used to judge cases where
    /// both sides vanish identically.
    pub scale: f64,
}

/// Piecewise quintic Hermite interpolant of a profile, with second
/// derivatives recovered from the equation.
struct Hermite<'a> {
    prof: &'a RadialProfile,
    d2: Vec<Vec<f64>>,
}

impl<'a> Hermite<'a> {
    #[allow(clippy::needless_range_loop)]
    fn new(prof: &'a RadialProfile, src: Source<'_>) -> Self {
        let m = prof.components();
        let nm1 = prof.n as f64 - 1.0;
        let mut d2 = vec![vec![0.0; prof.len()]; m];
        for j in 0..prof.len() {
            let uj: Vec<f64> = (0..m).map(|i| prof.u[i][j]).collect();
            let f = src.eval(&uj);
            for i in 0..m {
                let d = src.diffusion(i);
                d2[i][j] = if prof.r[j] == 0.0 {
                    -f[i] / (d * prof.n as f64)
                } else {
                    -f[i] / d - nm1 * prof.du[i][j] / prof.r[j]
                };
            }
        }
        Hermite { prof, d2 }
    }

    /// `(U, U')` at `r` inside interval `j`.
    fn at(&self, j: usize, r: f64) -> ([f64; 2], [f64; 2]) {
        let (a, b) = (self.prof.r[j], self.prof.r[j + 1]);
        let h = b - a;
        let t = (r - a) / h;
        let (t2, t3, t4, t5) = (t * t, t.powi(3), t.powi(4), t.powi(5));
        let h00 = 1.0 - 10.0 * t3 + 15.0 * t4 - 6.0 * t5;
        let h10 = t - 6.0 * t3 + 8.0 * t4 - 3.0 * t5;
        let h20 = 0.5 * (t2 - 3.0 * t3 + 3.0 * t4 - t5);
        let h01 = 10.0 * t3 - 15.0 * t4 + 6.0 * t5;
        let h11 = -4.0 * t3 + 7.0 * t4 - 3.0 * t5;
        let h21 = 0.5 * (t3 - 2.0 * t4 + t5);
        let d00 = -30.0 * t2 + 60.0 * t3 - 30.0 * t4;
        let d10 = 1.0 - 18.0 * t2 + 32.0 * t3 - 15.0 * t4;
        let d20 = 0.5 * (2.0 * t - 9.0 * t2 + 12.0 * t3 - 5.0 * t4);
        let d01 = -d00;
        let d11 = -12.0 * t2 + 28.0 * t3 - 15.0 * t4;
        let d21 = 0.5 * (3.0 * t2 - 8.0 * t3 + 5.0 * t4);
        let mut u = [0.0; 2];
        let mut du = [0.0; 2];
        for i in 0..self.prof.components() {
            let (u0, u1) = (self.prof.u[i][j], self.prof.u[i][j + 1]);
            let (p0, p1) = (self.prof.du[i][j], self.prof.du[i][j + 1]);
            let (q0, q1) = (self.d2[i][j], self.d2[i][j + 1]);
            u[i] = h00 * u0 + h10 * h * p0 + h20 * h * h * q0 + h01 * u1 + h11 * h * p1 + h21 * h * h * q1;
            du[i] = (d00 * u0 + d10 * h * p0 + d20 * h * h * q0 + d01 * u1 + d11 * h * p1 + d21 * h * h * q1) / h;
        }
        (u, du)
    }

    fn interval(&self, r: f64) -> usize {
        let j = self.prof.r.partition_point(|&x| x <= r);
        j.saturating_sub(1).min(self.prof.len() - 2)
    }
}

/// Interpolate a profile onto `radii` (within its range) with the quintic
/// Hermite interpolant, second derivatives taken from the equation.
pub fn resample(prof: &RadialProfile, src: Source<'_>, radii: &[f64]) -> Result<RadialProfile> {
    if prof.len() < 2 || prof.components() != src.m() {
        return Err(Error::Invalid("profile too short or component count mismatch".into()));
    }
    let top = prof.last_radius() * (1.0 + 1e-12);
    if radii.iter().any(|&r| !(r >= 0.0 && r <= top)) {
        return Err(Error::Range(format!("radii must lie in [0, {}]", prof.last_radius())));
    }
    let herm = Hermite::new(prof, src);
    let m = prof.components();
    let mut u = vec![Vec::with_capacity(radii.len()); m];
    let mut du = vec![Vec::with_capacity(radii.len()); m];
    for &r in radii {
        let (a, b) = herm.at(herm.interval(r), r);
        for i in 0..m {
            u[i].push(a[i]);
            du[i].push(b[i]);
        }
    }
    Ok(RadialProfile { n: prof.n, r: radii.to_vec(), u, du, provenance: prof.provenance })
}

/// Evaluate both sides of the Rellich-Pohozaev identity for a radial profile
/// on the ball of radius `radius` (whole space, `F(0) = 0`).
pub fn rellich_pohozaev_residual(prof: &RadialProfile, src: Source<'_>, radius: f64) -> Result<RpResidual> {
    if !src.has_potential() {
        return Err(Error::MissingPotential("the identity needs f = ∇F".into()));
    }
    if prof.len() < 2 || !(radius > 0.0) || radius > prof.last_radius() * (1.0 + 1e-12) {
        return Err(Error::Range(format!("radius {radius} outside the profile range (0, {}]", prof.last_radius())));
    }
    if prof.components() != src.m() {
        return Err(Error::Invalid("profile and nonlinearity have different component counts".into()));
    }
    let radius = radius.min(prof.last_radius());
    let herm = Hermite::new(prof, src);
    let n = prof.n;
    let nf = n as f64;
    let m = src.m();
    let mut err = None;
    let mut density = |j: usize, r: f64| {
        let (u, _) = herm.at(j, r);
        let f = src.eval(&u[..m]);
        let big = match src.potential(&u[..m]) {
            Ok(x) => x,
            Err(e) => {
                err.get_or_insert(e);
                0.0
            }
        };
        let dot: f64 = (0..m).map(|i| u[i] * f[i]).sum();
        r.powf(nf - 1.0) * (2.0 * nf * big - (nf - 2.0) * dot)
    };
    let (mut vol, mut vol_abs) = (0.0, 0.0);
    for j in 0..prof.len() - 1 {
        let (a, b) = (prof.r[j], prof.r[j + 1].min(radius));
        if b <= a {
            break;
        }
        vol += quad::gauss_legendre10(|r| density(j, r), a, b);
        vol_abs += quad::gauss_legendre10(|r| density(j, r).abs(), a, b);
    }
    if let Some(e) = err {
        return Err(e);
    }
    let area = sphere_area(n);
    let volume = area * vol;
    let (u, du) = herm.at(herm.interval(radius), radius);
    let rn = radius.powf(nf);
    let terms: Vec<f64> = std::iter::once(2.0 * rn * area * src.potential(&u[..m])?)
        .chain((0..m).flat_map(|i| {
            let d = rn * area * src.diffusion(i);
            [d * du[i] * du[i], d * (nf - 2.0) / radius * u[i] * du[i]]
        }))
        .collect();
    let bdry: f64 = terms.iter().sum();
    let scale = area * vol_abs + terms.iter().map(|t| t.abs()).sum::<f64>();
    let residual = (volume - bdry).abs() / volume.abs().max(bdry.abs()).max(1e-30);
    Ok(RpResidual { volume, boundary: bdry, radius, residual, scale })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    #[test]
    fn sphere_areas() {
        assert!((sphere_area(2) - 2.0 * std::f64::consts::PI).abs() < 1e-12);
        assert!((sphere_area(3) - 4.0 * std::f64::consts::PI).abs() < 1e-12);
    }

    #[test]
    fn psi_pure_powers() {
        let f = ScalarNonlin::parse("u^3", &BTreeMap::new()).unwrap();
        let psi = pohozaev_psi(&f, 3, 2.0).unwrap();
        assert!((psi - (1.0 - 6.0 / 4.0) * 16.0).abs() < 1e-12);
        let g = ScalarNonlin::parse("u^5", &BTreeMap::new()).unwrap();
        assert!(pohozaev_psi(&g, 3, 1.7).unwrap().abs() < 1e-12);
    }
}
