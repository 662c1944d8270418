use serde::Serialize;

use crate::error::{Error, Result};
use crate::nonlin::ScalarNonlin;
use crate::numeric::{grid, roots, tridiag};
use crate::radial::{resample, shoot, Provenance, RadialProfile, ShootOptions, Source};

/// Starting iterate for Newton. Several solutions usually coexist (zero and
/// ground state), so the guess selects the branch.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Guess {
    Zero,
    Constant {
        value: f64,
    },
    /// `b + amplitude · cos²(πr / (2 width))` for `r < width`, `b` beyond.
    Bump {
        amplitude: f64,
        width: f64,
    },
    /// Nodal values per component on the solver mesh.
    Supplied {
        values: Vec<Vec<f64>>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BallOptions {
    /// Number of mesh intervals on `[0, R]` (at least 64).
    pub intervals: usize,
    pub max_iter: usize,
    pub guess: Guess,
}

impl Default for BallOptions {
    fn default() -> Self {
        BallOptions { intervals: 256, max_iter: 200, guess: Guess::Zero }
    }
}

/// Finite-difference solution of `-d_i Δu_i = f_i(U)` in `B_R`, `u_i = b_i` on
/// the boundary. With `n = 1` this is the symmetric slab `(-R, R)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BvpSolution {
    pub n: u32,
    pub radius: f64,
    pub h: f64,
    pub r: Vec<f64>,
    /// `u[i][j]`: component `i` at `r[j]`.
    pub u: Vec<Vec<f64>>,
    pub boundary: Vec<f64>,
    pub iterations: usize,
    /// Max-norm of the discrete residual at the last iterate.
    pub residual: f64,
    /// Acceptance threshold `1e-10 (1 + max|f(u)|)`.
    pub threshold: f64,
    pub converged: bool,
    pub status: String,
}

impl BvpSolution {
    pub fn distance(&self, j: usize) -> f64 {
        self.radius - self.r[j]
    }

    pub fn center(&self) -> Vec<f64> {
        self.u.iter().map(|c| c[0]).collect()
    }

    /// Max over nodes and components of `|u|`.
    pub fn max_abs(&self) -> f64 {
        self.u.iter().flatten().fold(0.0f64, |m, x| m.max(x.abs()))
    }

    /// Profile with centred-difference derivatives (one-sided at `r = R`).
    pub fn to_profile(&self) -> RadialProfile {
        let n = self.r.len();
        let du = self
            .u
            .iter()
            .map(|c| {
                (0..n)
                    .map(|j| match j {
                        0 => 0.0,
                        j if j == n - 1 => (3.0 * c[j] - 4.0 * c[j - 1] + c[j - 2]) / (2.0 * self.h),
                        j => (c[j + 1] - c[j - 1]) / (2.0 * self.h),
                    })
                    .collect()
            })
            .collect();
        RadialProfile { n: self.n, r: self.r.clone(), u: self.u.clone(), du, provenance: Provenance::FiniteDifference }
    }
}

struct Disc<'a> {
    src: Source<'a>,
    n: f64,
    h: f64,
    r: Vec<f64>,
    b: Vec<f64>,
    m: usize,
}

impl Disc<'_> {
    fn at(&self, x: &[f64], i: usize, j: usize) -> f64 {
        if j == self.r.len() - 1 {
            self.b[i]
        } else {
            x[j * self.m + i]
        }
    }

    /// Residual `-d Δ_h u - f(u)` at unknown nodes, and `max |f|`.
    fn residual(&self, x: &[f64]) -> (Vec<f64>, f64) {
        let nn = self.r.len() - 1;
        let h2 = self.h * self.h;
        let mut out = vec![0.0; nn * self.m];
        let mut fmax = 0.0f64;
        for j in 0..nn {
            let uj: Vec<f64> = (0..self.m).map(|i| self.at(x, i, j)).collect();
            let f = self.src.eval(&uj);
            for i in 0..self.m {
                let d = self.src.diffusion(i);
                let lap = if j == 0 {
                    2.0 * self.n * (self.at(x, i, 1) - uj[i]) / h2
                } else {
                    let (um, up) = (self.at(x, i, j - 1), self.at(x, i, j + 1));
                    (up - 2.0 * uj[i] + um) / h2 + (self.n - 1.0) / self.r[j] * (up - um) / (2.0 * self.h)
                };
                out[j * self.m + i] = -d * lap - f[i];
                fmax = fmax.max(f[i].abs());
            }
        }
        (out, fmax)
    }

    fn newton_step(&self, x: &[f64], res: &[f64]) -> Option<Vec<f64>> {
        let nn = self.r.len() - 1;
        let m = self.m;
        let h2 = self.h * self.h;
        let mut lower = vec![[0.0; 4]; nn];
        let mut diag = vec![[0.0; 4]; nn];
        let mut upper = vec![[0.0; 4]; nn];
        for j in 0..nn {
            let uj: Vec<f64> = (0..m).map(|i| self.at(x, i, j)).collect();
            let jf = self.src.jacobian(&uj);
            for i in 0..m {
                let d = self.src.diffusion(i);
                let (lo, di, up) = if j == 0 {
                    (0.0, 2.0 * self.n / h2, -2.0 * self.n / h2)
                } else {
                    let c = (self.n - 1.0) / (2.0 * self.h * self.r[j]);
                    (-1.0 / h2 + c, 2.0 / h2, -1.0 / h2 - c)
                };
                lower[j][i * 2 + i] = d * lo;
                diag[j][i * 2 + i] = d * di;
                upper[j][i * 2 + i] = d * up;
                for k in 0..m {
                    diag[j][i * 2 + k] -= jf[i * 2 + k];
                }
            }
        }
        tridiag::solve(m, &lower, &diag, &upper, res)
    }
}

fn max_norm(v: &[f64]) -> f64 {
    v.iter().fold(0.0f64, |m, x| m.max(x.abs()))
}

/// Damped Newton on the second-order radial discretization (ghost-node
/// symmetry at `r = 0`). Divergence and singular Jacobians are reported in
/// the returned solution with `converged = false`.
pub fn solve_ball(src: Source<'_>, n: u32, radius: f64, boundary: &[f64], opts: &BallOptions) -> Result<BvpSolution> {
    let m = src.m();
    if boundary.len() != m {
        return Err(Error::Invalid(format!("need {m} boundary values, got {}", boundary.len())));
    }
    if boundary.iter().any(|b| !(*b >= 0.0)) {
        return Err(Error::Range("boundary values must be >= 0".into()));
    }
    if !(radius > 0.0) || n < 1 {
        return Err(Error::Range("radius must be positive and n >= 1".into()));
    }
    if opts.intervals < 64 {
        return Err(Error::Range("mesh needs at least 64 intervals (h <= R/64)".into()));
    }
    let r = grid::linear(0.0, radius, opts.intervals + 1);
    let h = radius / opts.intervals as f64;
    let nn = opts.intervals;
    let mut x = vec![0.0; nn * m];
    for j in 0..nn {
        for i in 0..m {
            x[j * m + i] = match &opts.guess {
                Guess::Zero => 0.0,
                Guess::Constant { value } => *value,
                Guess::Bump { amplitude, width } => {
                    let w = width.max(h);
                    let t = (std::f64::consts::FRAC_PI_2 * r[j] / w).cos();
                    boundary[i] + if r[j] < w { amplitude * t * t } else { 0.0 }
                }
                Guess::Supplied { values } => {
                    let c = values.get(i).ok_or_else(|| Error::Invalid("supplied guess lacks a component".into()))?;
                    if c.len() != nn + 1 {
                        return Err(Error::Invalid(format!("supplied guess needs {} nodes, got {}", nn + 1, c.len())));
                    }
                    c[j]
                }
            };
        }
    }
    let disc = Disc { src, n: n as f64, h, r: r.clone(), b: boundary.to_vec(), m };
    let (mut res, mut fmax) = disc.residual(&x);
    let mut norm = max_norm(&res);
    let mut iterations = 0;
    let mut status = String::from("max iterations reached");
    let mut converged = false;
    while iterations <= opts.max_iter {
        if norm <= 1e-10 * (1.0 + fmax) {
            converged = true;
            status = "converged".into();
            break;
        }
        if iterations == opts.max_iter {
            break;
        }
        iterations += 1;
        let Some(dx) = disc.newton_step(&x, &res) else {
            status = "singular Jacobian".into();
            break;
        };
        let mut t = 1.0;
        let mut accepted = false;
        for _ in 0..40 {
            let trial: Vec<f64> = x.iter().zip(&dx).map(|(a, d)| a - t * d).collect();
            let (r2, f2) = disc.residual(&trial);
            let n2 = max_norm(&r2);
            if n2 < norm {
                x = trial;
                res = r2;
                fmax = f2;
                norm = n2;
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        if !accepted {
            status = "damping failed to reduce the residual".into();
            break;
        }
    }
    let mut u = vec![vec![0.0; nn + 1]; m];
    for i in 0..m {
        for j in 0..nn {
            u[i][j] = x[j * m + i];
        }
        u[i][nn] = boundary[i];
    }
    Ok(BvpSolution {
        n,
        radius,
        h,
        r,
        u,
        boundary: boundary.to_vec(),
        iterations,
        residual: norm,
        threshold: 1e-10 * (1.0 + fmax),
        converged,
        status,
    })
}

/// Centre value `s₀` whose shooting trajectory first vanishes at `radius`,
/// found by bisection in `ln s₀` on `[1e-6, 1e6]`.
pub fn shooting_center(f: &ScalarNonlin, n: u32, radius: f64) -> Result<f64> {
    let opts = ShootOptions { r_max: 1e3_f64.max(4.0 * radius), tol: 1e-12, ..Default::default() };
    let gap = |ls: f64| match shoot(f, n, ls.exp(), &opts) {
        Ok((_, out)) => out.first_zero().map_or(1.0, |z| (z / radius).ln()),
        Err(_) => f64::NAN,
    };
    roots::bisect(gap, (1e-6f64).ln(), (1e6f64).ln(), 1e-14, 200)
        .map(f64::exp)
        .ok_or_else(|| Error::Solver(format!("no centre value on [1e-6, 1e6] has its first zero at r = {radius}")))
}

/// Ground-state guess on the solver mesh from the shooting solution whose
/// first zero is `radius`.
pub fn shooting_guess(f: &ScalarNonlin, n: u32, radius: f64, intervals: usize) -> Result<Guess> {
    let s0 = shooting_center(f, n, radius)?;
    let r = grid::linear(0.0, radius, intervals + 1);
    let opts = ShootOptions { r_max: 1e3_f64.max(4.0 * radius), tol: 1e-12, ..Default::default() };
    let (prof, _) = shoot(f, n, s0, &opts)?;
    let r: Vec<f64> = r.into_iter().map(|x| x.min(prof.last_radius())).collect();
    let vals = resample(&prof, Source::Scalar(f), &r)?.u.swap_remove(0).into_iter().map(|x| x.max(0.0)).collect();
    Ok(Guess::Supplied { values: vec![vals] })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    #[test]
    fn torsion_is_exact() {
        let f = ScalarNonlin::parse("1 + 0*u", &BTreeMap::new()).unwrap();
        for n in [1, 3] {
            let s = solve_ball(Source::Scalar(&f), n, 2.0, &[0.0], &BallOptions::default()).unwrap();
            assert!(s.converged, "{}", s.status);
            for (r, u) in s.r.iter().zip(&s.u[0]) {
                let exact = (4.0 - r * r) / (2.0 * n as f64);
                assert!((u - exact).abs() < 1e-10);
            }
        }
    }
}
