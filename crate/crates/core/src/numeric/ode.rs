//! Dormand-Prince 5(4) integrator with error-per-unit-step control.
//!
//! The fifth-order solution is propagated (local extrapolation). A step of
//! size `h` is accepted when `max_i |err_i| / (tol (1 + |y_i|)) <= h`.

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

/// Right-hand side `y' = f(t, y)`.
pub trait Rhs {
    fn eval(&self, t: f64, y: &[f64], dy: &mut [f64]);
}

impl<F: Fn(f64, &[f64], &mut [f64])> Rhs for F {
    fn eval(&self, t: f64, y: &[f64], dy: &mut [f64]) {
        self(t, y, dy)
    }
}

/// Outcome of one attempted step.
#[derive(Debug, Clone)]
pub struct Trial {
    pub y: Vec<f64>,
    pub dy: Vec<f64>,
    /// Error norm relative to the per-unit-step budget; `<= 1` means accept.
    pub err: f64,
}

/// Stateful adaptive integrator.
pub struct Dopri5<R: Rhs> {
    rhs: R,
    pub t: f64,
    pub y: Vec<f64>,
    pub dy: Vec<f64>,
    pub h: f64,
    pub tol: f64,
    pub h_max: f64,
    pub h_min: f64,
    pub steps: usize,
    pub rejected: usize,
}

impl<R: Rhs> Dopri5<R> {
    pub fn new(rhs: R, t0: f64, y0: Vec<f64>, h0: f64, tol: f64) -> Self {
        let mut dy = vec![0.0; y0.len()];
        rhs.eval(t0, &y0, &mut dy);
        Dopri5 { rhs, t: t0, y: y0, dy, h: h0, tol, h_max: f64::INFINITY, h_min: 1e-14, steps: 0, rejected: 0 }
    }

    pub fn rhs(&self) -> &R {
        &self.rhs
    }

    /// Take a trial step of size `h` from the current state without committing.
    pub fn trial(&self, h: f64) -> Trial {
        let n = self.y.len();
        let (t, y, k1) = (self.t, &self.y, &self.dy);
        let mut tmp = vec![0.0; n];
        let mut k2 = vec![0.0; n];
        let mut k3 = vec![0.0; n];
        let mut k4 = vec![0.0; n];
        let mut k5 = vec![0.0; n];
        let mut k6 = vec![0.0; n];
        let mut k7 = vec![0.0; n];
        for i in 0..n {
            tmp[i] = y[i] + h * A21 * k1[i];
        }
        self.rhs.eval(t + C2 * h, &tmp, &mut k2);
        for i in 0..n {
            tmp[i] = y[i] + h * (A31 * k1[i] + A32 * k2[i]);
        }
        self.rhs.eval(t + C3 * h, &tmp, &mut k3);
        for i in 0..n {
            tmp[i] = y[i] + h * (A41 * k1[i] + A42 * k2[i] + A43 * k3[i]);
        }
        self.rhs.eval(t + C4 * h, &tmp, &mut k4);
        for i in 0..n {
            tmp[i] = y[i] + h * (A51 * k1[i] + A52 * k2[i] + A53 * k3[i] + A54 * k4[i]);
        }
        self.rhs.eval(t + C5 * h, &tmp, &mut k5);
        for i in 0..n {
            tmp[i] = y[i] + h * (A61 * k1[i] + A62 * k2[i] + A63 * k3[i] + A64 * k4[i] + A65 * k5[i]);
        }
        self.rhs.eval(t + h, &tmp, &mut k6);
        let mut y1 = vec![0.0; n];
        for i in 0..n {
            y1[i] = y[i] + h * (B1 * k1[i] + B3 * k3[i] + B4 * k4[i] + B5 * k5[i] + B6 * k6[i]);
        }
        self.rhs.eval(t + h, &y1, &mut k7);
        let mut err = 0.0f64;
        for i in 0..n {
            let e = h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
            let sc = self.tol * (1.0 + y[i].abs().max(y1[i].abs()));
            err = err.max(e.abs() / (sc * h.abs()));
        }
        if !err.is_finite() {
            err = f64::INFINITY;
        }
        Trial { y: y1, dy: k7, err }
    }

    /// Advance by one accepted adaptive step, never past `t_end`.
    /// Returns the step size used, or `None` when the step size underflows.
    pub fn step(&mut self, t_end: f64) -> Option<f64> {
        loop {
            let mut h = self.h.min(self.h_max);
            let last = self.t + h >= t_end;
            if last {
                h = t_end - self.t;
            }
            if h < self.h_min {
                return None;
            }
            let tr = self.trial(h);
            let fac = if tr.err == 0.0 { 5.0 } else { (0.9 * tr.err.powf(-0.25)).clamp(0.2, 5.0) };
            if tr.err <= 1.0 {
                self.t = if last { t_end } else { self.t + h };
                self.y = tr.y;
                self.dy = tr.dy;
                self.steps += 1;
                if !last || fac < 1.0 {
                    self.h = h * fac;
                }
                return Some(h);
            }
            self.rejected += 1;
            self.h = h * fac.min(1.0);
        }
    }

    /// Commit an externally computed trial of size `h`.
    pub fn commit(&mut self, h: f64, tr: Trial) {
        self.t += h;
        self.y = tr.y;
        self.dy = tr.dy;
        self.steps += 1;
    }
}
