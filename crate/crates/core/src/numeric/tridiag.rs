//! Block tridiagonal solver for block sizes 1 and 2.

/// Dense `m × m` block stored row-major (`m <= 2`).
pub type Block = [f64; 4];

fn inv(m: usize, a: &Block) -> Option<Block> {
    if m == 1 {
        if a[0] == 0.0 || !a[0].is_finite() {
            return None;
        }
        return Some([1.0 / a[0], 0.0, 0.0, 0.0]);
    }
    let det = a[0] * a[3] - a[1] * a[2];
    let scale = a.iter().fold(0.0f64, |s, v| s.max(v.abs()));
    if !det.is_finite() || det.abs() <= 1e-300 || det.abs() <= 1e-15 * scale * scale {
        return None;
    }
    Some([a[3] / det, -a[1] / det, -a[2] / det, a[0] / det])
}

fn mul(m: usize, a: &Block, b: &Block) -> Block {
    let mut c = [0.0; 4];
    for i in 0..m {
        for j in 0..m {
            let mut s = 0.0;
            for k in 0..m {
                s += a[i * 2 + k] * b[k * 2 + j];
            }
            c[i * 2 + j] = s;
        }
    }
    c
}

fn mulv(m: usize, a: &Block, x: &[f64]) -> [f64; 2] {
    let mut y = [0.0; 2];
    for i in 0..m {
        for k in 0..m {
            y[i] += a[i * 2 + k] * x[k];
        }
    }
    y
}

/// Solve `lower[i] x[i-1] + diag[i] x[i] + upper[i] x[i+1] = rhs[i]` with
/// blocks of size `m`. `rhs` is laid out node-major with `m` entries per node.
/// Returns `None` on a singular pivot.
pub fn solve(m: usize, lower: &[Block], diag: &[Block], upper: &[Block], rhs: &[f64]) -> Option<Vec<f64>> {
    let n = diag.len();
    let mut cp: Vec<Block> = vec![[0.0; 4]; n];
    let mut dp: Vec<[f64; 2]> = vec![[0.0; 2]; n];
    let mut piv = diag[0];
    for i in 0..n {
        if i > 0 {
            let lc = mul(m, &lower[i], &cp[i - 1]);
            piv = diag[i];
            for k in 0..4 {
                piv[k] -= lc[k];
            }
        }
        let pinv = inv(m, &piv)?;
        if i + 1 < n {
            cp[i] = mul(m, &pinv, &upper[i]);
        }
        let mut r = [0.0; 2];
        r[..m].copy_from_slice(&rhs[i * m..i * m + m]);
        if i > 0 {
            let ld = mulv(m, &lower[i], &dp[i - 1]);
            for k in 0..m {
                r[k] -= ld[k];
            }
        }
        dp[i] = mulv(m, &pinv, &r);
    }
    let mut x = vec![0.0; n * m];
    for i in (0..n).rev() {
        let mut xi = dp[i];
        if i + 1 < n {
            let next = [x[(i + 1) * m], if m == 2 { x[(i + 1) * m + 1] } else { 0.0 }];
            let c = mulv(m, &cp[i], &next);
            for k in 0..m {
                xi[k] -= c[k];
            }
        }
        x[i * m..i * m + m].copy_from_slice(&xi[..m]);
    }
    Some(x)
}
