//! Sample grids.

/// `n` geometrically spaced points from `a` to `b` inclusive (`a, b > 0`).
pub fn geometric(a: f64, b: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![a];
    }
    let (la, lb) = (a.ln(), b.ln());
    (0..n)
        .map(|i| {
            if i == 0 {
                a
            } else if i == n - 1 {
                b
            } else {
                (la + (lb - la) * i as f64 / (n - 1) as f64).exp()
            }
        })
        .collect()
}

/// `n` equally spaced points from `a` to `b` inclusive.
pub fn linear(a: f64, b: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![a];
    }
    (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect()
}

/// Merge extra points into a sorted grid, dropping duplicates and points
/// outside `[grid[0], grid[last]]`.
pub fn merge_sorted(grid: &[f64], extra: &[f64]) -> Vec<f64> {
    let (lo, hi) = (grid[0], grid[grid.len() - 1]);
    let mut v: Vec<f64> = grid.to_vec();
    v.extend(extra.iter().copied().filter(|x| *x > lo && *x < hi));
    v.sort_by(f64::total_cmp);
    v.dedup_by(|a, b| (*a - *b).abs() <= 1e-15 * b.abs());
    v
}

/// Least-squares slope and intercept of `y` on `x`.
pub fn ls_slope(x: &[f64], y: &[f64]) -> (f64, f64) {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    for (a, b) in x.iter().zip(y) {
        sxy += (a - mx) * (b - my);
        sxx += (a - mx) * (a - mx);
    }
    let slope = sxy / sxx;
    (slope, my - slope * mx)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn endpoints_exact() {
        let g = geometric(1e-6, 1e6, 13);
        assert_eq!(g[0], 1e-6);
        assert_eq!(g[12], 1e6);
        assert!((g[6] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn merge_keeps_order() {
        let m = merge_sorted(&[1.0, 2.0, 3.0], &[2.5, 2.0, 7.0]);
        assert_eq!(m, vec![1.0, 2.0, 2.5, 3.0]);
    }

    #[test]
    fn slope_of_line() {
        let (s, c) = ls_slope(&[0.0, 1.0, 2.0], &[1.0, 3.0, 5.0]);
        assert!((s - 2.0).abs() < 1e-15 && (c - 1.0).abs() < 1e-15);
    }
}
