use std::collections::BTreeMap;

use ellab_core::nonlin::{presets, End, ScalarNonlin};
use ellab_core::rescaling::*;
use proptest::prelude::*;

fn f_of(text: &str, kv: &[(&str, f64)]) -> ScalarNonlin {
    let p: BTreeMap<String, f64> = kv.iter().map(|(k, v)| (k.to_string(), *v)).collect();
    ScalarNonlin::parse(text, &p).unwrap()
}

const DECADES: [f64; 4] = [1e3, 1e6, 1e9, 1e12];

#[test]
fn pure_powers_have_no_rescaling_error() {
    for p in [1.5, 2.0, 3.7] {
        let f = f_of("u^p", &[("p", p)]);
        for end in [End::Infinity, End::Zero] {
            let lams: Vec<f64> = DECADES.iter().map(|l| if end == End::Zero { 1.0 / l } else { *l }).collect();
            let t = uniform_convergence_check(&f, None, end, &lams, 2.0).unwrap();
            assert_eq!(t.index, p);
            assert_eq!(t.points, 1000);
            for r in &t.rows {
                assert!(r.error <= 1e-12, "p = {p}, lambda = {}: {}", r.lambda, r.error);
            }
        }
    }
}

#[test]
fn log_perturbed_square_converges_slowly() {
    let f = f_of("u^2*log(2+u)", &[]);
    let t = uniform_convergence_check(&f, Some(2.0), End::Infinity, &[1e12, 1e3, 1e9, 1e6], 2.0).unwrap();
    let lams: Vec<f64> = t.rows.iter().map(|r| r.lambda).collect();
    assert_eq!(lams, DECADES.to_vec());
    let e = |lam: f64| t.rows.iter().find(|r| r.lambda == lam).unwrap().error;
    assert!(e(1e6) <= 0.25, "{}", e(1e6));
    assert!(e(1e12) <= 0.12, "{}", e(1e12));
    assert!(t.strictly_decreasing && t.monotone);
    // Direct evaluation in linear space on the same grid.
    for r in &t.rows {
        let lam = r.lambda;
        let want = (0..1000)
            .map(|i| 2.0 * i as f64 / 999.0)
            .map(|s| (s * s * (2.0 + lam * s).ln() / (2.0 + lam).ln() - s * s).abs())
            .fold(0.0, f64::max);
        assert!((r.error - want).abs() <= 1e-12, "lambda = {lam}: {} vs {want}", r.error);
        // Leading-order size of the error.
        let approx = 4.0 * (2.0 + lam * 2.0).ln() / (2.0 + lam).ln() - 4.0;
        assert!((r.error - approx).abs() <= 1e-9);
    }
}

#[test]
fn two_potential_system_converges_at_zero() {
    let sys = presets::find("cubic-quintic").unwrap().system(&BTreeMap::new()).unwrap();
    let t = uniform_convergence_check_system(&sys, End::Zero, &[1e-1, 1e-2, 1e-3, 1e-4], 2.0).unwrap();
    let lams: Vec<f64> = t.rows.iter().map(|r| r.lambda).collect();
    assert_eq!(lams, vec![1e-1, 1e-2, 1e-3, 1e-4]);
    assert!(t.strictly_decreasing, "{:?}", t.rows);
    assert!(t.rows.last().unwrap().error < 1e-3);
    assert_eq!(t.index, 3.0);
}

#[test]
fn constant_field_below_threshold_has_no_point() {
    let k = 1.0;
    let field = DiscreteField::unit_disk(41, |_| 1.0).unwrap();
    let dmin = field.dist.iter().copied().fold(f64::INFINITY, f64::min);
    let dmax = field.dist.iter().copied().fold(0.0, f64::max);
    assert!(dmax <= 2.0 * k);
    match doubling_point(&field, k).unwrap() {
        DoublingOutcome::None { slack, min_slack } => {
            assert_eq!(slack.len(), field.len());
            assert!(slack.iter().all(|&s| s >= 0.0));
            assert!((min_slack - (2.0 / dmax - 1.0)).abs() <= 1e-12);
        }
        other => panic!("{other:?}"),
    }
    assert!(dmin > 0.0);
}

/// Exhaustive oracle for (a)-(c).
fn brute_force(field: &DiscreteField, k: f64, start: usize, x: usize) -> bool {
    let mx = field.m[x];
    let a = mx >= field.m[start];
    let b = mx * field.dist[x] > 2.0 * k;
    let c = (0..field.len()).all(|z| {
        let d2: f64 = field.points[z].iter().zip(&field.points[x]).map(|(p, q)| (p - q).powi(2)).sum();
        d2.sqrt() > k / mx || field.m[z] <= 2.0 * mx
    });
    a && b && c
}

#[test]
fn single_peak_field_returns_a_doubling_point() {
    let field = DiscreteField::single_peak(81, 400.0, 0.05, [0.2, -0.1]).unwrap();
    for k in [0.5, 2.0, 10.0] {
        match doubling_point(&field, k).unwrap() {
            DoublingOutcome::Found { index, start, path, checks, .. } => {
                assert!(checks.all());
                assert!(brute_force(&field, k, start, index));
                assert_eq!(path[0], start);
                assert_eq!(*path.last().unwrap(), index);
                for w in path.windows(2) {
                    assert!(field.m[w[1]] > 2.0 * field.m[w[0]]);
                }
            }
            other => panic!("k = {k}: {other:?}"),
        }
    }
}

#[test]
fn constructor_rejects_bad_fields() {
    assert!(DiscreteField::new(vec![vec![0.0]], vec![0.0], vec![1.0]).is_err());
    assert!(DiscreteField::new(vec![vec![0.0]], vec![1.0], vec![f64::NAN]).is_err());
    assert!(DiscreteField::new(vec![vec![0.0], vec![0.0, 1.0]], vec![1.0, 1.0], vec![1.0, 1.0]).is_err());
    assert!(doubling_point(&DiscreteField::unit_disk(5, |_| 1.0).unwrap(), 0.0).is_err());
}

#[test]
fn critical_limit_table() {
    let t = critical_limit_check(3, &[10, 30, 100, 300]).unwrap();
    assert!(t.residual_strictly_decreasing);
    assert!((t.bubble_rate - 1.0 / 3.0).abs() < 1e-15);
    for r in &t.rows {
        assert_eq!(r.v_at_zero, 1.0);
    }
    for w in t.rows.windows(2) {
        assert!(w[1].residual < w[0].residual);
        assert!(w[1].bubble_deviation < w[0].bubble_deviation);
        assert!((w[1].fit_rate - 1.0 / 3.0).abs() < (w[0].fit_rate - 1.0 / 3.0).abs());
    }
    // Independent oracle: v_k from its defining formula, Laplacian by
    // centred differences.
    for r in &t.rows {
        let (p, m) = (r.p, r.max);
        let xi = 1.0 / (r.k as f64 * p.sqrt() * (p - 1.0));
        let v = |y: f64| (1.0 + m.powf(1.0 - r.q) * y * y / (xi * xi)).powf(-1.0 / (p - 1.0));
        let h = 1e-4;
        let mut worst = 0.0f64;
        for i in 1..=100 {
            let y = 0.1 * i as f64;
            let lap = (v(y + h) - 2.0 * v(y) + v(y - h)) / (h * h) + 2.0 / y * (v(y + h) - v(y - h)) / (2.0 * h);
            worst = worst.max((-lap - v(y).powi(5)).abs());
        }
        assert!(worst <= r.residual + 1e-6, "k = {}: {worst} vs {}", r.k, r.residual);
        assert!((v(0.0) - 1.0).abs() == 0.0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn doubling_output_reverifies(
        amp in 1.0f64..2000.0,
        width in 0.01f64..0.5,
        cx in -0.6f64..0.6,
        cy in -0.6f64..0.6,
        k in 0.1f64..5.0,
    ) {
        let field = DiscreteField::single_peak(41, amp, width, [cx, cy]).unwrap();
        let mmax = field.m.iter().copied().fold(0.0, f64::max);
        let mmin = field.m.iter().copied().fold(f64::INFINITY, f64::min);
        match doubling_point(&field, k).unwrap() {
            DoublingOutcome::Found { index, start, path, .. } => {
                prop_assert!(brute_force(&field, k, start, index));
                prop_assert!(check_point(&field, k, start, index).all());
                prop_assert!(((path.len() - 1) as f64) <= (mmax / mmin).log2());
            }
            DoublingOutcome::None { slack, .. } => {
                prop_assert!((0..field.len()).all(|i| field.m[i] <= 2.0 * k / field.dist[i]));
                prop_assert!(slack.iter().all(|&s| s >= 0.0));
            }
            DoublingOutcome::Stalled { .. } => prop_assert!(false, "dist is 1-Lipschitz here"),
        }
    }

    #[test]
    fn rescaling_error_is_nonnegative(p in 1.1f64..4.0, b in 0.1f64..2.0, lam in 10.0f64..1e9) {
        let f = f_of("u^p*log(2+u)^b", &[("p", p), ("b", b)]);
        let t = uniform_convergence_check(&f, Some(p), End::Infinity, &[lam], 2.0).unwrap();
        prop_assert!(t.rows[0].error >= 0.0 && t.rows[0].error.is_finite());
    }
}
