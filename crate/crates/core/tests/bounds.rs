use std::collections::BTreeMap;

use ellab_core::bounds::*;
use ellab_core::criteria::Geometry;
use ellab_core::nonlin::{parse_expr, ScalarNonlin, SystemNonlin};
use ellab_core::radial::{resample, shoot, ShootOptions, Source};
use proptest::prelude::*;

fn f_of(text: &str, kv: &[(&str, f64)]) -> ScalarNonlin {
    let p: BTreeMap<String, f64> = kv.iter().map(|(k, v)| (k.to_string(), *v)).collect();
    ScalarNonlin::parse(text, &p).unwrap()
}

fn ground_state(f: &ScalarNonlin, n: u32, radius: f64, intervals: usize) -> BvpSolution {
    let guess = shooting_guess(f, n, radius, intervals).unwrap();
    let s = solve_ball(Source::Scalar(f), n, radius, &[0.0], &BallOptions { intervals, guess, ..Default::default() })
        .unwrap();
    assert!(s.converged, "R = {radius}: {}", s.status);
    s
}

/// Discrete residual recomputed from the stored nodal values.
fn back_substitute(sol: &BvpSolution, f: impl Fn(&[f64]) -> Vec<f64>, d: &[f64]) -> (f64, f64) {
    let (h, nf) = (sol.h, sol.n as f64);
    let m = sol.u.len();
    let (mut res, mut fmax) = (0.0f64, 0.0f64);
    for j in 0..sol.r.len() - 1 {
        let uj: Vec<f64> = (0..m).map(|i| sol.u[i][j]).collect();
        let fj = f(&uj);
        for i in 0..m {
            let c = &sol.u[i];
            let lap = if j == 0 {
                2.0 * nf * (c[1] - c[0]) / (h * h)
            } else {
                (c[j + 1] - 2.0 * c[j] + c[j - 1]) / (h * h) + (nf - 1.0) * (c[j + 1] - c[j - 1]) / (2.0 * h * sol.r[j])
            };
            res = res.max((-d[i] * lap - fj[i]).abs());
            fmax = fmax.max(fj[i].abs());
        }
    }
    (res, fmax)
}

#[test]
fn torsion_matches_the_quadratic() {
    let f = f_of("1 + 0*u", &[]);
    for (n, radius) in [(2, 1.0), (3, 2.5), (5, 0.3)] {
        let s = solve_ball(Source::Scalar(&f), n, radius, &[0.0], &BallOptions::default()).unwrap();
        assert!(s.converged);
        for (r, u) in s.r.iter().zip(&s.u[0]) {
            let exact = (radius * radius - r * r) / (2.0 * n as f64);
            assert!((u - exact).abs() <= 1e-12 * (1.0 + radius * radius), "n = {n}, r = {r}");
        }
        assert_eq!(*s.u[0].last().unwrap(), 0.0);
    }
}

#[test]
fn cubic_ground_state_converges_at_second_order() {
    let f = f_of("u^3", &[]);
    let centers: Vec<f64> = [128, 256, 512]
        .iter()
        .map(|&k| {
            let s = solve_ball(
                Source::Scalar(&f),
                3,
                1.0,
                &[0.0],
                &BallOptions { intervals: k, guess: Guess::Bump { amplitude: 5.0, width: 1.0 }, ..Default::default() },
            )
            .unwrap();
            assert!(s.converged, "{}", s.status);
            assert!(s.u[0][..k].iter().all(|&u| u > 0.0));
            let (res, fmax) = back_substitute(&s, |u| vec![u[0].powi(3)], &[1.0]);
            assert!(res <= 1e-10 * (1.0 + fmax));
            s.u[0][0]
        })
        .collect();
    let order = ((centers[0] - centers[1]) / (centers[1] - centers[2])).log2();
    assert!((order - 2.0).abs() < 0.1, "observed order {order}, centres {centers:?}");
}

#[test]
fn finite_differences_agree_with_shooting() {
    let f = f_of("u^3", &[]);
    let (prof, out) = shoot(&f, 3, 1.0, &ShootOptions::default()).unwrap();
    let radius = out.first_zero().unwrap();
    let k = 512;
    let r: Vec<f64> = (0..=k).map(|j| (radius * j as f64 / k as f64).min(prof.last_radius())).collect();
    let exact = resample(&prof, Source::Scalar(&f), &r).unwrap();
    let guess = Guess::Supplied { values: vec![exact.u[0].iter().map(|u| u.max(0.0)).collect()] };
    let s =
        solve_ball(Source::Scalar(&f), 3, radius, &[0.0], &BallOptions { intervals: k, guess, ..Default::default() })
            .unwrap();
    assert!(s.converged, "{}", s.status);
    let err = s.u[0].iter().zip(&exact.u[0]).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    assert!((s.u[0][0] - 1.0).abs() <= 1e-4);
    assert!(err <= 1e-4, "max-norm gap {err}");
}

#[test]
fn lane_emden_pair_is_positive_and_back_substitutes() {
    let sys = SystemNonlin::lane_emden(
        parse_expr("v^2", &BTreeMap::new()).unwrap(),
        parse_expr("u^3", &BTreeMap::new()).unwrap(),
    )
    .unwrap();
    let s = solve_ball(
        Source::System(&sys),
        3,
        1.0,
        &[0.0, 0.0],
        &BallOptions { intervals: 256, guess: Guess::Bump { amplitude: 10.0, width: 1.0 }, ..Default::default() },
    )
    .unwrap();
    assert!(s.converged, "{}", s.status);
    for c in &s.u {
        assert!(c[..c.len() - 1].iter().all(|&x| x > 0.0));
    }
    let (res, fmax) = back_substitute(&s, |u| vec![u[1] * u[1], u[0].powi(3)], &[1.0, 1.0]);
    assert!(res <= 1e-10 * (1.0 + fmax), "residual {res}");
    assert_eq!(s.u[0].last(), Some(&0.0));
}

#[test]
fn non_convergence_is_reported_not_raised() {
    let f = f_of("u^3", &[]);
    let s = solve_ball(
        Source::Scalar(&f),
        3,
        1.0,
        &[0.0],
        &BallOptions { max_iter: 1, guess: Guess::Bump { amplitude: 5.0, width: 1.0 }, ..Default::default() },
    )
    .unwrap();
    assert!(!s.converged);
    assert_eq!(s.iterations, 1);
    assert!(
        solve_ball(Source::Scalar(&f), 3, 1.0, &[0.0], &BallOptions { intervals: 32, ..Default::default() }).is_err()
    );
}

#[test]
fn pure_power_bound_is_scale_invariant() {
    for p in [2.0, 3.0] {
        let f = f_of("u^p", &[("p", p)]);
        let sols: Vec<BvpSolution> = [1.0, 2.0, 4.0, 8.0].iter().map(|&r| ground_state(&f, 3, r, 256)).collect();
        let rep = bound_report(&sols, BoundMode::Scalar, Source::Scalar(&f), None).unwrap();
        assert!(rep.warnings.is_empty(), "{:?}", rep.warnings);
        let base = rep.domains[0].sup;
        assert!(base > 0.0);
        for d in &rep.domains {
            assert!((d.sup / base - 1.0).abs() <= 1e-6, "p = {p}, R = {}: {} vs {base}", d.radius, d.sup);
        }
        assert!(rep.ratio - 1.0 <= 1e-6);
    }
}

#[test]
fn log_perturbed_bound_is_stable() {
    let f = f_of("u^2*log(2+u)^0.5", &[]);
    let sols: Vec<BvpSolution> = [1.0, 2.0, 4.0, 8.0].iter().map(|&r| ground_state(&f, 3, r, 256)).collect();
    let rep = bound_report(&sols, BoundMode::Scalar, Source::Scalar(&f), None).unwrap();
    assert!(rep.ratio <= 3.0, "ratio {}", rep.ratio);
    // Stored sup reproduces from the nodal values.
    for (s, d) in sols.iter().zip(&rep.domains) {
        let best = (0..s.r.len() - 1)
            .filter(|&j| s.u[0][j] > 0.0)
            .map(|j| f.value(s.u[0][j]) * (s.radius - s.r[j]).powi(2) / s.u[0][j])
            .fold(0.0, f64::max);
        assert_eq!(best, d.sup);
    }
}

#[test]
fn bound_sup_is_stable_under_refinement() {
    for (text, radius) in [("u^3", 2.0), ("u^2", 1.0), ("u^2*log(2+u)^0.5", 4.0)] {
        let f = f_of(text, &[]);
        let coarse = ground_state(&f, 3, radius, 256);
        let fine = ground_state(&f, 3, radius, 512);
        // Second-order scheme: the coarse error is 4/3 of the coarse-fine gap.
        let gap = (0..=256).map(|j| (coarse.u[0][j] - fine.u[0][2 * j]).abs()).fold(0.0, f64::max);
        let err = 4.0 / 3.0 * gap / fine.max_abs();
        let a = domain_sup(&coarse, BoundMode::Scalar, Source::Scalar(&f), None).unwrap().sup;
        let b = domain_sup(&fine, BoundMode::Scalar, Source::Scalar(&f), None).unwrap().sup;
        assert!(((a - b) / b).abs() <= 2.0 * err, "{text}: sup {a} vs {b}, solution error {err}");
    }
}

#[test]
fn zero_solution_has_zero_bound() {
    let f = f_of("u^3", &[]);
    let s = solve_ball(Source::Scalar(&f), 3, 1.0, &[0.0], &BallOptions::default()).unwrap();
    assert!(s.converged);
    assert_eq!(s.max_abs(), 0.0);
    let rep = bound_report(&[s], BoundMode::Scalar, Source::Scalar(&f), None).unwrap();
    assert_eq!(rep.domains[0].sup, 0.0);
    let sys = SystemNonlin::lane_emden(
        parse_expr("v^2", &BTreeMap::new()).unwrap(),
        parse_expr("u^3", &BTreeMap::new()).unwrap(),
    )
    .unwrap();
    let z = solve_ball(Source::System(&sys), 3, 1.0, &[0.0, 0.0], &BallOptions::default()).unwrap();
    let rep = bound_report(&[z], BoundMode::System { threshold: 1.0 }, Source::System(&sys), None).unwrap();
    assert_eq!(rep.domains[0].sup, 0.0);
    assert!(rep.warnings.is_empty());
}

#[test]
fn h_calculus_pure_powers() {
    let hc = HCalculus::new(&f_of("u^2", &[]), &f_of("u^3", &[])).unwrap();
    for u in [0.5, 2.0, 10.0, 1e3, 1e6] {
        let comp = hc.ln_compose(0, 1, f64::ln(u)).exp();
        assert!((comp / u.powf(4.0 / 3.0) - 1.0).abs() <= 1e-9, "u = {u}");
        let q = hc.ln_bound_quantity(0, f64::ln(u)).exp();
        assert!((q / u.powf(5.0 / 3.0) - 1.0).abs() <= 1e-9);
    }
    for t in [1e-2, 1.0, 37.0, 1e8, 1e18] {
        assert!((hc.phi(t) / t.powf(5.0 / 12.0) - 1.0).abs() <= 1e-9, "t = {t}");
    }
    let e = bound_exponents(&hc, ASYMPTOTIC_WINDOW.0, ASYMPTOTIC_WINDOW.1, 61);
    assert!((e.power[0] - 5.0 / 3.0).abs() <= 1e-9, "{e:?}");
    assert!((e.power[1] - 5.0 / 4.0).abs() <= 1e-9, "{e:?}");
    assert!(e.log[0].abs() <= 1e-9 && e.log[1].abs() <= 1e-9);
}

#[test]
fn h_calculus_invariants() {
    let cases = [
        (f_of("u^2", &[]), f_of("u^3", &[])),
        (
            f_of("u^p*log(K+u)^a", &[("p", 2.0), ("K", 1.0), ("a", 1.0)]),
            f_of("u^q*log(K+u)^b", &[("q", 3.0), ("K", 1.0), ("b", 2.0)]),
        ),
        (f_of("u^2 - u", &[]), f_of("u^1.5", &[])),
    ];
    for (f1, f2) in &cases {
        let hc = HCalculus::new(f1, f2).unwrap();
        for i in 0..2 {
            let lo = hc.h(i, hc.s0);
            let hi = hc.h(i, 1e6);
            for t in ellab_core::numeric::grid::geometric(lo.max(1e-300), hi, 50) {
                assert!((hc.h(i, hc.inv(i, t)) / t - 1.0).abs() <= 1e-8, "i = {i}, t = {t}");
            }
        }
        let ts = ellab_core::numeric::grid::geometric(hc.a, 1e6, 200);
        for w in ts.windows(2) {
            assert!(hc.phi(w[1]) > hc.phi(w[0]), "phi not increasing at {}", w[0]);
        }
        assert!(hc.a >= 2.0 * hc.s0);
        for (t1, t2) in [(1.0, 1.0), (10.0, 0.1), (1e4, 3.0)] {
            let n = hc.big_n(t1, t2);
            assert!(n >= hc.a && n >= hc.h(0, t2) && n >= hc.h(1, t1));
        }
    }
}

#[test]
fn h_calculus_log_exponents() {
    for (p, q, a, b) in [(2.0, 3.0, 1.0, 2.0), (3.0, 2.0, 0.5, 0.0), (1.5, 4.0, 2.0, 1.0)] {
        let f1 = f_of("u^p*log(K+u)^a", &[("p", p), ("K", 1.0), ("a", a)]);
        let f2 = f_of("u^q*log(K+u)^b", &[("q", q), ("K", 1.0), ("b", b)]);
        let hc = HCalculus::new(&f1, &f2).unwrap();
        let e = bound_exponents(&hc, ASYMPTOTIC_WINDOW.0, ASYMPTOTIC_WINDOW.1, 61);
        let (k, l) = ((b * p + a) / (p + 1.0), (a * q + b) / (q + 1.0));
        assert!((e.log[0] - k).abs() <= 1e-2, "(p,q,a,b) = {:?}: k {} vs {k}", (p, q, a, b), e.log[0]);
        assert!((e.log[1] - l).abs() <= 1e-2, "(p,q,a,b) = {:?}: l {} vs {l}", (p, q, a, b), e.log[1]);
    }
}

#[test]
fn h_calculus_rejects_decreasing_pairs() {
    assert!(HCalculus::new(&f_of("u^(-2)", &[]), &f_of("u^3", &[])).is_err());
}

#[test]
fn decay_scan_zero_boundary_gives_zero() {
    let f = f_of("u^2", &[]);
    let rows = decay_scan(&f, 3, 1.0, 0.0, &[2.0, 16.0, 4.0, 8.0], 128).unwrap();
    let radii: Vec<f64> = rows.iter().map(|r| r.radius).collect();
    assert_eq!(radii, vec![16.0, 8.0, 4.0, 2.0]);
    for r in &rows {
        assert_eq!(r.center, 0.0);
        assert_eq!(r.eta, 0.0);
        assert!(r.warning.is_none());
    }
}

#[test]
fn decay_scan_small_boundary_tends_to_the_lift() {
    let f = f_of("u^2", &[]);
    let mut prev = f64::INFINITY;
    for b in [1e-2, 1e-3, 1e-4] {
        let rows = decay_scan(&f, 3, 1.0, b, &[1.0], 128).unwrap();
        let gap = rows[0].center / b - 1.0;
        assert!(gap > 0.0 && gap < prev, "b = {b}: gap {gap}");
        prev = gap;
    }
    assert!(prev < 1e-4);
}

#[test]
fn decay_proxy_is_nonincreasing_in_radius() {
    let f = f_of("u^2", &[]);
    let rows = decay_scan(&f, 3, 1.0, 0.5, &[2.0, 4.0, 8.0, 16.0], 128).unwrap();
    // Rows are in decreasing R, so the proxy must be nondecreasing along them.
    for w in rows.windows(2) {
        assert!(w[1].eta >= w[0].eta, "{rows:?}");
    }
    for r in rows.iter().filter(|r| r.converged) {
        // Positive source: the solution stays above its boundary value.
        assert!(r.center >= 0.5);
    }
}

#[test]
fn counterexample_power_profile() {
    let c = proportional_counterexample(0.4, 0.4, 1.0, Geometry::Whole).unwrap();
    match c.profile {
        CounterProfile::Power { c: coef, a } => {
            assert!((a - 10.0).abs() <= 1e-12);
            assert!((coef / (1.0f64 / 90.0).powi(5) - 1.0).abs() <= 1e-12);
        }
        other => panic!("{other:?}"),
    }
    assert!(c.residual <= 1e-8, "{}", c.residual);
    assert_eq!(c.at_origin, 0.0);
}

#[test]
fn counterexample_linear_growth_cases() {
    let w = proportional_counterexample(0.5, 0.5, 2.0, Geometry::Whole).unwrap();
    assert_eq!(w.profile, CounterProfile::Cosh { rate: 2f64.sqrt() });
    assert!(w.residual <= 1e-14, "{}", w.residual);
    assert_eq!(w.at_origin, 1.0);
    let h = proportional_counterexample(0.3, 0.7, 2.0, Geometry::Half).unwrap();
    assert!(matches!(h.profile, CounterProfile::Sinh { .. }));
    assert!(h.residual <= 1e-14, "{}", h.residual);
    assert_eq!(h.at_origin, 0.0);
    assert!(proportional_counterexample(0.6, 0.6, 1.0, Geometry::Whole).is_err());
    assert!(proportional_counterexample(0.5, 0.4, 1.0, Geometry::Whole).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn counterexamples_solve_the_reduced_equation(p in 0.05f64..0.5, frac in 0.0f64..1.0, lambda in 0.1f64..5.0) {
        let q = p + frac * (1.0 - 2.0 * p);
        let c = proportional_counterexample(p, q, lambda, Geometry::Whole).unwrap();
        prop_assert!(c.residual <= 1e-8, "residual {}", c.residual);
    }

    #[test]
    fn h_inverse_round_trips(p in 1.05f64..4.0, q in 1.05f64..4.0, lt in -5.0f64..30.0) {
        let hc = HCalculus::new(&f_of("u^p", &[("p", p)]), &f_of("u^q", &[("q", q)])).unwrap();
        let t = lt.exp();
        for i in 0..2 {
            prop_assert!((hc.h(i, hc.inv(i, t)) / t - 1.0).abs() <= 1e-8);
        }
    }

    #[test]
    fn torsion_scales_with_radius(radius in 0.1f64..10.0, n in 1u32..6) {
        let f = f_of("1 + 0*u", &[]);
        let s = solve_ball(Source::Scalar(&f), n, radius, &[0.0], &BallOptions { intervals: 64, ..Default::default() }).unwrap();
        prop_assert!(s.converged);
        let want = radius * radius / (2.0 * n as f64);
        prop_assert!((s.u[0][0] - want).abs() <= 1e-10 * (1.0 + want));
    }
}
