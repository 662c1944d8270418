use std::collections::BTreeMap;

use ellab_core::criteria::{benchmark_thresholds, exponents, Geometry, ScanGrid};
use ellab_core::nonlin::{presets, ScalarNonlin};
use ellab_core::radial::{self, ClosedForm, ShootOptions, ShootOutcome, Source};

use crate::args::{FormArg, NonlinArgs};
use crate::json::to_node;
use crate::report::{yes_no, CliError, CliResult, Context, Report};

#[allow(clippy::too_many_arguments)]
pub fn shoot(
    ctx: &mut Context,
    nonlin: &NonlinArgs,
    n: u32,
    s0: &str,
    rmax: &str,
    tol: &str,
    blowup: &str,
    past_zero: bool,
) -> CliResult<Report> {
    let mut rep = Report::new("shoot");
    let f = ctx.scalar(nonlin, &mut rep)?;
    let s0 = ctx.num(s0)?;
    let opts = ShootOptions {
        r_max: ctx.num(rmax)?,
        tol: ctx.num(tol)?,
        blowup_factor: ctx.num(blowup)?,
        past_zero,
        ..Default::default()
    };
    rep.input("n", n);
    rep.input("s0", s0);
    rep.input("options", to_node(&opts));
    let (prof, out) = radial::shoot(&f, n, s0, &opts)?;
    rep.verdict("outcome", out.name());
    rep.value("outcome", to_node(&out));
    rep.value("points", prof.len());
    rep.value("last_radius", prof.last_radius());
    rep.value("u_last", *prof.u[0].last().unwrap_or(&f64::NAN));
    if matches!(out, ShootOutcome::Inconclusive { .. }) {
        rep.failed = true;
    }
    ctx.profile(&mut rep, "profile.csv", &prof)?;
    Ok(rep)
}

fn params(kv: &[(&str, f64)]) -> BTreeMap<String, f64> {
    kv.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

#[allow(clippy::too_many_arguments)]
pub fn verify(
    ctx: &mut Context,
    form: FormArg,
    n: u32,
    p: Option<&str>,
    k: Option<u32>,
    nonlin: &NonlinArgs,
    rmin: &str,
    rmax: &str,
    points: usize,
    tol: &str,
) -> CliResult<Report> {
    let mut rep = Report::new("verify");
    rep.input("n", n);
    let (cand, f): (ClosedForm, ScalarNonlin) = match form {
        FormArg::Benchmark => {
            let p = ctx.num(p.ok_or_else(|| CliError::Usage("--form benchmark needs --p".into()))?)?;
            let k0 = benchmark_thresholds(n, p)?.k0;
            rep.input("form", "benchmark");
            rep.input("p", p);
            rep.value("K", k0);
            let f = presets::find("benchmark")?.scalar(&params(&[("K", k0), ("p", p)]))?;
            let cand = ClosedForm::benchmark(p);
            rep.value("f_at_center", f.value(1.0));
            (cand, f)
        }
        FormArg::Bubble => {
            if n < 3 {
                return Err(CliError::Usage("--form bubble needs n >= 3".into()));
            }
            rep.input("form", "bubble");
            let ps = exponents(n, Geometry::Whole).p_sobolev;
            (ClosedForm::critical_bubble(n), ScalarNonlin::parse("u^p", &params(&[("p", ps)]))?)
        }
        FormArg::Uk => {
            let k = k.ok_or_else(|| CliError::Usage("--form uk needs --k".into()))?;
            rep.input("form", "uk");
            rep.input("k", k);
            let fam = radial::uk_family(n, k)?;
            rep.value("family", to_node(&fam));
            (fam.profile, fam.nonlinearity()?)
        }
        FormArg::Zero => {
            rep.input("form", "zero");
            (ClosedForm::Zero, ctx.scalar(nonlin, &mut rep)?)
        }
    };
    let (lo, hi, tol) = (ctx.num(rmin)?, ctx.num(rmax)?, ctx.num(tol)?);
    if !(lo >= 0.0 && hi > lo) || points < 2 {
        return Err(CliError::Usage("need 0 <= rmin < rmax and at least 2 points".into()));
    }
    rep.input("r_range", vec![lo, hi]);
    rep.input("points", points);
    rep.input("tol", tol);
    rep.value("candidate", to_node(&cand));
    rep.value("neg_laplacian_at_0", cand.neg_laplacian(n, 0.0));
    rep.value("u_at_0", cand.eval(0.0).0);
    let res = radial::verify_closed_form(&cand, &f, n, lo, hi, points);
    rep.value("residual", to_node(&res));
    let ok = res.max <= tol;
    rep.verdict("residual <= tol", yes_no(ok));
    rep.failed = !ok;
    ctx.profile(&mut rep, "profile.csv", &cand.profile(n, hi, points))?;
    Ok(rep)
}

pub fn pohozaev(
    ctx: &mut Context,
    nonlin: &NonlinArgs,
    n: u32,
    s0: Option<&str>,
    radius: Option<&str>,
    tol: &str,
    residual_tol: &str,
) -> CliResult<Report> {
    let mut rep = Report::new("pohozaev");
    let f = ctx.scalar(nonlin, &mut rep)?;
    rep.input("n", n);
    if n >= 3 {
        let sg = ScanGrid::default();
        let scan = radial::psi_scan(&f, n, &sg)?;
        rep.input("psi_scan", to_node(&sg.meta()));
        rep.value("psi_nonnegative_up_to", scan.s0);
        rep.verdict("psi >= 0 on the scan range", yes_no(scan.reached_end));
        let rows: Vec<Vec<f64>> = scan.samples.iter().map(|&(s, p)| vec![s, p]).collect();
        ctx.table(&mut rep, "psi.csv", &["s", "psi"], &rows)?;
    }
    let Some(s0) = s0 else { return Ok(rep) };
    let s0 = ctx.num(s0)?;
    let opts = ShootOptions { tol: ctx.num(tol)?, ..Default::default() };
    let residual_tol = ctx.num(residual_tol)?;
    rep.input("s0", s0);
    rep.input("shoot_options", to_node(&opts));
    rep.input("residual_tol", residual_tol);
    let (prof, out) = radial::shoot(&f, n, s0, &opts)?;
    rep.value("outcome", to_node(&out));
    let radius = match radius {
        Some(t) => ctx.num(t)?,
        None => {
            out.first_zero().ok_or_else(|| CliError::Usage(format!("shooting gave {}; pass --radius", out.name())))?
        }
    };
    rep.input("radius", radius);
    let rp = radial::rellich_pohozaev_residual(&prof, Source::Scalar(&f), radius)?;
    rep.value("identity", to_node(&rp));
    let ok = rp.residual <= residual_tol;
    rep.verdict("identity residual <= tol", yes_no(ok));
    rep.failed = !ok;
    ctx.profile(&mut rep, "profile.csv", &prof)?;
    Ok(rep)
}
