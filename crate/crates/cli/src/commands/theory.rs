use ellab_core::bounds::{bound_exponents, HCalculus, ASYMPTOTIC_WINDOW};
use ellab_core::criteria::{self, GsParams};
use ellab_core::nonlin::{self, presets, EndProfile, SystemKind};
use rayon::prelude::*;

use crate::args::{CheckArgs, GeometryArg, NonlinArgs, TheoremArg};
use crate::json::{to_node, Node};
use crate::report::{geometry, system_kind, yes_no, CliError, CliResult, Context, Nonlin, Report};

pub fn exponents(n: u32, g: GeometryArg) -> CliResult<Report> {
    let mut rep = Report::new("exponents");
    rep.input("n", n);
    rep.input("geometry", geometry(g).name());
    let e = criteria::exponents(n, geometry(g));
    rep.value("p_sobolev", e.p_sobolev);
    rep.value("p_star", e.p_star);
    rep.value("p_star_star", e.p_star_star);
    rep.value("kappa", e.kappa);
    Ok(rep)
}

fn end_node(e: &EndProfile) -> Node {
    let mut n = Node::map();
    n.insert("index", e.index);
    n.insert("log_power", e.log_power);
    n.insert("limit", Node::Seq(e.limit.iter().map(|x| Node::Str(x.to_string())).collect()));
    n.insert("scale", e.scale);
    n.insert("method", to_node(&e.method));
    n.insert("slowly_varying", e.slowly_varying());
    n.insert("homogeneity_defect", e.homogeneity_defect());
    n
}

/// Samples of the h-calculus at decades `10^1 … 10^6` plus fitted exponents.
fn h_calculus_node(hc: &HCalculus) -> Node {
    let mut n = to_node(&hc.summary());
    let mut rows = Vec::new();
    for k in 1..=6 {
        let x = 10f64.powi(k);
        let l = x.ln();
        let mut r = Node::map();
        r.insert("x", x);
        r.insert("h1_inv_h2", hc.ln_compose(0, 1, l).exp());
        r.insert("h2_inv_h1", hc.ln_compose(1, 0, l).exp());
        r.insert("phi", hc.ln_phi(l).exp());
        r.insert("quantity_u", hc.ln_bound_quantity(0, l).exp());
        r.insert("quantity_v", hc.ln_bound_quantity(1, l).exp());
        rows.push(r);
    }
    n.insert("samples", Node::Seq(rows));
    let (lo, hi) = ASYMPTOTIC_WINDOW;
    let e = bound_exponents(hc, lo, hi, 61);
    let mut ex = to_node(&e);
    ex.insert("window", vec![lo, hi]);
    n.insert("exponents", ex);
    n
}

pub fn analyze(ctx: &mut Context, a: &NonlinArgs, list: bool, f_plus: Option<&str>) -> CliResult<Report> {
    let mut rep = Report::new("analyze");
    if list {
        let cat: Vec<Node> = presets::catalog()
            .into_iter()
            .map(|p| {
                let mut n = Node::map();
                n.insert("name", p.name);
                n.insert("summary", p.summary);
                let mut d = Node::map();
                for (k, v) in p.defaults {
                    d.insert(k, v);
                }
                n.insert("defaults", d);
                n
            })
            .collect();
        rep.value("presets", Node::Seq(cat));
        return Ok(rep);
    }
    let profile = match ctx.nonlin(a, &mut rep)? {
        Nonlin::Scalar(f) => {
            rep.value("kind", "scalar");
            rep.value("positive", f.is_positive());
            rep.value("kinks", f.kinks().to_vec());
            rep.value("f_at_zero", f.zero_value());
            if f_plus.is_some() {
                return Err(CliError::Usage("--f-plus applies to systems".into()));
            }
            nonlin::regvar_profile(&f)
        }
        Nonlin::System(s) => {
            rep.value("kind", system_kind(&s));
            rep.value("components", Node::Seq(s.components().iter().map(|c| Node::Str(c.to_string())).collect()));
            if let Some(text) = f_plus {
                let lams = ctx.list(text)?;
                rep.input("f_plus", lams.clone());
                let vals: Vec<Node> = lams
                    .iter()
                    .map(|&l| {
                        let mut r = Node::map();
                        r.insert("lambda", l);
                        r.insert("f_plus", nonlin::f_plus(&s, l));
                        r
                    })
                    .collect();
                rep.value("f_plus", Node::Seq(vals));
            }
            if matches!(s.kind(), SystemKind::LaneEmden) {
                match HCalculus::from_system(&s) {
                    Ok(hc) => rep.value("h_calculus", h_calculus_node(&hc)),
                    Err(e) => rep.value("h_calculus_error", e.to_string()),
                }
            }
            nonlin::regvar_profile_system(&s)
        }
    };
    match profile {
        Ok(p) => {
            rep.verdict("regularly_varying", "yes");
            rep.value("at_zero", end_node(&p.at_zero));
            rep.value("at_infinity", end_node(&p.at_infinity));
        }
        Err(ellab_core::Error::NotRegularlyVarying(msg)) => {
            rep.verdict("regularly_varying", "no");
            rep.value("reason", msg);
            rep.failed = true;
        }
        Err(e) => return Err(e.into()),
    }
    Ok(rep)
}

fn need<'a>(opt: &'a Option<String>, flag: &str, theorem: &str) -> CliResult<&'a str> {
    opt.as_deref().ok_or_else(|| CliError::Usage(format!("--theorem {theorem} needs {flag}")))
}

fn pair(ctx: &Context, text: &str, flag: &str) -> CliResult<[f64; 2]> {
    let v = ctx.list(text)?;
    <[f64; 2]>::try_from(v).map_err(|_| CliError::Usage(format!("{flag} expects two values")))
}

pub fn check(ctx: &mut Context, a: &CheckArgs) -> CliResult<Report> {
    let mut rep = Report::new("check");
    let geom = geometry(a.geometry);
    rep.input("n", a.n);
    rep.input("geometry", geom.name());
    let name = match a.theorem {
        TheoremArg::A => "A",
        TheoremArg::B => "B",
        TheoremArg::Gs => "GS",
        TheoremArg::GsGeneral => "GS-general",
        TheoremArg::Thm1 => "thm1",
        TheoremArg::Cor0 => "cor0",
        TheoremArg::Proportional => "proportional",
        TheoremArg::LaneEmdenRegion => "lane-emden-region",
    };
    rep.input("theorem", name);
    let verdict = match a.theorem {
        TheoremArg::A => criteria::check_theorem_a(&ctx.scalar(&a.nonlin, &mut rep)?, a.n)?,
        TheoremArg::B => criteria::check_theorem_b(&ctx.scalar(&a.nonlin, &mut rep)?, a.n)?,
        TheoremArg::Gs => criteria::check_gs_modified(&ctx.scalar(&a.nonlin, &mut rep)?, a.n)?,
        TheoremArg::GsGeneral => {
            let f = ctx.scalar(&a.nonlin, &mut rep)?;
            match (&a.gs_q, &a.gs_k, &a.gs_m, &a.gs_gamma) {
                (Some(q), Some(k), Some(m), Some(g)) => {
                    let prm = GsParams {
                        q: ctx.num(q)?,
                        k: ctx.num(k)?,
                        m: pair(ctx, m, "--gs-m")?,
                        gamma: pair(ctx, g, "--gs-gamma")?,
                    };
                    rep.input("gs_params", to_node(&prm));
                    criteria::check_gs_general(&f, a.n, &prm)?
                }
                (None, None, None, None) => {
                    let (prm, v) = criteria::search_gs_params(&f, a.n)?;
                    rep.input("gs_params", "search");
                    rep.value("gs_params", to_node(&prm));
                    v
                }
                _ => return Err(CliError::Usage("give all of --gs-q, --gs-k, --gs-m, --gs-gamma or none".into())),
            }
        }
        TheoremArg::Thm1 => match ctx.nonlin(&a.nonlin, &mut rep)? {
            Nonlin::Scalar(f) => criteria::check_thm1_scalar(&f, a.n)?,
            Nonlin::System(s) => {
                let p = ctx.num(need(&a.p, "--p", name)?)?;
                let q = ctx.num(need(&a.q, "--q", name)?)?;
                let m = ctx.num(&a.m_box)?;
                rep.input("p", p);
                rep.input("q", q);
                rep.input("M", m);
                criteria::check_thm1_conditions(&s, a.n, geom, m, p, q)?
            }
        },
        TheoremArg::Cor0 => {
            ctx.bind(&a.nonlin.params)?;
            let p0 = ctx.num(need(&a.p0, "--p0", name)?)?;
            let k = ctx.num(need(&a.k, "--K", name)?)?;
            let sigma = a.sigma.ok_or_else(|| CliError::Usage("--theorem cor0 needs --sigma".into()))?;
            rep.input("p0", p0);
            rep.input("K", k);
            rep.input("sigma", Node::Int(sigma as i64));
            let params = criteria::cor0_params(p0, k, sigma, a.n, geom)?;
            rep.value("params", to_node(&params));
            match (&a.a, &a.lambda) {
                (Some(at), Some(lt)) => {
                    let (av, lv) = (ctx.num(at)?, ctx.num(lt)?);
                    rep.input("a", av);
                    rep.input("lambda", lv);
                    criteria::check_cor23(p0, k, sigma, av, lv, a.n, geom)?
                }
                (None, None) => return Ok(rep),
                _ => return Err(CliError::Usage("--a and --lambda go together".into())),
            }
        }
        TheoremArg::Proportional => {
            let s = ctx.system(&a.nonlin, &mut rep)?;
            let (eps, m) = (ctx.num(&a.eps)?, ctx.num(&a.m_box)?);
            rep.input("eps", eps);
            rep.input("M", m);
            criteria::check_proportional(&s, eps, geom, a.n, m)?
        }
        TheoremArg::LaneEmdenRegion => {
            ctx.bind(&a.nonlin.params)?;
            let p = ctx.num(need(&a.p, "--p", name)?)?;
            let q = ctx.num(need(&a.q, "--q", name)?)?;
            rep.input("p", p);
            rep.input("q", q);
            rep.value("region", to_node(&criteria::lane_emden_region(p, q, a.n)?));
            criteria::check_lane_emden_region(p, q, a.n)?
        }
    };
    rep.absorb_verdict(&verdict);
    Ok(rep)
}

pub fn benchmark(ctx: &mut Context, n: u32, p: &str) -> CliResult<Report> {
    let mut rep = Report::new("benchmark");
    let p = ctx.num(p)?;
    rep.input("n", n);
    rep.input("p", p);
    let t = criteria::benchmark_thresholds(n, p)?;
    rep.value("k0", t.k0);
    rep.value("k1", t.k1);
    rep.value("k2", t.k2);
    rep.value("k3", t.k3);
    rep.value("k3_over_k0", t.k3 / t.k0);
    let ordered = t.k1 > t.k2 && t.k2 > t.k3 && t.k3 > t.k0;
    rep.verdict("k1 > k2 > k3 > k0", yes_no(ordered));
    rep.failed = !ordered;
    Ok(rep)
}

pub fn theta(ctx: &mut Context, ks: &str) -> CliResult<Report> {
    let mut rep = Report::new("theta");
    let ks = ctx.list(ks)?;
    rep.input("K", ks.clone());
    let rows = ks
        .par_iter()
        .map(|&k| {
            let t = nonlin::theta(k)?;
            let (s, m) = nonlin::phi_k_min(k)?;
            Ok(vec![k, t, s, m, s - k * (t - 1.0)])
        })
        .collect::<ellab_core::Result<Vec<Vec<f64>>>>()?;
    let nodes = rows
        .iter()
        .map(|r| {
            let mut n = Node::map();
            for (key, v) in ["K", "theta", "s_min", "phi_min", "s_min_identity_gap"].iter().zip(r) {
                n.insert(key, *v);
            }
            n
        })
        .collect();
    let exact = ks.iter().zip(&rows).all(|(&k, r)| k != 1.0 || r[1] == 1.0);
    rep.verdict("theta(1) = 1", if ks.contains(&1.0) { yes_no(exact) } else { "not-sampled" });
    rep.value("rows", Node::Seq(nodes));
    ctx.table(&mut rep, "theta.csv", &["K", "theta", "s_min", "phi_min", "s_min_identity_gap"], &rows)?;
    Ok(rep)
}
