use ellab_core::bounds::{self as core_bounds, BallOptions, BoundMode, BvpSolution, Guess, HCalculus};
use ellab_core::nonlin::SystemKind;
use ellab_core::numeric::grid;
use ellab_core::radial::Source;
use rayon::prelude::*;

use crate::args::{BallArgs, BoundModeArg, GeometryArg, GuessArg, NonlinArgs};
use crate::json::{to_node, Node};
use crate::report::{geometry, yes_no, CliError, CliResult, Context, Nonlin, Report};

/// Resolved ball options minus the per-radius guess.
struct BallPlan {
    n: u32,
    intervals: usize,
    max_iter: usize,
    guess: GuessArg,
    guess_value: f64,
    amplitude: f64,
    width: Option<f64>,
}

impl BallPlan {
    fn new(ctx: &Context, a: &BallArgs, scalar: bool, rep: &mut Report) -> CliResult<Self> {
        let guess = a.guess.unwrap_or(if scalar { GuessArg::Shooting } else { GuessArg::Bump });
        if guess == GuessArg::Shooting && !scalar {
            return Err(CliError::Usage("--guess shooting needs a scalar nonlinearity".into()));
        }
        let plan = BallPlan {
            n: a.n,
            intervals: a.intervals,
            max_iter: a.max_iter,
            guess,
            guess_value: ctx.num(&a.guess_value)?,
            amplitude: ctx.num(&a.amplitude)?,
            width: a.width.as_deref().map(|w| ctx.num(w)).transpose()?,
        };
        rep.input("n", a.n);
        rep.input("intervals", a.intervals);
        rep.input("max_iter", a.max_iter);
        let mut g = Node::map();
        match guess {
            GuessArg::Zero => g.insert("kind", "zero"),
            GuessArg::Constant => {
                g.insert("kind", "constant");
                g.insert("value", plan.guess_value);
            }
            GuessArg::Bump => {
                g.insert("kind", "bump");
                g.insert("amplitude", plan.amplitude);
                g.insert("width", plan.width.map_or(Node::Str("radius".into()), Node::Float));
            }
            GuessArg::Shooting => g.insert("kind", "shooting"),
        }
        rep.input("guess", g);
        Ok(plan)
    }

    fn solve(&self, src: Source<'_>, radius: f64, boundary: &[f64]) -> ellab_core::Result<BvpSolution> {
        let guess = match (self.guess, src) {
            (GuessArg::Zero, _) => Guess::Zero,
            (GuessArg::Constant, _) => Guess::Constant { value: self.guess_value },
            (GuessArg::Bump, _) => Guess::Bump { amplitude: self.amplitude, width: self.width.unwrap_or(radius) },
            (GuessArg::Shooting, Source::Scalar(f)) => core_bounds::shooting_guess(f, self.n, radius, self.intervals)?,
            (GuessArg::Shooting, Source::System(_)) => unreachable!("rejected in BallPlan::new"),
        };
        let opts = BallOptions { intervals: self.intervals, max_iter: self.max_iter, guess };
        core_bounds::solve_ball(src, self.n, radius, boundary, &opts)
    }
}

fn summary(sol: &BvpSolution) -> Node {
    let mut n = Node::map();
    n.insert("radius", sol.radius);
    n.insert("h", sol.h);
    n.insert("converged", sol.converged);
    n.insert("iterations", sol.iterations);
    n.insert("residual", sol.residual);
    n.insert("threshold", sol.threshold);
    n.insert("status", sol.status.as_str());
    n.insert("center", sol.center());
    n.insert("max_abs", sol.max_abs());
    n
}

pub fn solve_ball(
    ctx: &mut Context,
    nonlin: &NonlinArgs,
    ball: &BallArgs,
    radius: &str,
    boundary: &str,
) -> CliResult<Report> {
    let mut rep = Report::new("solve-ball");
    let nl = ctx.nonlin(nonlin, &mut rep)?;
    let radius = ctx.num(radius)?;
    let plan = BallPlan::new(ctx, ball, matches!(nl, Nonlin::Scalar(_)), &mut rep)?;
    let src = match &nl {
        Nonlin::Scalar(f) => Source::Scalar(f),
        Nonlin::System(s) => Source::System(s),
    };
    let mut b = ctx.list(boundary)?;
    if b.len() == 1 && src.m() == 2 {
        b.push(b[0]);
    }
    rep.input("radius", radius);
    rep.input("boundary", b.clone());
    let sol = plan.solve(src, radius, &b)?;
    rep.verdict("converged", yes_no(sol.converged));
    rep.value("solution", summary(&sol));
    rep.failed = !sol.converged;
    ctx.profile(&mut rep, "solution.csv", &sol.to_profile())?;
    Ok(rep)
}

pub fn bound(
    ctx: &mut Context,
    nonlin: &NonlinArgs,
    ball: &BallArgs,
    radii: &str,
    mode: BoundModeArg,
    threshold: &str,
) -> CliResult<Report> {
    let mut rep = Report::new("bound");
    let nl = ctx.nonlin(nonlin, &mut rep)?;
    let radii = ctx.list(radii)?;
    let plan = BallPlan::new(ctx, ball, matches!(nl, Nonlin::Scalar(_)), &mut rep)?;
    rep.input("radii", radii.clone());
    let (src, lane_emden) = match &nl {
        Nonlin::Scalar(f) => (Source::Scalar(f), false),
        Nonlin::System(s) => (Source::System(s), matches!(s.kind(), SystemKind::LaneEmden)),
    };
    let mode = match (mode, src) {
        (BoundModeArg::Scalar, _) | (BoundModeArg::Auto, Source::Scalar(_)) => BoundMode::Scalar,
        (BoundModeArg::LaneEmden, _) => BoundMode::LaneEmden,
        (BoundModeArg::Auto, Source::System(_)) if lane_emden => BoundMode::LaneEmden,
        (BoundModeArg::System, _) | (BoundModeArg::Auto, Source::System(_)) => {
            let t = ctx.num(threshold)?;
            rep.input("threshold", t);
            BoundMode::System { threshold: t }
        }
    };
    if mode == BoundMode::Scalar && src.m() != 1 {
        return Err(CliError::Usage("--mode scalar needs a scalar nonlinearity".into()));
    }
    rep.input("mode", mode.name());
    let hcal = match (mode, &nl) {
        (BoundMode::LaneEmden, Nonlin::System(s)) => Some(HCalculus::from_system(s)?),
        (BoundMode::LaneEmden, Nonlin::Scalar(_)) => {
            return Err(CliError::Usage("--mode lane-emden needs a lane-emden pair".into()))
        }
        _ => None,
    };
    let zero = vec![0.0; src.m()];
    let sols =
        radii.par_iter().map(|&r| plan.solve(src, r, &zero)).collect::<ellab_core::Result<Vec<BvpSolution>>>()?;
    let report = core_bounds::bound_report(&sols, mode, src, hcal.as_ref())?;
    let all = sols.iter().all(|s| s.converged);
    rep.verdict("all converged", yes_no(all));
    rep.failed = !all;
    rep.value("solutions", Node::Seq(sols.iter().map(summary).collect()));
    rep.value("domains", to_node(&report.domains));
    rep.value("ratio", report.ratio);
    rep.value("warnings", to_node(&report.warnings));
    if let Some(h) = &hcal {
        rep.value("h_calculus", to_node(&h.summary()));
    }
    let rows: Vec<Vec<f64>> = report
        .domains
        .iter()
        .map(|d| vec![d.radius, d.sup, d.at, d.sup2.unwrap_or(f64::NAN), d.at2.unwrap_or(f64::NAN)])
        .collect();
    ctx.table(&mut rep, "bound.csv", &["radius", "sup", "at", "sup2", "at2"], &rows)?;
    for (i, s) in sols.iter().enumerate() {
        ctx.profile(&mut rep, &format!("solution_{i}.csv"), &s.to_profile())?;
    }
    Ok(rep)
}

#[allow(clippy::too_many_arguments)]
pub fn decay(
    ctx: &mut Context,
    nonlin: &NonlinArgs,
    n: u32,
    cap: &str,
    b: &str,
    radii: &str,
    intervals: usize,
) -> CliResult<Report> {
    let mut rep = Report::new("decay");
    let f = ctx.scalar(nonlin, &mut rep)?;
    let (cap, b, radii) = (ctx.num(cap)?, ctx.num(b)?, ctx.list(radii)?);
    rep.input("n", n);
    rep.input("cap", cap);
    rep.input("b", b);
    rep.input("radii", radii.clone());
    rep.input("intervals", intervals);
    let mut rows = radii
        .par_iter()
        .map(|&r| core_bounds::decay_scan(&f, n, cap, b, &[r], intervals))
        .collect::<ellab_core::Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect::<Vec<_>>();
    rows.sort_by(|x, y| y.radius.total_cmp(&x.radius));
    let monotone = rows.windows(2).all(|w| w[0].eta <= w[1].eta);
    rep.verdict("proxy nonincreasing in R", yes_no(monotone));
    rep.value("rows", to_node(&rows));
    rep.value(
        "note",
        "eta is an empirical proxy: the centre value of one small-solution family, 0 when that solve fails or leaves the cap",
    );
    let table: Vec<Vec<f64>> =
        rows.iter().map(|r| vec![r.radius, r.center, r.max_abs, f64::from(u8::from(r.converged)), r.eta]).collect();
    ctx.table(&mut rep, "decay.csv", &["radius", "center", "max_abs", "converged", "eta"], &table)?;
    Ok(rep)
}

pub fn counterexample(ctx: &mut Context, p: &str, q: &str, lambda: &str, g: GeometryArg) -> CliResult<Report> {
    let mut rep = Report::new("counterexample");
    let (p, q, lambda) = (ctx.num(p)?, ctx.num(q)?, ctx.num(lambda)?);
    let geom = geometry(g);
    rep.input("p", p);
    rep.input("q", q);
    rep.input("lambda", lambda);
    rep.input("geometry", geom.name());
    let c = core_bounds::proportional_counterexample(p, q, lambda, geom)?;
    rep.value("profile", to_node(&c.profile));
    rep.value("residual", c.residual);
    rep.value("x_range", vec![c.x_range.0, c.x_range.1]);
    rep.value("points", c.points);
    rep.value("at_origin", c.at_origin);
    let rows: Vec<Vec<f64>> = grid::linear(c.x_range.0, c.x_range.1, 201)
        .into_iter()
        .map(|x| {
            let (w, d2w) = c.profile.eval(x);
            vec![x, w, d2w]
        })
        .collect();
    ctx.table(&mut rep, "counterexample.csv", &["x", "w", "d2w"], &rows)?;
    Ok(rep)
}
