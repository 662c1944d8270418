mod args;
mod commands;
mod json;
mod report;

use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;

use args::{Cli, Command};
use report::{CliError, Context, Report};

fn dispatch(cmd: &Command, ctx: &mut Context) -> Result<Report, CliError> {
    use commands::*;
    match cmd {
        Command::Exponents { n, geometry } => theory::exponents(*n, *geometry),
        Command::Analyze { nonlin, list_presets, f_plus } => {
            theory::analyze(ctx, nonlin, *list_presets, f_plus.as_deref())
        }
        Command::Check(a) => theory::check(ctx, a),
        Command::Benchmark { n, p } => theory::benchmark(ctx, *n, p),
        Command::Theta { k } => theory::theta(ctx, k),
        Command::Shoot { nonlin, n, s0, rmax, tol, blowup, past_zero } => {
            radial::shoot(ctx, nonlin, *n, s0, rmax, tol, blowup, *past_zero)
        }
        Command::Verify { form, n, p, k, nonlin, rmin, rmax, points, tol } => {
            radial::verify(ctx, *form, *n, p.as_deref(), *k, nonlin, rmin, rmax, *points, tol)
        }
        Command::Pohozaev { nonlin, n, s0, radius, tol, residual_tol } => {
            radial::pohozaev(ctx, nonlin, *n, s0.as_deref(), radius.as_deref(), tol, residual_tol)
        }
        Command::SolveBall { nonlin, ball, radius, boundary } => {
            bounds::solve_ball(ctx, nonlin, ball, radius, boundary)
        }
        Command::Bound { nonlin, ball, radii, mode, threshold } => {
            bounds::bound(ctx, nonlin, ball, radii, *mode, threshold)
        }
        Command::Decay { nonlin, n, cap, b, radii, intervals } => {
            bounds::decay(ctx, nonlin, *n, cap, b, radii, *intervals)
        }
        Command::Counterexample { p, q, lambda, geometry } => bounds::counterexample(ctx, p, q, lambda, *geometry),
        Command::Rescale(r) => rescale::run(ctx, r),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let start = Instant::now();
    let mut ctx = Context::new(cli.global.csv.clone());
    let mut run = || dispatch(&cli.command, &mut ctx);
    let result = match cli.global.jobs {
        Some(j) => match rayon::ThreadPoolBuilder::new().num_threads(j).build() {
            Ok(pool) => pool.install(run),
            Err(e) => Err(CliError::Usage(format!("--jobs: {e}"))),
        },
        None => run(),
    };
    let (report, code) = match result {
        Ok(r) => {
            let code = u8::from(r.failed);
            (r, code)
        }
        Err(e) if e.is_solver_failure() => {
            let mut r = Report::new(commands::name(&cli.command));
            r.verdict("status", "failed");
            r.value("error", e.to_string());
            (r, 1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let ms = if cli.global.timing { start.elapsed().as_millis() as u64 } else { 0 };
    if let Err(e) = report::write_report(&report.to_node(ms), cli.global.out.as_deref()) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}
