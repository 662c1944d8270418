use ellab_core::nonlin::End;
use ellab_core::rescaling::{self, DiscreteField, DoublingOutcome};

use crate::args::{EndArg, RescaleCommand};
use crate::json::{to_node, Node};
use crate::report::{yes_no, CliError, CliResult, Context, Nonlin, Report};

pub fn run(ctx: &mut Context, cmd: &RescaleCommand) -> CliResult<Report> {
    match cmd {
        RescaleCommand::Convergence { nonlin, end, lambdas, s_max, index } => {
            let mut rep = Report::new("rescale convergence");
            let nl = ctx.nonlin(nonlin, &mut rep)?;
            let end = match end {
                EndArg::Zero => End::Zero,
                EndArg::Infinity => End::Infinity,
            };
            let lams = ctx.list(lambdas)?;
            let s_max = ctx.num(s_max)?;
            let index = index.as_deref().map(|t| ctx.num(t)).transpose()?;
            rep.input("end", to_node(&end));
            rep.input("lambdas", lams.clone());
            rep.input("s_max", s_max);
            if let Some(p) = index {
                rep.input("index", p);
            }
            let table = match &nl {
                Nonlin::Scalar(f) => rescaling::uniform_convergence_check(f, index, end, &lams, s_max)?,
                Nonlin::System(s) => {
                    if index.is_some() {
                        return Err(CliError::Usage("--index applies to scalar nonlinearities".into()));
                    }
                    rescaling::uniform_convergence_check_system(s, end, &lams, s_max)?
                }
            };
            rep.verdict("strictly decreasing", yes_no(table.strictly_decreasing));
            rep.verdict("monotone", yes_no(table.monotone));
            rep.value("table", to_node(&table));
            let rows: Vec<Vec<f64>> = table.rows.iter().map(|r| vec![r.lambda, r.error]).collect();
            ctx.table(&mut rep, "convergence.csv", &["lambda", "error"], &rows)?;
            Ok(rep)
        }
        RescaleCommand::Doubling { per_axis, amplitude, width, centre, k } => {
            let mut rep = Report::new("rescale doubling");
            let (amp, width, k) = (ctx.num(amplitude)?, ctx.num(width)?, ctx.num(k)?);
            let c = ctx.list(centre)?;
            let c: [f64; 2] = c.try_into().map_err(|_| CliError::Usage("--centre expects x,y".into()))?;
            rep.input("per_axis", *per_axis);
            rep.input("amplitude", amp);
            rep.input("width", width);
            rep.input("centre", c.to_vec());
            rep.input("k", k);
            let field = DiscreteField::single_peak(*per_axis, amp, width, c)?;
            rep.value("field_points", field.len());
            let out = rescaling::doubling_point(&field, k)?;
            match &out {
                DoublingOutcome::Found { checks, .. } => {
                    rep.verdict("outcome", "found");
                    rep.verdict("checks", yes_no(checks.all()));
                    rep.value("doubling", to_node(&out));
                }
                DoublingOutcome::None { min_slack, .. } => {
                    // The per-point slack vector is as long as the field; keep the minimum only.
                    rep.verdict("outcome", "none");
                    let mut n = Node::map();
                    n.insert("outcome", "none");
                    n.insert("min_slack", *min_slack);
                    rep.value("doubling", n);
                }
                DoublingOutcome::Stalled { .. } => {
                    rep.verdict("outcome", "stalled");
                    rep.value("doubling", to_node(&out));
                    rep.failed = true;
                }
            }
            Ok(rep)
        }
        RescaleCommand::Critical { n, ks } => {
            let mut rep = Report::new("rescale critical");
            let ks = ctx
                .list(ks)?
                .into_iter()
                .map(|k| {
                    if k >= 1.0 && k.fract() == 0.0 && k <= u32::MAX as f64 {
                        Ok(k as u32)
                    } else {
                        Err(CliError::Usage(format!("k must be a positive integer, got {k}")))
                    }
                })
                .collect::<CliResult<Vec<u32>>>()?;
            rep.input("n", *n);
            rep.input("ks", Node::Seq(ks.iter().map(|&k| Node::from(k)).collect()));
            let t = rescaling::critical_limit_check(*n, &ks)?;
            rep.verdict("residual strictly decreasing", yes_no(t.residual_strictly_decreasing));
            rep.value("table", to_node(&t));
            let rows: Vec<Vec<f64>> = t
                .rows
                .iter()
                .map(|r| vec![r.k as f64, r.max, r.v_at_zero, r.residual, r.fit_rate, r.bubble_deviation])
                .collect();
            ctx.table(
                &mut rep,
                "critical.csv",
                &["k", "max", "v_at_zero", "residual", "fit_rate", "bubble_deviation"],
                &rows,
            )?;
            Ok(rep)
        }
    }
}
