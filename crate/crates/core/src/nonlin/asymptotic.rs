//! Leading-order behaviour of expressions as `|U| → 0` or `|U| → ∞`.
//!
//! A lead is a triple `(index, log_power, shape)` meaning
//! `e(U) ≈ shape(U) · |ln |U||^log_power`, with `shape` homogeneous of degree
//! `index`. Slowly varying constants are folded into `shape`.

use serde::{Deserialize, Serialize};

use super::expr::{Expr, LogShift};

/// End of the half-line under study.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum End {
    Zero,
    Infinity,
}

/// Leading term of an expression at one end.
#[derive(Debug, Clone, PartialEq)]
pub struct Lead {
    pub index: f64,
    pub log_power: f64,
    pub shape: Expr,
}

/// Why a structural lead could not be extracted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LeadFailure {
    /// Leading terms cancel.
    Cancellation,
    /// A logarithm of a slowly varying quantity (iterated logarithm).
    IteratedLog,
    /// The expression is not defined near the end.
    Undefined,
}

const TIE: f64 = 1e-12;

fn same(a: &Lead, b: &Lead) -> bool {
    (a.index - b.index).abs() <= TIE && (a.log_power - b.log_power).abs() <= TIE
}

/// `true` when `a` is asymptotically larger in magnitude than `b`.
fn dominates(a: &Lead, b: &Lead, end: End) -> bool {
    if (a.index - b.index).abs() > TIE {
        return match end {
            End::Infinity => a.index > b.index,
            End::Zero => a.index < b.index,
        };
    }
    a.log_power > b.log_power + TIE
}

/// Sample points in the open positive quadrant used to decide whether a
/// homogeneous shape vanishes identically.
const PROBES: [(f64, f64); 5] = [(1.0, 1.0), (0.3, 1.0), (1.0, 0.4), (0.7, 0.2), (0.15, 0.9)];

pub fn vanishes(shape: &Expr) -> bool {
    PROBES.iter().all(|&(u, v)| {
        let x = shape.eval(u, v);
        x.is_finite() && x.abs() <= 1e-13 * (1.0 + shape_scale(shape, u, v))
    })
}

fn shape_scale(shape: &Expr, u: f64, v: f64) -> f64 {
    match shape {
        Expr::Sum(xs) => xs.iter().map(|e| e.eval(u, v).abs()).fold(0.0, f64::max),
        _ => 0.0,
    }
}

fn constant(c: f64) -> Lead {
    Lead { index: 0.0, log_power: 0.0, shape: Expr::Const(c) }
}

fn log_shift_lead(l: &LogShift, end: End) -> Result<Option<Lead>, LeadFailure> {
    let x = Expr::Var(l.var);
    let grows = matches!((end, l.sigma), (End::Infinity, 1) | (End::Zero, -1));
    if grows {
        return Ok(Some(Lead { index: 0.0, log_power: l.power, shape: Expr::Const(1.0) }));
    }
    if l.shift == 1.0 {
        // log(1 + y) ~ y with y = x^σ → 0.
        let idx = l.sigma as f64 * l.power;
        return Ok(Some(Lead { index: idx, log_power: 0.0, shape: Expr::pow(x, idx) }));
    }
    let c = l.shift.ln().powf(l.power);
    if !c.is_finite() {
        return Err(LeadFailure::Undefined);
    }
    Ok(Some(constant(c)))
}

/// Leading term of `e` at `end`. `Ok(None)` means `e` vanishes identically.
pub fn lead(e: &Expr, end: End) -> Result<Option<Lead>, LeadFailure> {
    match e {
        Expr::Const(c) => Ok(if *c == 0.0 { None } else { Some(constant(*c)) }),
        Expr::Var(v) => Ok(Some(Lead { index: 1.0, log_power: 0.0, shape: Expr::Var(*v) })),
        Expr::Pow(b, k) => match lead(b, end)? {
            None => {
                if *k > 0.0 {
                    Ok(None)
                } else {
                    Err(LeadFailure::Undefined)
                }
            }
            Some(l) => Ok(Some(Lead { index: l.index * k, log_power: l.log_power * k, shape: Expr::pow(l.shape, *k) })),
        },
        Expr::LogShift(l) => log_shift_lead(l, end),
        Expr::Log(b) => {
            let l = lead(b, end)?.ok_or(LeadFailure::Undefined)?;
            if l.index.abs() > TIE {
                let coef = match end {
                    End::Infinity => l.index,
                    End::Zero => -l.index,
                };
                return Ok(Some(Lead { index: 0.0, log_power: 1.0, shape: Expr::Const(coef) }));
            }
            if l.log_power.abs() > TIE {
                return Err(LeadFailure::IteratedLog);
            }
            let shape = match l.shape {
                Expr::Const(c) => Expr::Const(c.ln()),
                s => Expr::log(s),
            };
            if vanishes(&shape) {
                return Err(LeadFailure::Cancellation);
            }
            Ok(Some(Lead { index: 0.0, log_power: 0.0, shape }))
        }
        Expr::Sum(xs) => {
            let mut best: Vec<Lead> = Vec::new();
            for x in xs {
                let Some(l) = lead(x, end)? else { continue };
                if best.is_empty() || dominates(&l, &best[0], end) {
                    best = vec![l];
                } else if same(&l, &best[0]) {
                    best.push(l);
                }
            }
            if best.is_empty() {
                return Ok(None);
            }
            let (index, log_power) = (best[0].index, best[0].log_power);
            let shape = Expr::sum(best.into_iter().map(|l| l.shape).collect());
            if vanishes(&shape) {
                return Err(LeadFailure::Cancellation);
            }
            Ok(Some(Lead { index, log_power, shape }))
        }
        Expr::Product(xs) => {
            let mut acc = Lead { index: 0.0, log_power: 0.0, shape: Expr::Const(1.0) };
            let mut shapes = Vec::new();
            for x in xs {
                let Some(l) = lead(x, end)? else { return Ok(None) };
                acc.index += l.index;
                acc.log_power += l.log_power;
                shapes.push(l.shape);
            }
            acc.shape = Expr::product(shapes);
            Ok(Some(acc))
        }
        Expr::Min(a, b) | Expr::Max(a, b) => {
            let want_small = matches!(e, Expr::Min(..));
            let (la, lb) = (lead(a, end)?, lead(b, end)?);
            let (la, lb) = match (la, lb) {
                (None, None) => return Ok(None),
                (Some(l), None) | (None, Some(l)) => {
                    // A zero branch: min picks zero for positive l, max picks l.
                    return Ok(if want_small { None } else { Some(l) });
                }
                (Some(x), Some(y)) => (x, y),
            };
            if same(&la, &lb) {
                let shape = if want_small { Expr::min(la.shape, lb.shape) } else { Expr::max(la.shape, lb.shape) };
                return Ok(Some(Lead { shape, ..la }));
            }
            let a_big = dominates(&la, &lb, end);
            Ok(Some(if a_big != want_small { la } else { lb }))
        }
        Expr::Select(s) => {
            let (ll, lr) = (lead(&s[0], end)?, lead(&s[1], end)?);
            let le_branch = match (&ll, &lr) {
                (None, None) => None,
                (None, Some(_)) => Some(true),
                (Some(_), None) => Some(false),
                (Some(x), Some(y)) if same(x, y) => None,
                (Some(x), Some(y)) => Some(!dominates(x, y, end)),
            };
            match le_branch {
                Some(true) => lead(&s[2], end),
                Some(false) => lead(&s[3], end),
                None => {
                    let (a, b) = (lead(&s[2], end)?, lead(&s[3], end)?);
                    match (a, b) {
                        (Some(a), Some(b)) if same(&a, &b) => {
                            let (l, r) = (ll.map(|l| l.shape), lr.map(|l| l.shape));
                            let shape = Expr::select(
                                l.unwrap_or(Expr::Const(0.0)),
                                r.unwrap_or(Expr::Const(0.0)),
                                a.shape,
                                b.shape,
                            );
                            Ok(Some(Lead { shape, ..a }))
                        }
                        (a, _) => Ok(a),
                    }
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nonlin::expr::Var;

    fn pl(p: f64, k: f64, sigma: i8, a: f64) -> Expr {
        Expr::product(vec![Expr::pow(Expr::u(), p), Expr::log_shift(Var::U, k, sigma, a)])
    }

    #[test]
    fn power_log_at_both_ends() {
        let f = pl(2.5, 2.0, 1, 0.3);
        let li = lead(&f, End::Infinity).unwrap().unwrap();
        assert_eq!((li.index, li.log_power), (2.5, 0.3));
        let l0 = lead(&f, End::Zero).unwrap().unwrap();
        assert_eq!((l0.index, l0.log_power), (2.5, 0.0));
        assert!((l0.shape.eval(1.0, 0.0) - 2f64.ln().powf(0.3)).abs() < 1e-15);
    }

    #[test]
    fn unit_shift_changes_index() {
        let f = pl(2.0, 1.0, 1, 1.5);
        assert_eq!(lead(&f, End::Zero).unwrap().unwrap().index, 3.5);
        let g = pl(2.0, 1.0, -1, 1.5);
        assert_eq!(lead(&g, End::Infinity).unwrap().unwrap().index, 0.5);
    }

    #[test]
    fn benchmark_ends() {
        let f = Expr::product(vec![
            Expr::sum(vec![Expr::c(0.2), Expr::min(Expr::c(1.0), Expr::pow(Expr::u(), 1.5))]),
            Expr::pow(Expr::u(), 2.5),
        ]);
        assert_eq!(lead(&f, End::Zero).unwrap().unwrap().index, 2.5);
        assert_eq!(lead(&f, End::Infinity).unwrap().unwrap().index, 2.5);
        let g = Expr::product(vec![Expr::min(Expr::c(1.0), Expr::pow(Expr::u(), 1.5)), Expr::pow(Expr::u(), 2.5)]);
        assert_eq!(lead(&g, End::Zero).unwrap().unwrap().index, 4.0);
    }

    #[test]
    fn cancellation_and_iterated_logs() {
        let f = Expr::sum(vec![Expr::u(), Expr::negate(Expr::u()), Expr::pow(Expr::u(), 2.0)]);
        assert_eq!(lead(&f, End::Zero), Err(LeadFailure::Cancellation));
        assert_eq!(lead(&f, End::Infinity).unwrap().unwrap().index, 2.0);
        let g = Expr::log(Expr::log_shift(Var::U, 2.0, 1, 1.0));
        assert_eq!(lead(&g, End::Infinity), Err(LeadFailure::IteratedLog));
    }

    #[test]
    fn vector_shape_keeps_mixed_terms() {
        let f = Expr::sum(vec![
            Expr::pow(Expr::u(), 2.0),
            Expr::product(vec![Expr::c(0.5), Expr::pow(Expr::u(), 0.5), Expr::pow(Expr::v(), 1.5)]),
            Expr::pow(Expr::u(), 4.0),
        ]);
        let l = lead(&f, End::Zero).unwrap().unwrap();
        assert_eq!(l.index, 2.0);
        assert!((l.shape.eval(1.0, 1.0) - 1.5).abs() < 1e-15);
    }
}
