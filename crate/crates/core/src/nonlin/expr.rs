use std::fmt;

use serde::{Deserialize, Serialize};

/// Independent variable of a nonlinearity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Var {
    U,
    V,
}

impl Var {
    pub fn pick(self, u: f64, v: f64) -> f64 {
        match self {
            Var::U => u,
            Var::V => v,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::U => "u",
            Var::V => "v",
        }
    }
}

/// `log^power(shift + var^sigma)` with `sigma = ±1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogShift {
    pub var: Var,
    pub shift: f64,
    pub sigma: i8,
    pub power: f64,
}

impl LogShift {
    /// True when the logarithm is positive for every positive argument.
    pub fn log_positive(&self) -> bool {
        self.shift >= 1.0
    }
}

/// Symbolic power-log-piecewise expression in `u` and `v`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Expr {
    Const(f64),
    Var(Var),
    Pow(Box<Expr>, f64),
    LogShift(LogShift),
    Log(Box<Expr>),
    Sum(Vec<Expr>),
    Product(Vec<Expr>),
    Min(Box<Expr>, Box<Expr>),
    Max(Box<Expr>, Box<Expr>),
    /// `if lhs <= rhs { le } else { gt }`; produced by differentiating min/max.
    Select(Box<[Expr; 4]>),
}

/// Which one-sided branch to follow at a min/max tie.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Signed logarithmic representation `sign · exp(ln)`; zero has `sign == 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SLog {
    pub sign: f64,
    pub ln: f64,
}

impl SLog {
    pub const ZERO: SLog = SLog { sign: 0.0, ln: f64::NEG_INFINITY };

    pub fn from_linear(x: f64) -> SLog {
        if x == 0.0 {
            SLog::ZERO
        } else if x.is_nan() {
            SLog { sign: f64::NAN, ln: f64::NAN }
        } else {
            SLog { sign: x.signum(), ln: x.abs().ln() }
        }
    }

    pub fn to_linear(self) -> f64 {
        if self.sign == 0.0 {
            0.0
        } else {
            self.sign * self.ln.exp()
        }
    }

    fn powf(self, c: f64) -> SLog {
        if self.sign == 0.0 {
            return if c > 0.0 {
                SLog::ZERO
            } else if c == 0.0 {
                SLog { sign: 1.0, ln: 0.0 }
            } else {
                SLog { sign: 1.0, ln: f64::INFINITY }
            };
        }
        if self.sign < 0.0 {
            if c.fract() != 0.0 {
                return SLog { sign: f64::NAN, ln: f64::NAN };
            }
            let odd = (c.abs() % 2.0) == 1.0;
            return SLog { sign: if odd { -1.0 } else { 1.0 }, ln: c * self.ln };
        }
        SLog { sign: 1.0, ln: c * self.ln }
    }

    fn less_eq(self, o: SLog) -> bool {
        if self.sign != o.sign {
            return self.sign < o.sign;
        }
        if self.sign > 0.0 {
            self.ln <= o.ln
        } else if self.sign < 0.0 {
            self.ln >= o.ln
        } else {
            true
        }
    }

    fn sum(terms: &[SLog]) -> SLog {
        let m = terms.iter().filter(|t| t.sign != 0.0).map(|t| t.ln).fold(f64::NEG_INFINITY, f64::max);
        if m == f64::NEG_INFINITY {
            return SLog::ZERO;
        }
        if !m.is_finite() {
            let s: f64 = terms.iter().filter(|t| t.ln == m).map(|t| t.sign).sum();
            return SLog { sign: s.signum(), ln: m };
        }
        let acc: f64 = terms.iter().filter(|t| t.sign != 0.0).map(|t| t.sign * (t.ln - m).exp()).sum();
        let r = SLog::from_linear(acc);
        SLog { sign: r.sign, ln: r.ln + m }
    }
}

fn ln_shift_pow(shift: f64, sigma: i8, lx: f64) -> f64 {
    let t = sigma as f64 * lx;
    if t > 0.0 {
        t + (shift * (-t).exp()).ln_1p()
    } else {
        (shift + t.exp()).ln()
    }
}

impl Expr {
    pub fn c(x: f64) -> Expr {
        Expr::Const(x)
    }

    pub fn u() -> Expr {
        Expr::Var(Var::U)
    }

    pub fn v() -> Expr {
        Expr::Var(Var::V)
    }

    pub fn var(v: Var) -> Expr {
        Expr::Var(v)
    }

    /// `base^exp` with trivial cases folded.
    pub fn pow(base: Expr, exp: f64) -> Expr {
        if exp == 0.0 {
            return Expr::Const(1.0);
        }
        if exp == 1.0 {
            return base;
        }
        match base {
            Expr::Const(c) => Expr::Const(c.powf(exp)),
            Expr::Pow(b, e) if matches!(*b, Expr::Var(_)) => Expr::pow(*b, e * exp),
            Expr::LogShift(mut l) => {
                l.power *= exp;
                if l.power == 0.0 {
                    Expr::Const(1.0)
                } else {
                    Expr::LogShift(l)
                }
            }
            b => Expr::Pow(Box::new(b), exp),
        }
    }

    /// `log^power(shift + var^sigma)`.
    pub fn log_shift(var: Var, shift: f64, sigma: i8, power: f64) -> Expr {
        if power == 0.0 {
            return Expr::Const(1.0);
        }
        Expr::LogShift(LogShift { var, shift, sigma, power })
    }

    pub fn log(e: Expr) -> Expr {
        Expr::Log(Box::new(e))
    }

    pub fn min(a: Expr, b: Expr) -> Expr {
        Expr::Min(Box::new(a), Box::new(b))
    }

    pub fn max(a: Expr, b: Expr) -> Expr {
        Expr::Max(Box::new(a), Box::new(b))
    }

    pub fn select(lhs: Expr, rhs: Expr, le: Expr, gt: Expr) -> Expr {
        if le == gt {
            return le;
        }
        Expr::Select(Box::new([lhs, rhs, le, gt]))
    }

    /// Sum with nested sums flattened, zeros dropped and constants merged.
    pub fn sum(items: Vec<Expr>) -> Expr {
        let mut out = Vec::new();
        let mut k = 0.0;
        for it in items {
            match it {
                Expr::Const(c) => k += c,
                Expr::Sum(v) => {
                    for x in v {
                        if let Expr::Const(c) = x {
                            k += c;
                        } else {
                            out.push(x);
                        }
                    }
                }
                x => out.push(x),
            }
        }
        if k != 0.0 {
            out.insert(0, Expr::Const(k));
        }
        match out.len() {
            0 => Expr::Const(0.0),
            1 => out.pop().expect("len 1"),
            _ => Expr::Sum(out),
        }
    }

    /// Product with nested products flattened and constants merged.
    pub fn product(items: Vec<Expr>) -> Expr {
        let mut out = Vec::new();
        let mut k = 1.0;
        for it in items {
            match it {
                Expr::Const(c) => k *= c,
                Expr::Product(v) => {
                    for x in v {
                        if let Expr::Const(c) = x {
                            k *= c;
                        } else {
                            out.push(x);
                        }
                    }
                }
                x => out.push(x),
            }
        }
        if k == 0.0 {
            return Expr::Const(0.0);
        }
        if k != 1.0 {
            out.insert(0, Expr::Const(k));
        }
        match out.len() {
            0 => Expr::Const(1.0),
            1 => out.pop().expect("len 1"),
            _ => Expr::Product(out),
        }
    }

    pub fn negate(e: Expr) -> Expr {
        Expr::product(vec![Expr::Const(-1.0), e])
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Expr::Const(c) if *c == 0.0)
    }

    /// Whether the expression mentions `var`.
    pub fn depends_on(&self, var: Var) -> bool {
        match self {
            Expr::Const(_) => false,
            Expr::Var(v) => *v == var,
            Expr::LogShift(l) => l.var == var,
            Expr::Pow(b, _) | Expr::Log(b) => b.depends_on(var),
            Expr::Sum(v) | Expr::Product(v) => v.iter().any(|e| e.depends_on(var)),
            Expr::Min(a, b) | Expr::Max(a, b) => a.depends_on(var) || b.depends_on(var),
            Expr::Select(s) => s.iter().any(|e| e.depends_on(var)),
        }
    }

    pub fn is_constant(&self) -> bool {
        !self.depends_on(Var::U) && !self.depends_on(Var::V)
    }

    /// Replace every occurrence of `var` by `with`.
    pub fn subst(&self, var: Var, with: &Expr) -> Expr {
        match self {
            Expr::Const(c) => Expr::Const(*c),
            Expr::Var(v) if *v == var => with.clone(),
            Expr::Var(v) => Expr::Var(*v),
            Expr::LogShift(l) if l.var == var => match with {
                Expr::Var(w) => Expr::LogShift(LogShift { var: *w, ..*l }),
                _ => Expr::pow(
                    Expr::log(Expr::sum(vec![Expr::Const(l.shift), Expr::pow(with.clone(), l.sigma as f64)])),
                    l.power,
                ),
            },
            Expr::LogShift(l) => Expr::LogShift(*l),
            Expr::Pow(b, e) => Expr::Pow(Box::new(b.subst(var, with)), *e),
            Expr::Log(b) => Expr::Log(Box::new(b.subst(var, with))),
            Expr::Sum(v) => Expr::Sum(v.iter().map(|e| e.subst(var, with)).collect()),
            Expr::Product(v) => Expr::Product(v.iter().map(|e| e.subst(var, with)).collect()),
            Expr::Min(a, b) => Expr::min(a.subst(var, with), b.subst(var, with)),
            Expr::Max(a, b) => Expr::max(a.subst(var, with), b.subst(var, with)),
            Expr::Select(s) => Expr::Select(Box::new([
                s[0].subst(var, with),
                s[1].subst(var, with),
                s[2].subst(var, with),
                s[3].subst(var, with),
            ])),
        }
    }

    /// Pointwise value. Non-finite results are returned as is.
    pub fn eval(&self, u: f64, v: f64) -> f64 {
        match self {
            Expr::Const(c) => *c,
            Expr::Var(x) => x.pick(u, v),
            Expr::Pow(b, e) => b.eval(u, v).powf(*e),
            Expr::LogShift(l) => {
                let x = l.var.pick(u, v);
                let lg = (l.shift + x.powf(l.sigma as f64)).ln();
                if l.power == 1.0 {
                    lg
                } else {
                    lg.powf(l.power)
                }
            }
            Expr::Log(b) => b.eval(u, v).ln(),
            Expr::Sum(xs) => xs.iter().map(|e| e.eval(u, v)).sum(),
            Expr::Product(xs) => {
                let mut acc = 1.0;
                for e in xs {
                    acc *= e.eval(u, v);
                }
                acc
            }
            Expr::Min(a, b) => {
                let (x, y) = (a.eval(u, v), b.eval(u, v));
                if x <= y {
                    x
                } else {
                    y
                }
            }
            Expr::Max(a, b) => {
                let (x, y) = (a.eval(u, v), b.eval(u, v));
                if x >= y {
                    x
                } else {
                    y
                }
            }
            Expr::Select(s) => {
                if s[0].eval(u, v) <= s[1].eval(u, v) {
                    s[2].eval(u, v)
                } else {
                    s[3].eval(u, v)
                }
            }
        }
    }

    /// Value and partial derivative in `wrt`, following `side` at min/max ties.
    pub fn eval_dual(&self, u: f64, v: f64, wrt: Var, side: Side) -> (f64, f64) {
        match self {
            Expr::Const(c) => (*c, 0.0),
            Expr::Var(x) => (x.pick(u, v), if *x == wrt { 1.0 } else { 0.0 }),
            Expr::Pow(b, e) => {
                let (bv, bd) = b.eval_dual(u, v, wrt, side);
                let val = bv.powf(*e);
                let d = if bd == 0.0 { 0.0 } else { e * bv.powf(e - 1.0) * bd };
                (val, d)
            }
            Expr::LogShift(l) => {
                let x = l.var.pick(u, v);
                let sig = l.sigma as f64;
                let inner = l.shift + x.powf(sig);
                let lg = inner.ln();
                let val = lg.powf(l.power);
                if l.var != wrt {
                    return (val, 0.0);
                }
                let d = l.power * lg.powf(l.power - 1.0) * sig * x.powf(sig - 1.0) / inner;
                (val, d)
            }
            Expr::Log(b) => {
                let (bv, bd) = b.eval_dual(u, v, wrt, side);
                (bv.ln(), if bd == 0.0 { 0.0 } else { bd / bv })
            }
            Expr::Sum(xs) => xs.iter().fold((0.0, 0.0), |acc, e| {
                let (a, b) = e.eval_dual(u, v, wrt, side);
                (acc.0 + a, acc.1 + b)
            }),
            Expr::Product(xs) => xs.iter().fold((1.0, 0.0), |acc, e| {
                let (a, b) = e.eval_dual(u, v, wrt, side);
                let d = if b == 0.0 { acc.1 * a } else { acc.1 * a + acc.0 * b };
                (acc.0 * a, d)
            }),
            Expr::Min(a, b) | Expr::Max(a, b) => {
                let is_min = matches!(self, Expr::Min(..));
                let (av, ad) = a.eval_dual(u, v, wrt, side);
                let (bv, bd) = b.eval_dual(u, v, wrt, side);
                let tie = (av - bv).abs() <= 1e-12 * av.abs().max(bv.abs()).max(1e-300);
                if tie {
                    let hi = ad.max(bd);
                    let lo = ad.min(bd);
                    let d = match (is_min, side) {
                        (true, Side::Left) | (false, Side::Right) => hi,
                        _ => lo,
                    };
                    return (av, d);
                }
                let pick_a = if is_min { av < bv } else { av > bv };
                if pick_a {
                    (av, ad)
                } else {
                    (bv, bd)
                }
            }
            Expr::Select(s) => {
                if s[0].eval(u, v) <= s[1].eval(u, v) {
                    s[2].eval_dual(u, v, wrt, side)
                } else {
                    s[3].eval_dual(u, v, wrt, side)
                }
            }
        }
    }

    /// Evaluate at `u = exp(lu)`, `v = exp(lv)` in signed-log arithmetic, so
    /// that arguments far beyond the `f64` range can be handled.
    pub fn eval_ln(&self, lu: f64, lv: f64) -> SLog {
        match self {
            Expr::Const(c) => SLog::from_linear(*c),
            Expr::Var(x) => SLog { sign: 1.0, ln: x.pick(lu, lv) },
            Expr::Pow(b, e) => b.eval_ln(lu, lv).powf(*e),
            Expr::LogShift(l) => {
                let lg = ln_shift_pow(l.shift, l.sigma, l.var.pick(lu, lv));
                SLog::from_linear(lg).powf(l.power)
            }
            Expr::Log(b) => {
                let x = b.eval_ln(lu, lv);
                if x.sign > 0.0 {
                    SLog::from_linear(x.ln)
                } else {
                    SLog { sign: f64::NAN, ln: f64::NAN }
                }
            }
            Expr::Sum(xs) => {
                let t: Vec<SLog> = xs.iter().map(|e| e.eval_ln(lu, lv)).collect();
                SLog::sum(&t)
            }
            Expr::Product(xs) => xs.iter().fold(SLog { sign: 1.0, ln: 0.0 }, |acc, e| {
                let x = e.eval_ln(lu, lv);
                if acc.sign == 0.0 || x.sign == 0.0 {
                    SLog::ZERO
                } else {
                    SLog { sign: acc.sign * x.sign, ln: acc.ln + x.ln }
                }
            }),
            Expr::Min(a, b) => {
                let (x, y) = (a.eval_ln(lu, lv), b.eval_ln(lu, lv));
                if x.less_eq(y) {
                    x
                } else {
                    y
                }
            }
            Expr::Max(a, b) => {
                let (x, y) = (a.eval_ln(lu, lv), b.eval_ln(lu, lv));
                if y.less_eq(x) {
                    x
                } else {
                    y
                }
            }
            Expr::Select(s) => {
                if s[0].eval_ln(lu, lv).less_eq(s[1].eval_ln(lu, lv)) {
                    s[2].eval_ln(lu, lv)
                } else {
                    s[3].eval_ln(lu, lv)
                }
            }
        }
    }

    /// Symbolic partial derivative. Min/max become `Select` nodes.
    pub fn deriv(&self, wrt: Var) -> Expr {
        if !self.depends_on(wrt) {
            return Expr::Const(0.0);
        }
        match self {
            Expr::Const(_) => Expr::Const(0.0),
            Expr::Var(x) => Expr::Const(if *x == wrt { 1.0 } else { 0.0 }),
            Expr::Pow(b, e) => {
                let db = b.deriv(wrt);
                if db.is_zero() {
                    return Expr::Const(0.0);
                }
                Expr::product(vec![Expr::Const(*e), Expr::pow((**b).clone(), e - 1.0), db])
            }
            Expr::LogShift(l) => {
                let sig = l.sigma as f64;
                let x = Expr::Var(l.var);
                Expr::product(vec![
                    Expr::Const(l.power * sig),
                    Expr::log_shift(l.var, l.shift, l.sigma, l.power - 1.0),
                    Expr::pow(x.clone(), sig - 1.0),
                    Expr::pow(Expr::sum(vec![Expr::Const(l.shift), Expr::pow(x, sig)]), -1.0),
                ])
            }
            Expr::Log(b) => Expr::product(vec![b.deriv(wrt), Expr::pow((**b).clone(), -1.0)]),
            Expr::Sum(xs) => Expr::sum(xs.iter().map(|e| e.deriv(wrt)).collect()),
            Expr::Product(xs) => {
                let mut terms = Vec::new();
                for i in 0..xs.len() {
                    let d = xs[i].deriv(wrt);
                    if d.is_zero() {
                        continue;
                    }
                    let mut fs: Vec<Expr> = Vec::with_capacity(xs.len());
                    for (j, x) in xs.iter().enumerate() {
                        fs.push(if i == j { d.clone() } else { x.clone() });
                    }
                    terms.push(Expr::product(fs));
                }
                Expr::sum(terms)
            }
            Expr::Min(a, b) => Expr::select((**a).clone(), (**b).clone(), a.deriv(wrt), b.deriv(wrt)),
            Expr::Max(a, b) => Expr::select((**a).clone(), (**b).clone(), b.deriv(wrt), a.deriv(wrt)),
            Expr::Select(s) => Expr::select(s[0].clone(), s[1].clone(), s[2].deriv(wrt), s[3].deriv(wrt)),
        }
    }

    /// Differences `lhs - rhs` of every min/max/select node; their zeros are
    /// the kinks of the expression.
    pub fn switch_functions(&self) -> Vec<Expr> {
        let mut out = Vec::new();
        self.collect_switches(&mut out);
        out
    }

    fn collect_switches(&self, out: &mut Vec<Expr>) {
        match self {
            Expr::Const(_) | Expr::Var(_) | Expr::LogShift(_) => {}
            Expr::Pow(b, _) | Expr::Log(b) => b.collect_switches(out),
            Expr::Sum(xs) | Expr::Product(xs) => xs.iter().for_each(|e| e.collect_switches(out)),
            Expr::Min(a, b) | Expr::Max(a, b) => {
                out.push(Expr::sum(vec![(**a).clone(), Expr::negate((**b).clone())]));
                a.collect_switches(out);
                b.collect_switches(out);
            }
            Expr::Select(s) => {
                out.push(Expr::sum(vec![s[0].clone(), Expr::negate(s[1].clone())]));
                s.iter().for_each(|e| e.collect_switches(out));
            }
        }
    }

    /// Flatten into `Σ c_i u^{e_i}` when the expression is a plain sum of
    /// monomials in `u`.
    pub fn as_monomials(&self) -> Option<Vec<(f64, f64)>> {
        fn mono(e: &Expr) -> Option<(f64, f64)> {
            match e {
                Expr::Const(c) => Some((*c, 0.0)),
                Expr::Var(Var::U) => Some((1.0, 1.0)),
                Expr::Pow(b, k) => match **b {
                    Expr::Var(Var::U) => Some((1.0, *k)),
                    Expr::Const(c) => Some((c.powf(*k), 0.0)),
                    _ => None,
                },
                Expr::Product(xs) => {
                    let mut acc = (1.0, 0.0);
                    for x in xs {
                        let (c, k) = mono(x)?;
                        acc = (acc.0 * c, acc.1 + k);
                    }
                    Some(acc)
                }
                _ => None,
            }
        }
        match self {
            Expr::Sum(xs) => xs.iter().map(mono).collect(),
            e => mono(e).map(|m| vec![m]),
        }
    }
}

fn fmt_num(x: f64) -> String {
    if x < 0.0 {
        format!("(-{:?})", -x)
    } else {
        format!("{x:?}")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Const(c) => write!(f, "{}", fmt_num(*c)),
            Expr::Var(v) => write!(f, "{}", v.name()),
            Expr::Pow(b, e) => write!(f, "({b})^{}", fmt_num(*e)),
            Expr::LogShift(l) => {
                write!(f, "log({:?} + {}^{})^{}", l.shift, l.var.name(), fmt_num(l.sigma as f64), fmt_num(l.power))
            }
            Expr::Log(b) => write!(f, "log({b})"),
            Expr::Sum(xs) => {
                write!(f, "(")?;
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        write!(f, " + ")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")
            }
            Expr::Product(xs) => {
                write!(f, "(")?;
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        write!(f, " * ")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")
            }
            Expr::Min(a, b) => write!(f, "min({a}, {b})"),
            Expr::Max(a, b) => write!(f, "max({a}, {b})"),
            Expr::Select(s) => write!(f, "sel({}, {}, {}, {})", s[0], s[1], s[2], s[3]),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cube() -> Expr {
        Expr::pow(Expr::u(), 3.0)
    }

    #[test]
    fn eval_basic() {
        assert_eq!(cube().eval(2.0, 0.0), 8.0);
        let e = Expr::product(vec![Expr::pow(Expr::u(), 2.0), Expr::log_shift(Var::U, 2.0, 1, 1.0)]);
        assert_eq!(e.eval(0.0, 0.0), 0.0);
    }

    #[test]
    fn symbolic_derivative() {
        let e = Expr::product(vec![Expr::pow(Expr::u(), 2.0), Expr::log_shift(Var::U, 2.0, 1, 1.0)]);
        let d = e.deriv(Var::U).eval(1.0, 0.0);
        assert!((d - (2.0 * 3f64.ln() + 1.0 / 3.0)).abs() < 1e-14);
        assert_eq!(cube().deriv(Var::U).eval(2.0, 0.0), 12.0);
    }

    #[test]
    fn one_sided_at_kink() {
        let e = Expr::product(vec![Expr::min(Expr::c(1.0), Expr::u()), Expr::u()]);
        assert_eq!(e.eval_dual(1.0, 0.0, Var::U, Side::Left).1, 2.0);
        assert_eq!(e.eval_dual(1.0, 0.0, Var::U, Side::Right).1, 1.0);
    }

    #[test]
    fn log_space_matches_linear() {
        let e = Expr::sum(vec![
            Expr::product(vec![Expr::pow(Expr::u(), 2.5), Expr::log_shift(Var::U, 2.0, 1, 0.3)]),
            Expr::product(vec![Expr::c(0.5), Expr::pow(Expr::u(), 3.0)]),
        ]);
        for &x in &[1e-3, 0.7, 5.0, 1e4] {
            let l = e.eval_ln(f64::ln(x), 0.0);
            assert!((l.to_linear() / e.eval(x, 0.0) - 1.0).abs() < 1e-12);
        }
        let big = e.eval_ln(5000.0, 0.0);
        assert!(big.sign == 1.0 && (big.ln - (3.0 * 5000.0 + 0.5f64.ln())).abs() < 1e-9);
    }

    #[test]
    fn monomial_flattening() {
        let e = Expr::sum(vec![Expr::pow(Expr::u(), 2.0), Expr::product(vec![Expr::c(3.0), Expr::u()])]);
        assert_eq!(e.as_monomials(), Some(vec![(1.0, 2.0), (3.0, 1.0)]));
        assert!(Expr::log_shift(Var::U, 1.0, 1, 1.0).as_monomials().is_none());
    }
}
