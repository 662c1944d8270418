//! Recursive-descent parser for the nonlinearity language.
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := unary (("*" | "/") unary)*
//! unary  := "-" unary | factor
//! factor := atom ("^" exponent)?
//! atom   := "u" | "v" | number | name | name "(" args ")" | "(" expr ")"
//! ```
//!
//! Exponents must be constant: a signed number, a parameter, a constant
//! function call or a parenthesised constant expression. Besides `log`, `min`,
//! `max` and `sel`, the constant functions `pS(n)`, `pstar(n)`, `kappa(n)` and
//! `theta(K)` are available.

use std::collections::BTreeMap;

use super::expr::{Expr, Var};
use super::special;
use crate::criteria::exponents::{exponents, Geometry};
use crate::error::{Error, Result};

/// Parse `text` with the given parameter bindings.
pub fn parse_expr(text: &str, params: &BTreeMap<String, f64>) -> Result<Expr> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, params };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(e)
}

/// Parse a constant expression such as `pS(3) - 0.5`.
pub fn parse_const(text: &str, params: &BTreeMap<String, f64>) -> Result<f64> {
    let e = parse_expr(text, params)?;
    if !e.is_constant() {
        return Err(Error::Syntax { offset: 0, message: "expected a constant expression".into() });
    }
    let x = e.eval(0.0, 0.0);
    if !x.is_finite() {
        return Err(Error::Domain(format!("`{text}` evaluates to {x}")));
    }
    Ok(x)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    params: &'a BTreeMap<String, f64>,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::Syntax { offset: self.pos, message: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected `{}`", c as char)))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut terms = vec![self.term()?];
        loop {
            if self.eat(b'+') {
                terms.push(self.term()?);
            } else if self.eat(b'-') {
                terms.push(Expr::negate(self.term()?));
            } else {
                break;
            }
        }
        Ok(if terms.len() == 1 { terms.pop().expect("one term") } else { Expr::sum(terms) })
    }

    fn term(&mut self) -> Result<Expr> {
        let mut fs = vec![self.unary()?];
        loop {
            if self.eat(b'*') {
                fs.push(self.unary()?);
            } else if self.eat(b'/') {
                fs.push(Expr::pow(self.unary()?, -1.0));
            } else {
                break;
            }
        }
        Ok(if fs.len() == 1 { fs.pop().expect("one factor") } else { Expr::product(fs) })
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat(b'-') {
            let e = self.unary()?;
            return Ok(match e {
                Expr::Const(c) => Expr::Const(-c),
                e => Expr::negate(e),
            });
        }
        self.factor()
    }

    fn factor(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let e = self.exponent()?;
            return Ok(match base {
                Expr::Var(_) | Expr::LogShift(_) | Expr::Const(_) => Expr::pow(base, e),
                b => Expr::Pow(Box::new(b), e),
            });
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<f64> {
        let start = self.pos;
        let neg = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        let e = self.atom()?;
        if !e.is_constant() {
            self.pos = start;
            return Err(self.err("exponent must be constant"));
        }
        let x = e.eval(0.0, 0.0);
        if !x.is_finite() {
            return Err(Error::Syntax { offset: start, message: format!("exponent evaluates to {x}") });
        }
        Ok(if neg { -x } else { x })
    }

    fn number(&mut self) -> Result<f64> {
        let start = self.pos;
        let s = self.src;
        let mut i = self.pos;
        while i < s.len() && (s[i].is_ascii_digit() || s[i] == b'.') {
            i += 1;
        }
        if i < s.len() && (s[i] == b'e' || s[i] == b'E') {
            let mut j = i + 1;
            if j < s.len() && (s[j] == b'+' || s[j] == b'-') {
                j += 1;
            }
            if j < s.len() && s[j].is_ascii_digit() {
                while j < s.len() && s[j].is_ascii_digit() {
                    j += 1;
                }
                i = j;
            }
        }
        let txt = std::str::from_utf8(&s[start..i]).expect("ascii");
        self.pos = i;
        txt.parse::<f64>().map_err(|_| Error::Syntax { offset: start, message: format!("bad number `{txt}`") })
    }

    fn ident(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn args(&mut self, n: usize) -> Result<Vec<Expr>> {
        self.expect(b'(')?;
        let mut v = vec![self.expr()?];
        while self.eat(b',') {
            v.push(self.expr()?);
        }
        self.expect(b')')?;
        if v.len() != n {
            return Err(self.err(&format!("expected {n} argument(s), found {}", v.len())));
        }
        Ok(v)
    }

    fn const_arg(&mut self) -> Result<f64> {
        let at = self.pos;
        let a = self.args(1)?.pop().expect("one arg");
        if !a.is_constant() {
            return Err(Error::Syntax { offset: at, message: "argument must be constant".into() });
        }
        Ok(a.eval(0.0, 0.0))
    }

    fn atom(&mut self) -> Result<Expr> {
        let c = self.peek().ok_or_else(|| self.err("unexpected end of input"))?;
        if c == b'(' {
            self.pos += 1;
            let e = self.expr()?;
            self.expect(b')')?;
            return Ok(e);
        }
        if c.is_ascii_digit() || c == b'.' {
            return Ok(Expr::Const(self.number()?));
        }
        if !(c.is_ascii_alphabetic() || c == b'_') {
            return Err(self.err(&format!("unexpected `{}`", c as char)));
        }
        let at = self.pos;
        let name = self.ident();
        match name.as_str() {
            "u" => Ok(Expr::Var(Var::U)),
            "v" => Ok(Expr::Var(Var::V)),
            "log" => {
                let inner = self.args(1)?.pop().expect("one arg");
                Ok(make_log(inner))
            }
            "min" => {
                let mut a = self.args(2)?;
                let b = a.pop().expect("two");
                Ok(Expr::min(a.pop().expect("two"), b))
            }
            "max" => {
                let mut a = self.args(2)?;
                let b = a.pop().expect("two");
                Ok(Expr::max(a.pop().expect("two"), b))
            }
            "sel" => {
                let mut a = self.args(4)?.into_iter();
                let (l, r, x, y) = (a.next(), a.next(), a.next(), a.next());
                Ok(Expr::Select(Box::new([l.expect("4"), r.expect("4"), x.expect("4"), y.expect("4")])))
            }
            "pS" | "pstar" | "kappa" => {
                let n = self.const_arg()?;
                if n < 1.0 || n.fract() != 0.0 {
                    return Err(Error::Syntax {
                        offset: at,
                        message: format!("dimension must be a positive integer, got {n}"),
                    });
                }
                let ex = exponents(n as u32, Geometry::Whole);
                Ok(Expr::Const(match name.as_str() {
                    "pS" => ex.p_sobolev,
                    "pstar" => ex.p_star,
                    _ => ex.kappa,
                }))
            }
            "theta" => {
                let k = self.const_arg()?;
                special::theta(k).map(Expr::Const)
            }
            _ => {
                if self.peek() == Some(b'(') {
                    return Err(Error::Syntax { offset: at, message: format!("unknown function `{name}`") });
                }
                match self.params.get(&name) {
                    Some(v) if v.is_finite() => Ok(Expr::Const(*v)),
                    Some(v) => Err(Error::NonFiniteParam { name, value: *v }),
                    None => Err(Error::UnboundParam(name)),
                }
            }
        }
    }
}

/// Recognise `log(K + x^{±1})` as a shifted-log node.
fn make_log(inner: Expr) -> Expr {
    if let Expr::Sum(xs) = &inner {
        if xs.len() == 2 {
            if let Expr::Const(k) = xs[0] {
                if k > 0.0 {
                    let var_sigma = match &xs[1] {
                        Expr::Var(v) => Some((*v, 1)),
                        Expr::Pow(b, e) if *e == 1.0 || *e == -1.0 => match **b {
                            Expr::Var(v) => Some((v, *e as i8)),
                            _ => None,
                        },
                        _ => None,
                    };
                    if let Some((v, s)) = var_sigma {
                        return Expr::log_shift(v, k, s, 1.0);
                    }
                }
            }
        }
    }
    Expr::log(inner)
}
