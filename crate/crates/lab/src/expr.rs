//! A small expression language for closed-form targets.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | power
//! power := atom ('^' unary)?
//! atom  := number ['i'] | 'i' | 's' | 'pi' | 'e' | NAME | NAME '(' expr ')'
//!        | 'exp' '(' expr ')' | 'log' '(' expr ')' | '(' expr ')'
//! ```
//!
//! `NAME` is an L-function of the registry; bare `NAME` means `NAME(s)`.
//! Values are carried in log form so `exp(s^2)` stays finite far out.

use std::f64::consts::{E, PI};

use selberg_core::logc::wrap_phase;
use selberg_core::{c64, Analytic, Complex64, LogComplex};

use crate::config::Registry;
use crate::error::LabError;

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Const(Complex64),
    S,
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
    Exp(Box<Expr>),
    Log(Box<Expr>),
    /// Registry index and argument.
    L(usize, Box<Expr>),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Op(char),
}

fn lex(src: &str) -> Result<Vec<Tok>, LabError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            // exponent part, only when followed by a digit or sign and digit
            if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                let mut j = i + 1;
                if j < chars.len() && (chars[j] == '+' || chars[j] == '-') {
                    j += 1;
                }
                if j < chars.len() && chars[j].is_ascii_digit() {
                    i = j;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                }
            }
            let text: String = chars[start..i].iter().collect();
            let v = text.parse::<f64>().map_err(|_| LabError::config(format!("bad number {text:?}")))?;
            out.push(Tok::Num(v));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(LabError::config(format!("unexpected character {c:?} in expression")));
        }
    }
    Ok(out)
}

struct Parser<'r> {
    toks: Vec<Tok>,
    pos: usize,
    reg: &'r Registry,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, op: char) -> Result<(), LabError> {
        if self.eat(op) {
            Ok(())
        } else {
            Err(LabError::config(format!("expected {op:?} in expression")))
        }
    }

    fn expr(&mut self) -> Result<Expr, LabError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, LabError> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, LabError> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        let base = self.atom()?;
        if self.eat('^') {
            return Ok(Expr::Pow(Box::new(base), Box::new(self.unary()?)));
        }
        Ok(base)
    }

    fn call_arg(&mut self) -> Result<Option<Expr>, LabError> {
        if self.eat('(') {
            let e = self.expr()?;
            self.expect(')')?;
            Ok(Some(e))
        } else {
            Ok(None)
        }
    }

    fn atom(&mut self) -> Result<Expr, LabError> {
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Num(v)) => {
                self.pos += 1;
                if self.peek() == Some(&Tok::Ident("i".into())) {
                    self.pos += 1;
                    return Ok(Expr::Const(c64(0.0, v)));
                }
                Ok(Expr::Const(c64(v, 0.0)))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                match name.as_str() {
                    "s" => Ok(Expr::S),
                    "i" => Ok(Expr::Const(c64(0.0, 1.0))),
                    "pi" => Ok(Expr::Const(c64(PI, 0.0))),
                    "e" => Ok(Expr::Const(c64(E, 0.0))),
                    "exp" | "log" => {
                        let arg = self.call_arg()?.ok_or_else(|| LabError::config(format!("{name} needs an argument")))?;
                        Ok(if name == "exp" { Expr::Exp(Box::new(arg)) } else { Expr::Log(Box::new(arg)) })
                    }
                    _ => {
                        let idx = self.reg.index_of(&name).ok_or_else(|| LabError::config(format!("unknown name {name:?} in expression")))?;
                        let arg = self.call_arg()?.unwrap_or(Expr::S);
                        Ok(Expr::L(idx, Box::new(arg)))
                    }
                }
            }
            Some(Tok::Op(c)) => Err(LabError::config(format!("unexpected {c:?} in expression"))),
            None => Err(LabError::config("expression ended early")),
        }
    }
}

impl Expr {
    pub fn parse(src: &str, reg: &Registry) -> Result<Expr, LabError> {
        let mut p = Parser { toks: lex(src)?, pos: 0, reg };
        let e = p.expr()?;
        if p.pos != p.toks.len() {
            return Err(LabError::config(format!("trailing input in expression {src:?}")));
        }
        Ok(e)
    }

    pub fn is_const(&self) -> bool {
        match self {
            Expr::Const(_) => true,
            Expr::S => false,
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) | Expr::Pow(a, b) => a.is_const() && b.is_const(),
            Expr::Neg(a) | Expr::Exp(a) | Expr::Log(a) | Expr::L(_, a) => a.is_const(),
        }
    }

    /// Direct evaluation of a constant expression, without the log-space
    /// round trip; `None` when `s` occurs or an L-function fails.
    pub fn const_value(&self, reg: &Registry) -> Option<Complex64> {
        Some(match self {
            Expr::Const(c) => *c,
            Expr::S => return None,
            Expr::Add(a, b) => a.const_value(reg)? + b.const_value(reg)?,
            Expr::Sub(a, b) => a.const_value(reg)? - b.const_value(reg)?,
            Expr::Mul(a, b) => a.const_value(reg)? * b.const_value(reg)?,
            Expr::Div(a, b) => a.const_value(reg)? / b.const_value(reg)?,
            Expr::Neg(a) => -a.const_value(reg)?,
            Expr::Pow(a, b) => {
                let (x, y) = (a.const_value(reg)?, b.const_value(reg)?);
                if y.im == 0.0 && y.re.fract() == 0.0 && y.re.abs() <= 1024.0 {
                    x.powi(y.re as i32)
                } else {
                    x.powc(y)
                }
            }
            Expr::Exp(a) => a.const_value(reg)?.exp(),
            Expr::Log(a) => a.const_value(reg)?.ln(),
            Expr::L(i, a) => reg.by_index(*i).evaluate(a.const_value(reg)?).ok()?,
        })
    }

    fn nonneg_int_exponent(&self) -> bool {
        matches!(self, Expr::Const(c) if c.im == 0.0 && c.re >= 0.0 && c.re.fract() == 0.0)
    }

    /// False when the expression is syntactically entire: no division except
    /// by a zero-free factor, no `log` or non-integer power of a non-constant, and
    /// only entire L-functions.
    pub fn may_have_poles(&self, reg: &Registry) -> bool {
        match self {
            Expr::Const(_) | Expr::S => false,
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => a.may_have_poles(reg) || b.may_have_poles(reg),
            Expr::Div(a, b) => a.may_have_poles(reg) || b.may_have_poles(reg) || !b.zero_free(reg),
            Expr::Pow(a, b) => {
                a.may_have_poles(reg) || b.may_have_poles(reg) || !(a.is_const() || b.nonneg_int_exponent())
            }
            Expr::Neg(a) | Expr::Exp(a) => a.may_have_poles(reg),
            Expr::Log(a) => !a.is_const() || a.may_have_poles(reg),
            Expr::L(i, a) => reg.by_index(*i).pole_order() > 0 || a.may_have_poles(reg),
        }
    }

    /// Entire and provably without zeros: nonzero constants, `exp(...)`,
    /// `c^(...)` for constant `c != 0`, and products of these.
    fn zero_free(&self, reg: &Registry) -> bool {
        match self {
            Expr::Const(c) => *c != c64(0.0, 0.0),
            Expr::Exp(a) => !a.may_have_poles(reg),
            Expr::Pow(a, b) => match **a {
                Expr::Const(c) => c != c64(0.0, 0.0) && !b.may_have_poles(reg),
                _ => a.zero_free(reg) && b.nonneg_int_exponent(),
            },
            Expr::Mul(a, b) => a.zero_free(reg) && b.zero_free(reg),
            Expr::Neg(a) => a.zero_free(reg),
            _ => {
                let v = self.ln_eval(c64(0.0, 0.0), reg);
                self.is_const() && v.is_finite() && !v.is_zero()
            }
        }
    }

    pub fn ln_eval(&self, s: Complex64, reg: &Registry) -> LogComplex {
        match self {
            Expr::Const(c) => LogComplex::from_value(*c),
            Expr::S => LogComplex::from_value(s),
            Expr::Add(a, b) => a.ln_eval(s, reg).add(&b.ln_eval(s, reg)),
            Expr::Sub(a, b) => a.ln_eval(s, reg).sub(&b.ln_eval(s, reg)),
            Expr::Mul(a, b) => a.ln_eval(s, reg) * b.ln_eval(s, reg),
            Expr::Div(a, b) => a.ln_eval(s, reg) / b.ln_eval(s, reg),
            Expr::Neg(a) => -a.ln_eval(s, reg),
            Expr::Pow(a, b) => {
                let base = a.ln_eval(s, reg);
                if let Expr::Const(c) = **b {
                    if c.im == 0.0 && c.re.fract() == 0.0 && c.re.abs() <= 1024.0 {
                        return base.powi(c.re as i32);
                    }
                }
                if base.is_zero() {
                    return LogComplex::ZERO;
                }
                let principal = c64(base.0.re, wrap_phase(base.0.im));
                LogComplex(b.ln_eval(s, reg).exp() * principal)
            }
            Expr::Exp(a) => LogComplex(a.ln_eval(s, reg).exp()),
            Expr::Log(a) => {
                let v = a.ln_eval(s, reg);
                LogComplex::from_value(c64(v.0.re, wrap_phase(v.0.im)))
            }
            Expr::L(i, a) => reg.by_index(*i).ln_eval(a.ln_eval(s, reg).exp()),
        }
    }
}

/// An expression bound to its registry.
pub struct ExprFn<'r> {
    pub expr: Expr,
    pub reg: &'r Registry,
}

impl Analytic for ExprFn<'_> {
    fn ln_eval(&self, s: Complex64) -> LogComplex {
        self.expr.ln_eval(s, self.reg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eval(src: &str, s: Complex64) -> Complex64 {
        let reg = Registry::default();
        Expr::parse(src, &reg).unwrap().ln_eval(s, &reg).exp()
    }

    #[test]
    fn arithmetic_and_precedence() {
        let s = c64(2.0, 0.0);
        assert!((eval("1+2/4^s+3/9^s", s) - c64(1.0 + 2.0 / 16.0 + 3.0 / 81.0, 0.0)).norm() < 1e-15);
        assert!((eval("-2^2", s) - c64(-4.0, 0.0)).norm() < 1e-15);
        assert!((eval("2^-s", s) - c64(0.25, 0.0)).norm() < 1e-15);
        assert!((eval("(s-1)*(s+1)", s) - c64(3.0, 0.0)).norm() < 1e-14);
        assert!((eval("3i*s", s) - c64(0.0, 6.0)).norm() < 1e-15);
        assert!((eval("1.5e1 + 2e-1", s) - c64(15.2, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn functions_and_catalog() {
        let s = c64(0.3, 0.7);
        assert!((eval("exp(s)", s) - s.exp()).norm() < 1e-15);
        assert!((eval("log(2)", s) - c64(2f64.ln(), 0.0)).norm() < 1e-15);
        assert!((eval("E1", s) - (c64(1.0, 0.0) + 2.0 * (-s * 4f64.ln()).exp())).norm() < 1e-14);
        assert!((eval("E1(2)", s) - c64(1.125, 0.0)).norm() < 1e-14);
        // far beyond the f64 range, still finite in log form
        let reg = Registry::default();
        let v = Expr::parse("exp(s^2)", &reg).unwrap().ln_eval(c64(100.0, 0.0), &reg);
        assert!((v.ln_abs() - 1e4).abs() < 1e-10);
    }

    #[test]
    fn pole_detection() {
        let reg = Registry::default();
        let p = |src: &str| Expr::parse(src, &reg).unwrap().may_have_poles(&reg);
        assert!(!p("1+2/4^s+3/9^s"));
        assert!(!p("exp(s^2)*E3"));
        assert!(p("1/(exp(s)-1)"));
        assert!(p("zeta"));
        assert!(p("s^-1"));
        assert!(p("log(s)"));
    }

    #[test]
    fn syntax_errors() {
        let reg = Registry::default();
        for bad in ["", "1+", "(s", "foo(s)", "s $ 2", "exp", "s s"] {
            assert!(matches!(Expr::parse(bad, &reg), Err(LabError::Config(_))), "{bad}");
        }
    }
}
