//! A small expression language for function arguments on the command line.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := power (('*' | '/') power)*
//! power   := unary ('^' power)?
//! unary   := '-' unary | primary
//! primary := number | 'x' | 'S(x)' | 'pi' | 'e'
//!          | ('exp' | 'sin' | 'cos') '(' expr ')' | '(' expr ')'
//! ```
//!
//! `^` binds tighter than unary minus on its left operand only through
//! parentheses: `-x^2` is `-(x^2)`.

use std::str::FromStr;

use crate::error::{Error, Result};
use crate::falpha::FractalFn;
use crate::staircase::StaircaseFn;

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(f64),
    X,
    Staircase,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
    Exp(Box<Expr>),
    Sin(Box<Expr>),
    Cos(Box<Expr>),
}

impl Expr {
    pub fn parse(src: &str) -> Result<Expr> {
        let mut p = Parser { src, pos: 0 };
        let e = p.expr()?;
        p.skip_ws();
        if p.pos != src.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(e)
    }

    /// Whether the expression uses the raw coordinate `x` (not only `S(x)`).
    pub fn uses_x(&self) -> bool {
        use Expr::*;
        match self {
            X => true,
            Num(_) | Staircase => false,
            Neg(a) | Exp(a) | Sin(a) | Cos(a) => a.uses_x(),
            Add(a, b) | Sub(a, b) | Mul(a, b) | Div(a, b) | Pow(a, b) => a.uses_x() || b.uses_x(),
        }
    }

    /// Value at `x`, given `s = S(x)`.
    pub fn eval(&self, x: f64, s: f64) -> f64 {
        use Expr::*;
        match self {
            Num(v) => *v,
            X => x,
            Staircase => s,
            Neg(a) => -a.eval(x, s),
            Add(a, b) => a.eval(x, s) + b.eval(x, s),
            Sub(a, b) => a.eval(x, s) - b.eval(x, s),
            Mul(a, b) => a.eval(x, s) * b.eval(x, s),
            Div(a, b) => a.eval(x, s) / b.eval(x, s),
            Pow(a, b) => {
                let base = a.eval(x, s);
                let exp = b.eval(x, s);
                if exp == exp.round() && exp.abs() <= i32::MAX as f64 {
                    base.powi(exp as i32)
                } else {
                    base.powf(exp)
                }
            }
            Exp(a) => a.eval(x, s).exp(),
            Sin(a) => a.eval(x, s).sin(),
            Cos(a) => a.eval(x, s).cos(),
        }
    }

    /// The expression as a function with fractal support. Expressions in
    /// `S(x)` alone become exact functions of the measure coordinate.
    pub fn to_fractal_fn(&self, sf: StaircaseFn) -> FractalFn {
        let e = self.clone();
        if self.uses_x() {
            FractalFn::of_x(move |x| match sf.eval(x) {
                Ok(s) => e.eval(x, s),
                Err(_) => f64::NAN,
            })
        } else {
            FractalFn::of_staircase(move |u| e.eval(f64::NAN, u))
        }
    }
}

impl FromStr for Expr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Expr::parse(s)
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<()> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.error(&format!("expected '{token}'")))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat("+") {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat("-") {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.power()?;
        loop {
            if self.eat("*") {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.power()?));
            } else if self.eat("/") {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.power()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn power(&mut self) -> Result<Expr> {
        if self.eat("-") {
            return Ok(Expr::Neg(Box::new(self.power()?)));
        }
        let base = self.primary()?;
        if self.eat("^") {
            return Ok(Expr::Pow(Box::new(base), Box::new(self.power()?)));
        }
        Ok(base)
    }

    fn ident(&mut self) -> &str {
        self.skip_ws();
        let len = self
            .rest()
            .find(|c: char| !c.is_ascii_alphabetic())
            .unwrap_or(self.rest().len());
        let start = self.pos;
        self.pos += len;
        &self.src[start..start + len]
    }

    fn primary(&mut self) -> Result<Expr> {
        self.skip_ws();
        let c = match self.rest().chars().next() {
            Some(c) => c,
            None => return Err(self.error("unexpected end of input")),
        };
        if c == '(' {
            self.pos += 1;
            let e = self.expr()?;
            self.expect(")")?;
            return Ok(e);
        }
        if c.is_ascii_digit() || c == '.' {
            return self.number();
        }
        if c.is_ascii_alphabetic() {
            let start = self.pos;
            let name = self.ident().to_string();
            return match name.as_str() {
                "x" => Ok(Expr::X),
                "pi" => Ok(Expr::Num(std::f64::consts::PI)),
                "e" => Ok(Expr::Num(std::f64::consts::E)),
                "S" => {
                    self.expect("(")?;
                    self.expect("x")?;
                    self.expect(")")?;
                    Ok(Expr::Staircase)
                }
                "exp" | "sin" | "cos" => {
                    self.expect("(")?;
                    let arg = Box::new(self.expr()?);
                    self.expect(")")?;
                    Ok(match name.as_str() {
                        "exp" => Expr::Exp(arg),
                        "sin" => Expr::Sin(arg),
                        _ => Expr::Cos(arg),
                    })
                }
                _ => {
                    self.pos = start;
                    Err(self.error(&format!("unknown name '{name}'")))
                }
            };
        }
        Err(self.error(&format!("unexpected character '{c}'")))
    }

    fn number(&mut self) -> Result<Expr> {
        let rest = self.rest();
        let mut end = 0;
        let bytes = rest.as_bytes();
        while end < bytes.len() && (bytes[end].is_ascii_digit() || bytes[end] == b'.') {
            end += 1;
        }
        // optional exponent
        if end < bytes.len() && (bytes[end] == b'e' || bytes[end] == b'E') {
            let mut k = end + 1;
            if k < bytes.len() && (bytes[k] == b'+' || bytes[k] == b'-') {
                k += 1;
            }
            if k < bytes.len() && bytes[k].is_ascii_digit() {
                while k < bytes.len() && bytes[k].is_ascii_digit() {
                    k += 1;
                }
                end = k;
            }
        }
        let text = &rest[..end];
        let value = text
            .parse::<f64>()
            .map_err(|_| self.error(&format!("malformed number '{text}'")))?;
        self.pos += end;
        Ok(Expr::Num(value))
    }
}
