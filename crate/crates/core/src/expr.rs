//! A small arithmetic expression language shared by matrix specs (index
//! bounds, symbol arguments) and the registry's closed forms.
//!
//! Grammar: integers, identifiers, `+ - * / ^`, parentheses and function
//! calls `name(arg, ...)`. `^` binds tightest and is right associative;
//! unary minus binds looser than `^`, so `-p^2 = -(p^2)`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Num(BigInt),
    Ident(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
    Call(String, Vec<Expr>),
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(src: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push(Token::Num(s.parse().expect("digits")));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                i += 1;
            }
            out.push(Token::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^(),".contains(c) {
            out.push(Token::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character `{c}` in `{src}`")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    src: &'a str,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Token::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at token {} in `{}`", self.pos, self.src))
    }

    fn sum(&mut self) -> Result<Expr> {
        let mut lhs = self.product()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.product()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.product()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn product(&mut self) -> Result<Expr> {
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

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            Ok(Expr::Neg(Box::new(self.unary()?)))
        } else if self.eat('+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.eat('^') {
            let exp = self.unary()?;
            Ok(Expr::Pow(Box::new(base), Box::new(exp)))
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek().cloned() {
            Some(Token::Num(n)) => {
                self.pos += 1;
                Ok(Expr::Num(n))
            }
            Some(Token::Ident(name)) => {
                self.pos += 1;
                if self.eat('(') {
                    let mut args = vec![self.sum()?];
                    while self.eat(',') {
                        args.push(self.sum()?);
                    }
                    if !self.eat(')') {
                        return Err(self.err("expected `)`"));
                    }
                    Ok(Expr::Call(name, args))
                } else {
                    Ok(Expr::Ident(name))
                }
            }
            Some(Token::Op('(')) => {
                self.pos += 1;
                let e = self.sum()?;
                if !self.eat(')') {
                    return Err(self.err("expected `)`"));
                }
                Ok(e)
            }
            _ => Err(self.err("expected a number, name or `(`")),
        }
    }
}

impl Expr {
    pub fn parse(src: &str) -> Result<Expr> {
        let mut p = Parser {
            tokens: tokenize(src)?,
            pos: 0,
            src,
        };
        let e = p.sum()?;
        if p.pos != p.tokens.len() {
            return Err(p.err("trailing input"));
        }
        Ok(e)
    }

    /// Every identifier referenced (function names excluded).
    pub fn identifiers(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.walk(&mut |e| {
            if let Expr::Ident(n) = e {
                if !out.contains(n) {
                    out.push(n.clone());
                }
            }
        });
        out
    }

    fn walk(&self, f: &mut impl FnMut(&Expr)) {
        f(self);
        match self {
            Expr::Num(_) | Expr::Ident(_) => {}
            Expr::Neg(a) => a.walk(f),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) | Expr::Pow(a, b) => {
                a.walk(f);
                b.walk(f);
            }
            Expr::Call(_, args) => args.iter().for_each(|a| a.walk(f)),
        }
    }

    /// Evaluates a variable-free expression to a rational, resolving names
    /// through `lookup`. Only `floor(.)` is recognized as a function.
    pub fn eval_rational(&self, lookup: &dyn Fn(&str) -> Option<BigRational>) -> Result<BigRational> {
        let r = |e: &Expr| e.eval_rational(lookup);
        Ok(match self {
            Expr::Num(n) => BigRational::from_integer(n.clone()),
            Expr::Ident(name) => {
                lookup(name).ok_or_else(|| Error::Eval(format!("unknown name `{name}`")))?
            }
            Expr::Neg(a) => -r(a)?,
            Expr::Add(a, b) => r(a)? + r(b)?,
            Expr::Sub(a, b) => r(a)? - r(b)?,
            Expr::Mul(a, b) => r(a)? * r(b)?,
            Expr::Div(a, b) => {
                let d = r(b)?;
                if d.is_zero() {
                    return Err(Error::Eval(format!("division by zero in `{self}`")));
                }
                r(a)? / d
            }
            Expr::Pow(a, b) => pow_rational(&r(a)?, &r(b)?)?,
            Expr::Call(f, args) if f == "floor" && args.len() == 1 => {
                BigRational::from_integer(r(&args[0])?.floor().to_integer())
            }
            Expr::Call(f, _) => return Err(Error::Eval(format!("unknown function `{f}`"))),
        })
    }

    /// Evaluates to an exact integer, failing on a fractional result.
    pub fn eval_integer(&self, lookup: &dyn Fn(&str) -> Option<BigRational>) -> Result<i64> {
        let v = self.eval_rational(lookup)?;
        if !v.is_integer() {
            return Err(Error::NonIntegral(v.to_string(), self.to_string()));
        }
        v.to_integer()
            .to_i64()
            .ok_or_else(|| Error::Eval(format!("`{self}` overflows i64")))
    }
}

/// `base^exp` for a non-negative integral exponent.
pub(crate) fn pow_rational(base: &BigRational, exp: &BigRational) -> Result<BigRational> {
    if !exp.is_integer() {
        return Err(Error::NonIntegral(exp.to_string(), "exponent".into()));
    }
    let e = exp
        .to_integer()
        .to_u32()
        .ok_or_else(|| Error::Eval(format!("exponent {exp} is negative or too large")))?;
    Ok(num_traits::pow(base.clone(), e as usize))
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(n) => write!(f, "{n}"),
            Expr::Ident(s) => write!(f, "{s}"),
            Expr::Neg(a) => write!(f, "-({a})"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "{a}*{b}"),
            Expr::Div(a, b) => write!(f, "({a})/({b})"),
            Expr::Pow(a, b) => write!(f, "({a})^({b})"),
            Expr::Call(name, args) => {
                let args: Vec<String> = args.iter().map(|a| a.to_string()).collect();
                write!(f, "{name}({})", args.join(", "))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eval_with_p(src: &str, p: i64) -> Result<BigRational> {
        Expr::parse(src)?.eval_rational(&|name| match name {
            "p" | "n" => Some(BigRational::from_integer(p.into())),
            _ => None,
        })
    }

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn precedence() {
        assert_eq!(eval_with_p("1 + 2*3", 0).unwrap(), r(7, 1));
        assert_eq!(eval_with_p("-p^2", 3).unwrap(), r(-9, 1));
        assert_eq!(eval_with_p("(-p)^3", 3).unwrap(), r(-27, 1));
        assert_eq!(eval_with_p("2^3^2", 0).unwrap(), r(512, 1));
        assert_eq!(eval_with_p("(p-1)/2", 13).unwrap(), r(6, 1));
        assert_eq!(eval_with_p("p/2", 7).unwrap(), r(7, 2));
        assert_eq!(eval_with_p("floor((p-2)/3)", 11).unwrap(), r(3, 1));
        assert_eq!(eval_with_p("10 - 3 - 2", 0).unwrap(), r(5, 1));
        assert_eq!(eval_with_p("12/2/3", 0).unwrap(), r(2, 1));
    }

    #[test]
    fn errors() {
        assert!(Expr::parse("1 +").is_err());
        assert!(Expr::parse("(1").is_err());
        assert!(Expr::parse("1 $ 2").is_err());
        assert!(eval_with_p("q", 1).is_err());
        assert!(eval_with_p("2^(1/2)", 1).is_err());
        assert!(eval_with_p("2^(p-5)", 3).is_err());
        assert!(eval_with_p("1/(p-3)", 3).is_err());
        assert!(Expr::parse("(p-1)/2").unwrap().eval_integer(&|_| Some(r(6, 1))).is_err());
    }

    #[test]
    fn identifiers_listed() {
        let e = Expr::parse("a1*(w*x - (y+1)*(z+1)) + leg(2)*p*b1*x").unwrap();
        let ids = e.identifiers();
        for n in ["a1", "w", "x", "y", "z", "p", "b1"] {
            assert!(ids.contains(&n.to_string()), "{n}");
        }
        assert!(!ids.contains(&"leg".to_string()));
    }
}
