//! Evaluation of closed-form right-hand sides to multiaffine polynomials.
//!
//! Names understood by [`RhsContext`]:
//!
//! | name | value |
//! |------|-------|
//! | `p`, `n` | the modulus |
//! | `a`, `b`, `a'`, `b'` | `a_p`, `b_p`, `a'_p`, `b'_p` |
//! | `h` | `h(-p)` |
//! | `x`, `y`, `z`, `w` | polynomial variables |
//! | `leg(t)` | Jacobi symbol `(t/n)` |
//! | `phi(t)` | Euler's totient |
//! | `floor(t)` | integer part |
//!
//! Any other name must be bound with [`RhsContext::bind`].

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{euler_phi, is_prime, jacobi_big};
use crate::error::{Error, Result};
use crate::expr::{pow_rational, Expr};
use crate::multiaffine::{MultiAffinePoly, Var, VarSet};
use crate::quadfield::{invariants, QuadInvariants};

/// A multiaffine polynomial with rational coefficients, indexed by the
/// bitmask of its monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatPoly([BigRational; 16]);

impl RatPoly {
    pub fn constant(c: BigRational) -> Self {
        let mut p = RatPoly(Default::default());
        p.0[0] = c;
        p
    }

    pub fn var(v: Var) -> Self {
        let mut p = RatPoly(Default::default());
        p.0[1 << v.index()] = BigRational::one();
        p
    }

    /// The constant term if no other monomial is present.
    pub fn as_scalar(&self) -> Option<&BigRational> {
        self.0[1..].iter().all(Zero::is_zero).then_some(&self.0[0])
    }

    /// Variables with a nonzero coefficient somewhere.
    pub fn support(&self) -> VarSet {
        let bits = (0..16u8)
            .filter(|&m| !self.0[m as usize].is_zero())
            .fold(0, |acc, m| acc | m);
        VarSet::from_bits(bits)
    }

    pub fn coeff(&self, s: VarSet) -> &BigRational {
        &self.0[s.bits() as usize]
    }

    fn zip(&self, o: &Self, f: impl Fn(&BigRational, &BigRational) -> BigRational) -> Self {
        RatPoly(std::array::from_fn(|i| f(&self.0[i], &o.0[i])))
    }

    pub fn add(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a + b)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a - b)
    }

    pub fn neg(&self) -> Self {
        RatPoly(std::array::from_fn(|i| -&self.0[i]))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        RatPoly(std::array::from_fn(|i| &self.0[i] * c))
    }

    /// Product; fails if a variable would appear squared.
    pub fn mul(&self, o: &Self) -> Result<Self> {
        let mut out = RatPoly(Default::default());
        for (i, a) in self.0.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in o.0.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                if i & j != 0 {
                    return Err(Error::Eval(format!(
                        "product repeats variable(s) {}",
                        VarSet::from_bits((i & j) as u8)
                    )));
                }
                out.0[i | j] += a * b;
            }
        }
        Ok(out)
    }

    /// Integer polynomial over `vars`; every coefficient must be integral
    /// and supported on `vars`.
    pub fn to_integer_poly(&self, vars: VarSet, source: &str) -> Result<MultiAffinePoly> {
        let mut out = MultiAffinePoly::zero(vars);
        for (i, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !c.is_integer() {
                return Err(Error::NonIntegral(c.to_string(), source.to_string()));
            }
            out.set_coeff(VarSet::from_bits(i as u8), c.to_integer())?;
        }
        Ok(out)
    }
}

/// Values available while evaluating a right-hand side at one modulus.
#[derive(Clone, Debug)]
pub struct RhsContext {
    modulus: u64,
    bindings: HashMap<String, BigRational>,
    inv: Option<Arc<QuadInvariants>>,
}

impl RhsContext {
    pub fn new(modulus: u64) -> Self {
        RhsContext {
            modulus,
            bindings: HashMap::new(),
            inv: None,
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn bind(mut self, name: &str, value: impl Into<BigInt>) -> Self {
        self.bindings
            .insert(name.to_string(), BigRational::from_integer(value.into()));
        self
    }

    fn invariants(&mut self) -> Result<Arc<QuadInvariants>> {
        if self.inv.is_none() {
            if !is_prime(self.modulus) || self.modulus == 2 {
                return Err(Error::NotOddPrime(self.modulus));
            }
            self.inv = Some(invariants(self.modulus)?);
        }
        Ok(Arc::clone(self.inv.as_ref().unwrap()))
    }

    fn ident(&mut self, name: &str) -> Result<RatPoly> {
        let scalar = |v: BigRational| Ok(RatPoly::constant(v));
        match name {
            "p" | "n" => scalar(BigRational::from_integer(self.modulus.into())),
            "a" => scalar(self.invariants()?.a()),
            "b" => scalar(self.invariants()?.b()),
            "a'" => scalar(self.invariants()?.a_prime()),
            "b'" => scalar(self.invariants()?.b_prime()),
            "h" => {
                let inv = self.invariants()?;
                if inv.h_minus == 0 {
                    return Err(Error::WrongResidueClass {
                        p: self.modulus,
                        condition: "p = 3 (mod 4) for h(-p)",
                    });
                }
                scalar(BigRational::from_integer(inv.h_minus.into()))
            }
            _ => {
                let mut chars = name.chars();
                if let (Some(c), None) = (chars.next(), chars.next()) {
                    if let Some(v) = Var::from_name(c) {
                        return Ok(RatPoly::var(v));
                    }
                }
                self.bindings
                    .get(name)
                    .cloned()
                    .map(RatPoly::constant)
                    .ok_or_else(|| Error::Eval(format!("unbound name `{name}`")))
            }
        }
    }

    fn scalar_of(&mut self, e: &Expr) -> Result<BigRational> {
        self.eval(e)?
            .as_scalar()
            .cloned()
            .ok_or_else(|| Error::Eval(format!("`{e}` must not involve x, y, z, w")))
    }

    fn integer_of(&mut self, e: &Expr) -> Result<BigInt> {
        let v = self.scalar_of(e)?;
        if !v.is_integer() {
            return Err(Error::NonIntegral(v.to_string(), e.to_string()));
        }
        Ok(v.to_integer())
    }

    /// Evaluates `e` to a rational multiaffine polynomial.
    pub fn eval(&mut self, e: &Expr) -> Result<RatPoly> {
        Ok(match e {
            Expr::Num(n) => RatPoly::constant(BigRational::from_integer(n.clone())),
            Expr::Ident(name) => self.ident(name)?,
            Expr::Neg(a) => self.eval(a)?.neg(),
            Expr::Add(a, b) => self.eval(a)?.add(&self.eval(b)?),
            Expr::Sub(a, b) => self.eval(a)?.sub(&self.eval(b)?),
            Expr::Mul(a, b) => self.eval(a)?.mul(&self.eval(b)?)?,
            Expr::Div(a, b) => {
                let d = self.scalar_of(b)?;
                if d.is_zero() {
                    return Err(Error::Eval(format!("division by zero in `{e}`")));
                }
                self.eval(a)?.scale(&d.recip())
            }
            Expr::Pow(a, b) => {
                let exp = self.scalar_of(b)?;
                let base = self.eval(a)?;
                match base.as_scalar() {
                    Some(s) => RatPoly::constant(pow_rational(s, &exp)?),
                    None if exp.is_one() => base,
                    None if exp.is_zero() => RatPoly::constant(BigRational::one()),
                    None => return Err(Error::Eval(format!("`{e}` is not multiaffine"))),
                }
            }
            Expr::Call(f, args) => {
                let [arg] = args.as_slice() else {
                    return Err(Error::Eval(format!("`{f}` takes one argument")));
                };
                let v = match f.as_str() {
                    "floor" => BigRational::from_integer(self.scalar_of(arg)?.floor().to_integer()),
                    "leg" => {
                        let t = self.integer_of(arg)?;
                        BigRational::from_integer(jacobi_big(&t, self.modulus)?.as_i64().into())
                    }
                    "phi" => {
                        let t = self.integer_of(arg)?;
                        let t = t
                            .to_u64()
                            .filter(|_| t.is_positive())
                            .ok_or_else(|| Error::Eval(format!("phi of {t}")))?;
                        BigRational::from_integer(euler_phi(t).into())
                    }
                    _ => return Err(Error::Eval(format!("unknown function `{f}`"))),
                };
                RatPoly::constant(v)
            }
        })
    }

    /// Parses and evaluates `src`, then converts to an integer polynomial.
    pub fn eval_poly(&mut self, src: &str, vars: VarSet) -> Result<MultiAffinePoly> {
        let e = Expr::parse(src)?;
        self.eval(&e)?.to_integer_poly(vars, src)
    }

    /// Evaluates a variable-free integer expression.
    pub fn eval_integer(&mut self, src: &str) -> Result<BigInt> {
        self.integer_of(&Expr::parse(src)?)
    }
}
