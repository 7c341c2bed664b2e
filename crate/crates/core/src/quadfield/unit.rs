use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::is_prime;
use crate::error::{Error, Result};

/// `(two_a + two_b * sqrt(p)) / 2`, an element of the ring of integers of
/// `Q(sqrt(p))` kept in doubled coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuadInt {
    pub two_a: BigInt,
    pub two_b: BigInt,
    pub p: u64,
}

impl QuadInt {
    pub fn new(two_a: impl Into<BigInt>, two_b: impl Into<BigInt>, p: u64) -> Self {
        let q = QuadInt {
            two_a: two_a.into(),
            two_b: two_b.into(),
            p,
        };
        debug_assert!(
            (&q.two_a - &q.two_b).is_even(),
            "two_a and two_b must share parity"
        );
        q
    }

    pub fn one(p: u64) -> Self {
        QuadInt::new(2, 0, p)
    }

    /// Four times the norm: `two_a^2 - p * two_b^2`.
    pub fn norm_times_four(&self) -> BigInt {
        &self.two_a * &self.two_a - &self.two_b * &self.two_b * self.p
    }

    /// Rational part `a`.
    pub fn a(&self) -> BigRational {
        BigRational::new(self.two_a.clone(), BigInt::from(2))
    }

    /// Coefficient `b` of `sqrt(p)`.
    pub fn b(&self) -> BigRational {
        BigRational::new(self.two_b.clone(), BigInt::from(2))
    }

    pub fn mul(&self, other: &QuadInt) -> QuadInt {
        assert_eq!(self.p, other.p, "elements of different fields");
        let ac = &self.two_a * &other.two_a;
        let bd = &self.two_b * &other.two_b;
        let ad = &self.two_a * &other.two_b;
        let bc = &self.two_b * &other.two_a;
        QuadInt {
            two_a: (ac + bd * self.p) / 2,
            two_b: (ad + bc) / 2,
            p: self.p,
        }
    }

    /// Natural logarithm of the real embedding, for positive elements.
    pub fn ln(&self) -> f64 {
        let sqrt_p = (self.p as f64).sqrt();
        let shift = self.two_a.bits().max(self.two_b.bits()).saturating_sub(900);
        let a = (&self.two_a >> shift).to_f64().unwrap_or(f64::NAN);
        let b = (&self.two_b >> shift).to_f64().unwrap_or(f64::NAN);
        ((a + b * sqrt_p) / 2.0).ln() + shift as f64 * std::f64::consts::LN_2
    }
}

impl fmt::Display for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}*sqrt({}))/2", self.two_a, self.two_b, self.p)
    }
}

/// `u^e` by square-and-multiply.
pub fn pow_unit(u: &QuadInt, mut e: u64) -> QuadInt {
    let mut base = u.clone();
    let mut acc = QuadInt::one(u.p);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(&base);
        }
        e >>= 1;
        if e > 0 {
            base = base.mul(&base);
        }
    }
    acc
}

fn check_odd_prime(p: u64) -> Result<()> {
    if p == 2 || !is_prime(p) {
        Err(Error::NotOddPrime(p))
    } else {
        Ok(())
    }
}

/// The fundamental unit of `Q(sqrt(p))`: the least `(t + u sqrt(p))/2` with
/// `t, u > 0` and `t^2 - p u^2 = +-4`.
pub fn fundamental_unit(p: u64) -> Result<QuadInt> {
    check_odd_prime(p)?;
    if p < 23 {
        // Convergents can skip the +-4 solutions for tiny p.
        return Ok(fundamental_unit_by_search(p, 1_000).expect("small p has a small unit"));
    }
    Ok(fundamental_unit_by_cf(p))
}

/// Minimal-`u` search for `t^2 - p u^2 = +-4`, giving up past `max_u`.
pub fn fundamental_unit_by_search(p: u64, max_u: u64) -> Option<QuadInt> {
    let p_big = BigInt::from(p);
    for u in 1..=max_u {
        let pu2: BigInt = &p_big * u * u;
        for rhs in [&pu2 - 4u32, &pu2 + 4u32] {
            if rhs.is_negative() {
                continue;
            }
            let t = rhs.sqrt();
            if &t * &t == rhs && !t.is_zero() {
                return Some(QuadInt::new(t, u, p));
            }
        }
    }
    None
}

/// Walks the continued fraction of `sqrt(p)` until a convergent `h/k` has
/// `h^2 - p k^2` in `{+-1, +-4}`.
pub(crate) fn fundamental_unit_by_cf(p: u64) -> QuadInt {
    let a0 = p.isqrt();
    let (mut m, mut d, mut a) = (0u64, 1u64, a0);
    let (mut h_prev, mut h) = (BigInt::one(), BigInt::from(a0));
    let (mut k_prev, mut k) = (BigInt::zero(), BigInt::one());
    loop {
        let n4 = &h * &h - &k * &k * p;
        match n4.to_i64() {
            Some(-4) | Some(4) => return QuadInt::new(h, k, p),
            Some(-1) | Some(1) => return QuadInt::new(h * 2, k * 2, p),
            _ => {}
        }
        m = d * a - m;
        d = (p - m * m) / d;
        a = (a0 + m) / d;
        let h_next = &h * a + &h_prev;
        let k_next = &k * a + &k_prev;
        h_prev = std::mem::replace(&mut h, h_next);
        k_prev = std::mem::replace(&mut k, k_next);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_examples() {
        assert_eq!(fundamental_unit(5).unwrap(), QuadInt::new(1, 1, 5));
        assert_eq!(fundamental_unit(3).unwrap(), QuadInt::new(4, 2, 3));
        assert_eq!(fundamental_unit(13).unwrap(), QuadInt::new(3, 1, 13));
        assert!(fundamental_unit(2).is_err());
        assert!(fundamental_unit(15).is_err());
    }

    #[test]
    fn pow_examples() {
        let e5 = QuadInt::new(1, 1, 5);
        assert_eq!(pow_unit(&e5, 0), QuadInt::new(2, 0, 5));
        assert_eq!(pow_unit(&e5, 2), QuadInt::new(3, 1, 5));
        assert_eq!(pow_unit(&e5, 3), QuadInt::new(4, 2, 5));
    }

    #[test]
    fn pow_matches_repeated_multiplication() {
        let e = fundamental_unit(61).unwrap();
        let mut acc = QuadInt::one(61);
        for k in 0..12 {
            assert_eq!(pow_unit(&e, k), acc);
            acc = acc.mul(&e);
        }
    }

    #[test]
    fn norm_is_plus_minus_four() {
        for p in (3..=499).filter(|&p| is_prime(p)) {
            let e = fundamental_unit(p).unwrap();
            let n = e.norm_times_four();
            assert!(n == BigInt::from(4) || n == BigInt::from(-4), "p={p}");
            assert!(e.two_a.is_positive() && e.two_b.is_positive());
        }
    }

    #[test]
    fn continued_fraction_agrees_with_search() {
        let mut compared = 0;
        for p in (23..=499).filter(|&p| is_prime(p)) {
            if let Some(s) = fundamental_unit_by_search(p, 20_000) {
                assert_eq!(fundamental_unit(p).unwrap(), s, "p={p}");
                compared += 1;
            }
        }
        assert!(compared > 30);
    }

    #[test]
    fn known_large_unit() {
        // 1728148040^2 - 151 * 140634693^2 = 1
        let e = fundamental_unit(151).unwrap();
        assert_eq!(e, QuadInt::new(2 * 1_728_148_040u64, 2 * 140_634_693u64, 151));
    }

    #[test]
    fn logarithm() {
        let e = QuadInt::new(1, 1, 5);
        assert!((e.ln() - ((1.0 + 5f64.sqrt()) / 2.0).ln()).abs() < 1e-12);
        let big = pow_unit(&e, 5000);
        assert!((big.ln() - 5000.0 * e.ln()).abs() < 1e-6);
    }
}
