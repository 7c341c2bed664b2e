use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A value of a Legendre or Jacobi symbol: always -1, 0 or +1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SymbolValue(i8);

impl SymbolValue {
    pub const MINUS_ONE: SymbolValue = SymbolValue(-1);
    pub const ZERO: SymbolValue = SymbolValue(0);
    pub const ONE: SymbolValue = SymbolValue(1);

    /// Wraps a raw value; anything outside {-1, 0, 1} is rejected.
    pub fn new(v: i8) -> Option<Self> {
        matches!(v, -1..=1).then_some(SymbolValue(v))
    }

    pub fn get(self) -> i8 {
        self.0
    }

    pub fn as_i64(self) -> i64 {
        i64::from(self.0)
    }
}

impl std::ops::Mul for SymbolValue {
    type Output = SymbolValue;
    fn mul(self, rhs: SymbolValue) -> SymbolValue {
        SymbolValue(self.0 * rhs.0)
    }
}

impl From<SymbolValue> for i64 {
    fn from(s: SymbolValue) -> i64 {
        s.as_i64()
    }
}

impl fmt::Display for SymbolValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The Jacobi symbol (a/n) for odd positive `n`, by binary reciprocity.
///
/// Equals the Legendre symbol when `n` is prime; `(a/1) = 1` for every `a`.
pub fn jacobi(a: i64, n: i64) -> Result<SymbolValue> {
    if n <= 0 || n % 2 == 0 {
        return Err(Error::BadModulus(n));
    }
    Ok(jacobi_odd(a.rem_euclid(n) as u64, n as u64))
}

/// Jacobi symbol with a big-integer numerator, reduced mod `n` first.
pub fn jacobi_big(a: &BigInt, n: u64) -> Result<SymbolValue> {
    if n == 0 || n % 2 == 0 {
        return Err(Error::BadModulus(n as i64));
    }
    let r = a
        .mod_floor(&BigInt::from(n))
        .to_u64()
        .expect("residue fits in u64");
    Ok(jacobi_odd(r, n))
}

/// Core loop; `n` odd, `a < n` not required.
pub(crate) fn jacobi_odd(mut a: u64, mut n: u64) -> SymbolValue {
    debug_assert!(n % 2 == 1);
    a %= n;
    let mut t = 1i8;
    while a != 0 {
        let tz = a.trailing_zeros();
        a >>= tz;
        if tz & 1 == 1 && matches!(n & 7, 3 | 5) {
            t = -t;
        }
        if a & 3 == 3 && n & 3 == 3 {
            t = -t;
        }
        std::mem::swap(&mut a, &mut n);
        a %= n;
    }
    if n == 1 {
        SymbolValue(t)
    } else {
        SymbolValue(0)
    }
}

/// Table of `(t/n)` for `0 <= t < n`, built once per modulus.
#[derive(Clone, Debug)]
pub struct SymbolTable {
    modulus: u64,
    values: Vec<i8>,
}

impl SymbolTable {
    pub fn new(modulus: u64) -> Result<Self> {
        if modulus == 0 || modulus % 2 == 0 {
            return Err(Error::BadModulus(modulus as i64));
        }
        let values = (0..modulus).map(|t| jacobi_odd(t, modulus).0).collect();
        Ok(SymbolTable { modulus, values })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// `(t/n)` for any integer `t`.
    #[inline]
    pub fn get(&self, t: i64) -> i64 {
        i64::from(self.values[t.rem_euclid(self.modulus as i64) as usize])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
        let mut r = 1u64 % m;
        b %= m;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % m;
            }
            b = b * b % m;
            e >>= 1;
        }
        r
    }

    // Euler's criterion, the independent oracle for prime moduli.
    fn euler(a: i64, p: u64) -> i64 {
        match pow_mod(a.rem_euclid(p as i64) as u64, (p - 1) / 2, p) {
            0 => 0,
            1 => 1,
            v => {
                assert_eq!(v, p - 1);
                -1
            }
        }
    }

    #[test]
    fn examples() {
        assert_eq!(jacobi(0, 5).unwrap(), SymbolValue::ZERO);
        assert_eq!(jacobi(2, 7).unwrap(), SymbolValue::ONE);
        assert_eq!(jacobi(3, 7).unwrap(), SymbolValue::MINUS_ONE);
        assert_eq!(jacobi(2, 15).unwrap(), SymbolValue::ONE);
        assert_eq!(jacobi(12345, 1).unwrap(), SymbolValue::ONE);
        assert_eq!(jacobi(-1, 7).unwrap(), SymbolValue::MINUS_ONE);
        assert_eq!(jacobi_big(&BigInt::from(-30), 59).unwrap(), jacobi(-30, 59).unwrap());
    }

    #[test]
    fn rejects_even_or_nonpositive() {
        assert!(jacobi(3, 8).is_err());
        assert!(jacobi(3, 0).is_err());
        assert!(jacobi(3, -7).is_err());
    }

    #[test]
    fn matches_euler_for_primes_below_1000() {
        for p in (3..=997u64).filter(|&p| crate::arith::is_prime(p)) {
            for a in -3..(p as i64 + 3) {
                assert_eq!(jacobi(a, p as i64).unwrap().as_i64(), euler(a, p), "({a}/{p})");
            }
        }
    }

    #[test]
    fn table_agrees() {
        let t = SymbolTable::new(21).unwrap();
        for a in -50..50 {
            assert_eq!(t.get(a), jacobi(a, 21).unwrap().as_i64());
        }
    }

    proptest! {
        #[test]
        fn multiplicative_in_numerator(a in -100_000i64..100_000, b in -100_000i64..100_000, n in 0i64..5000) {
            let n = 2 * n + 1;
            prop_assert_eq!(jacobi(a, n).unwrap() * jacobi(b, n).unwrap(), jacobi(a * b, n).unwrap());
        }

        #[test]
        fn multiplicative_in_denominator(a in -1000i64..1000, m in 0i64..100, n in 0i64..100) {
            let (m, n) = (2 * m + 1, 2 * n + 1);
            prop_assert_eq!(jacobi(a, m).unwrap() * jacobi(a, n).unwrap(), jacobi(a, m * n).unwrap());
        }

        #[test]
        fn periodic(a in -10_000i64..10_000, n in 0i64..5000) {
            let n = 2 * n + 1;
            prop_assert_eq!(jacobi(a, n).unwrap(), jacobi(a + n, n).unwrap());
        }
    }
}
