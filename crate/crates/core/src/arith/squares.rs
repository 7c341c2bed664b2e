use serde::{Deserialize, Serialize};

use super::jacobi::jacobi_odd;
use super::primes::{factorize, is_prime};
use crate::error::{Error, Result};

/// A decomposition `n = a^2 + b^2` with `0 <= a <= b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoSquares {
    pub a: u64,
    pub b: u64,
    pub n: u64,
}

/// True iff every prime `q = 3 (mod 4)` divides `n` to an even power.
pub fn is_sum_of_two_squares(n: u64) -> bool {
    factorize(n)
        .into_iter()
        .all(|(q, e)| q % 4 != 3 || e % 2 == 0)
}

/// Some decomposition of `n` as a sum of two squares, with the smallest `a`.
pub fn sum_two_squares(n: u64) -> Option<TwoSquares> {
    if !is_sum_of_two_squares(n) {
        return None;
    }
    let mut a = 0u64;
    while 2 * a * a <= n {
        let rest = n - a * a;
        let b = rest.isqrt();
        if b * b == rest {
            return Some(TwoSquares { a, b, n });
        }
        a += 1;
    }
    unreachable!("criterion guarantees a decomposition of {n}")
}

/// `sum_{x=0}^{n-1} (x(x^2+1) / n)` as a Jacobi-symbol character sum.
pub fn jacobsthal_sum(n: u64) -> Result<i64> {
    if n <= 1 || n % 2 == 0 {
        return Err(Error::BadModulus(n as i64));
    }
    let m = n as u128;
    Ok((0..n)
        .map(|x| {
            let x = x as u128;
            let t = (x * ((x * x + 1) % m)) % m;
            i64::from(jacobi_odd(t as u64, n).get())
        })
        .sum())
}

/// The map `k -> r_k` on `{1, ..., (p-1)/2}` where `r_k = +-((p-1)/2)! * k`
/// (mod p). Returned as a vector whose entry `k-1` holds `r_k`.
pub fn wilson_involution(p: u64) -> Result<Vec<u64>> {
    if !is_prime(p) || p == 2 {
        return Err(Error::NotOddPrime(p));
    }
    if p % 4 != 1 {
        return Err(Error::WrongResidueClass {
            p,
            condition: "p = 1 (mod 4)",
        });
    }
    let half = (p - 1) / 2;
    let q = (1..=half).fold(1u64, |acc, k| acc * k % p);
    Ok((1..=half)
        .map(|k| {
            let r = q * k % p;
            r.min(p - r)
        })
        .collect())
}
