use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::arith::{garner_symmetric, hadamard_bound, is_prime};
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

const POOL_SIZE: usize = 4096;

/// Primes below `2^28` in descending order.
pub fn prime_pool() -> &'static [u64] {
    static POOL: OnceLock<Vec<u64>> = OnceLock::new();
    POOL.get_or_init(|| {
        let mut v = Vec::with_capacity(POOL_SIZE);
        let mut c = (1u64 << 28) - 1;
        while v.len() < POOL_SIZE {
            if is_prime(c) {
                v.push(c);
            }
            c -= 2;
        }
        v
    })
}

/// Multi-modular determinant over the default pool.
pub fn det_modular(m: &IntMatrix) -> Result<BigInt> {
    det_modular_with_pool(m, prime_pool())
}

/// Multi-modular determinant using primes from `pool`, which must be
/// distinct and lie below `2^32`.
pub fn det_modular_with_pool(m: &IntMatrix, pool: &[u64]) -> Result<BigInt> {
    let n = m.dim()?;
    if n == 0 {
        return Ok(BigInt::one());
    }
    let bound = hadamard_bound(m).min(hadamard_bound(&m.transpose()));
    if bound.is_zero() {
        return Ok(BigInt::zero());
    }
    let target = bound * 2u32;
    let mut product = BigInt::one();
    let mut count = 0;
    while product <= target {
        let p = *pool.get(count).ok_or(Error::PrimePoolExhausted(pool.len()))?;
        product *= p;
        count += 1;
    }
    let moduli = &pool[..count];
    let residues: Vec<u64> = moduli.par_iter().map(|&p| det_mod_prime(m, p)).collect();
    Ok(garner_symmetric(&residues, moduli))
}

/// `det m mod p` for a prime `p < 2^32`, in `[0, p)`.
///
/// Crout factorisation with row pivoting. Entries are kept below `p` in
/// `u32`, and dot products accumulate unreduced in `u64` for as many terms
/// as cannot overflow.
pub fn det_mod_prime(m: &IntMatrix, p: u64) -> u64 {
    let n = m.rows();
    let chunk = (u64::MAX / ((p - 1) * (p - 1)).max(1)).clamp(1, 1 << 12) as usize;
    // Row-major: columns < k hold L (unit diagonal implied), the rest U.
    let mut a: Vec<u32> = m
        .as_slice()
        .iter()
        .map(|&v| v.rem_euclid(p as i64) as u32)
        .collect();
    // ut[j * n + t] = U[t][j] for t < k.
    let mut ut: Vec<u32> = vec![0; n * n];
    let mut det = 1u64;
    let dot = |x: &[u32], y: &[u32]| -> u64 {
        let mut total = 0u64;
        for (cx, cy) in x.chunks(chunk).zip(y.chunks(chunk)) {
            let s: u64 = cx.iter().zip(cy).map(|(&u, &v)| u as u64 * v as u64).sum();
            total = (total + s % p) % p;
        }
        total
    };
    for k in 0..n {
        // Column k below the diagonal, before scaling.
        let uk = &ut[k * n..k * n + k];
        for i in k..n {
            let d = dot(&a[i * n..i * n + k], uk);
            let v = &mut a[i * n + k];
            *v = ((*v as u64 + p - d) % p) as u32;
        }
        let Some(r) = (k..n).find(|&r| a[r * n + k] != 0) else {
            return 0;
        };
        if r != k {
            let (head, tail) = a.split_at_mut(r * n);
            head[k * n..k * n + n].swap_with_slice(&mut tail[..n]);
            det = (p - det) % p;
        }
        let piv = a[k * n + k] as u64;
        det = det * piv % p;
        ut[k * n + k] = piv as u32;
        // Row k of U to the right of the diagonal.
        for j in k + 1..n {
            let d = dot(&a[k * n..k * n + k], &ut[j * n..j * n + k]);
            let v = (a[k * n + j] as u64 + p - d) % p;
            a[k * n + j] = v as u32;
            ut[j * n + k] = v as u32;
        }
        let inv = pow_mod(piv, p - 2, p);
        for i in k + 1..n {
            let v = &mut a[i * n + k];
            *v = (*v as u64 * inv % p) as u32;
        }
    }
    det
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64;
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

/// `det m mod modulus` in `[0, modulus)` for any `modulus >= 2`.
///
/// Composite moduli use elimination with Euclidean row reduction, which only
/// applies unimodular row operations.
pub fn det_mod(m: &IntMatrix, modulus: u64) -> Result<u64> {
    let n = m.dim()?;
    if modulus < 2 {
        return Err(Error::BadModulus(modulus as i64));
    }
    if modulus < (1 << 32) && is_prime(modulus) {
        return Ok(det_mod_prime(m, modulus));
    }
    if modulus >= 1 << 31 {
        let d = super::det_modular(m)?;
        let r = num_integer::Integer::mod_floor(&d, &BigInt::from(modulus));
        return Ok(r.try_into().expect("reduced below modulus"));
    }
    let md = modulus as i64;
    let mut a: Vec<i64> = m.as_slice().iter().map(|&v| v.rem_euclid(md)).collect();
    let mut det: i64 = 1;
    for k in 0..n {
        for i in k + 1..n {
            // Euclid on (a[k][k], a[i][k]) using row swaps and subtractions.
            while a[i * n + k] != 0 {
                let q = a[k * n + k] / a[i * n + k];
                if q != 0 {
                    for j in k..n {
                        a[k * n + j] = (a[k * n + j] - q * a[i * n + j]).rem_euclid(md);
                    }
                }
                for j in k..n {
                    a.swap(k * n + j, i * n + j);
                }
                det = -det;
            }
        }
        det = (det * a[k * n + k]).rem_euclid(md);
        if det == 0 {
            return Ok(0);
        }
    }
    Ok(det.rem_euclid(md) as u64)
}
