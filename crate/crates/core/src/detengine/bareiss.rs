use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::Result;
use crate::matrix::IntMatrix;

/// Fraction-free elimination; exact for any entries.
///
/// Runs in `i128` while every intermediate fits and restarts over `BigInt`
/// on the first overflow.
pub fn det_bareiss(m: &IntMatrix) -> Result<BigInt> {
    let n = m.dim()?;
    if n == 0 {
        return Ok(BigInt::one());
    }
    if let Some(d) = bareiss_i128(m, n) {
        return Ok(BigInt::from(d));
    }
    Ok(bareiss_big(m, n))
}

fn bareiss_i128(m: &IntMatrix, n: usize) -> Option<i128> {
    let mut a: Vec<i128> = m.as_slice().iter().map(|&v| v as i128).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k * n + k] == 0 {
            let Some(swap) = (k + 1..n).find(|&r| a[r * n + k] != 0) else {
                return Some(0);
            };
            swap_rows(&mut a, n, k, swap);
            sign = -sign;
        }
        let piv = a[k * n + k];
        for i in k + 1..n {
            let lead = a[i * n + k];
            for j in k + 1..n {
                let v = a[i * n + j]
                    .checked_mul(piv)?
                    .checked_sub(lead.checked_mul(a[k * n + j])?)?;
                a[i * n + j] = v / prev;
            }
            a[i * n + k] = 0;
        }
        prev = piv;
    }
    Some(sign * a[n * n - 1])
}

fn bareiss_big(m: &IntMatrix, n: usize) -> BigInt {
    let mut a: Vec<BigInt> = m.as_slice().iter().map(|&v| BigInt::from(v)).collect();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k * n + k].is_zero() {
            match (k + 1..n).find(|&r| !a[r * n + k].is_zero()) {
                Some(r) => {
                    swap_rows(&mut a, n, k, r);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        let piv = a[k * n + k].clone();
        for i in k + 1..n {
            let lead = a[i * n + k].clone();
            for j in k + 1..n {
                let v = &a[i * n + j] * &piv - &lead * &a[k * n + j];
                a[i * n + j] = v / &prev;
            }
            a[i * n + k] = BigInt::zero();
        }
        prev = piv;
    }
    let d = a.pop().unwrap();
    if negate {
        -d
    } else {
        d
    }
}

fn swap_rows<T>(a: &mut [T], n: usize, r1: usize, r2: usize) {
    let (lo, hi) = (r1.min(r2), r1.max(r2));
    let (head, tail) = a.split_at_mut(hi * n);
    head[lo * n..lo * n + n].swap_with_slice(&mut tail[..n]);
}
