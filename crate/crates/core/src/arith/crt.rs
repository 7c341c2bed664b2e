use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    (r0 == 1).then(|| t0.rem_euclid(m as i128) as u64)
}

/// Chinese remaindering into the symmetric range `(-M/2, M/2]`, where `M`
/// is the product of the moduli.
pub fn crt_reconstruct(residues: &[i64], moduli: &[u64]) -> Result<BigInt> {
    if residues.len() != moduli.len() {
        return Err(Error::LengthMismatch(residues.len(), moduli.len()));
    }
    for (i, &a) in moduli.iter().enumerate() {
        if a == 0 {
            return Err(Error::BadModulus(0));
        }
        for &b in &moduli[..i] {
            if a.gcd(&b) != 1 {
                return Err(Error::NotCoprime(b, a));
            }
        }
    }
    let reduced: Vec<u64> = residues
        .iter()
        .zip(moduli)
        .map(|(&r, &m)| (r as i128).rem_euclid(m as i128) as u64)
        .collect();
    Ok(garner_symmetric(&reduced, moduli))
}

/// Garner's mixed-radix reconstruction; assumes pairwise coprime moduli and
/// reduced residues.
pub(crate) fn garner_symmetric(residues: &[u64], moduli: &[u64]) -> BigInt {
    let k = moduli.len();
    let mut digits: Vec<u64> = Vec::with_capacity(k);
    for i in 0..k {
        let m = moduli[i];
        // Evaluate the partial mixed-radix number mod m_i.
        let mut acc = 0u64;
        let mut radix = 1 % m;
        for j in 0..i {
            acc = (acc + mul_mod(digits[j] % m, radix, m)) % m;
            radix = mul_mod(radix, moduli[j] % m, m);
        }
        let diff = (residues[i] % m + m - acc) % m;
        let inv = inv_mod(radix, m).expect("moduli are pairwise coprime");
        digits.push(mul_mod(diff, inv, m));
    }
    let mut x = BigInt::zero();
    for i in (0..k).rev() {
        x = x * moduli[i] + digits[i];
    }
    let total: BigInt = moduli.iter().fold(BigInt::one(), |acc, &m| acc * m);
    if &x * 2 > total {
        x - total
    } else {
        x
    }
}

/// An integer `B` with `|det M| <= B`: the ceiling of the product of the
/// Euclidean row norms.
pub fn hadamard_bound(m: &IntMatrix) -> BigInt {
    let product = m.row_iter().fold(BigInt::one(), |acc, row| {
        let sq: i128 = row.iter().map(|&v| (v as i128) * (v as i128)).sum();
        acc * BigInt::from(sq)
    });
    ceil_sqrt(&product)
}

pub(crate) fn ceil_sqrt(v: &BigInt) -> BigInt {
    debug_assert!(!v.is_negative());
    let s = v.sqrt();
    if &(&s * &s) < v {
        s + 1
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        assert_eq!(crt_reconstruct(&[1, 2], &[3, 5]).unwrap(), BigInt::from(7));
        assert_eq!(crt_reconstruct(&[0], &[7]).unwrap(), BigInt::from(0));
        assert_eq!(crt_reconstruct(&[2, 3], &[3, 5]).unwrap(), BigInt::from(-7));
    }

    #[test]
    fn errors() {
        assert!(matches!(
            crt_reconstruct(&[1, 2], &[6, 9]),
            Err(Error::NotCoprime(6, 9))
        ));
        assert!(matches!(
            crt_reconstruct(&[1], &[6, 7]),
            Err(Error::LengthMismatch(1, 2))
        ));
    }

    #[test]
    fn enumeration_mod_105() {
        for v in -52i64..=52 {
            let res: Vec<i64> = [3, 5, 7].iter().map(|&m| v.rem_euclid(m)).collect();
            assert_eq!(crt_reconstruct(&res, &[3, 5, 7]).unwrap(), BigInt::from(v));
        }
        // 105/2 is not an integer, so +52 and -52 are the range ends.
        assert_eq!(crt_reconstruct(&[2, 3, 4], &[3, 5, 7]).unwrap(), BigInt::from(53 - 105));
    }

    #[test]
    fn hadamard_examples() {
        let m = |rows: Vec<Vec<i64>>| IntMatrix::from_rows(rows).unwrap();
        assert_eq!(hadamard_bound(&m(vec![vec![0]])), BigInt::from(0));
        assert_eq!(hadamard_bound(&m(vec![vec![1, 1], vec![1, -1]])), BigInt::from(2));
        assert_eq!(hadamard_bound(&m(vec![vec![3, 4], vec![0, 5]])), BigInt::from(25));
        assert_eq!(hadamard_bound(&m(vec![vec![1, 1], vec![0, 1]])), BigInt::from(2));
    }

    proptest! {
        #[test]
        fn round_trip(v in any::<i64>()) {
            let moduli = [2_147_483_629u64, 2_147_483_587, 4_294_967_291];
            let v: BigInt = BigInt::from(v) * 3;
            let res: Vec<i64> = moduli.iter().map(|&m| {
                use num_traits::ToPrimitive;
                v.mod_floor(&BigInt::from(m)).to_i64().unwrap()
            }).collect();
            prop_assert_eq!(crt_reconstruct(&res, &moduli).unwrap(), v);
        }
    }
}
