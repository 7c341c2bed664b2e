//! Invariants of `Q(sqrt(p))` and `Q(sqrt(-p))`: the fundamental unit, both
//! class numbers, and the half-integer pairs `(a_p, b_p)`, `(a'_p, b'_p)`
//! defined by `eps^h = a_p + b_p sqrt(p)` and
//! `eps^((2 - (2/p)) h) = a'_p + b'_p sqrt(p)`.

mod class_number;
mod unit;

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, OnceLock, RwLock};

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::arith::jacobi;
use crate::error::{Error, Result};

pub use class_number::{
    class_number_imag, class_number_real, class_number_real_analytic, class_number_real_forms,
    count_reduced_definite_forms,
};
pub use unit::{fundamental_unit, fundamental_unit_by_search, pow_unit, QuadInt};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadInvariants {
    pub p: u64,
    pub eps: QuadInt,
    /// `h(p)`.
    pub h_plus: u64,
    /// `h(-p)` when `p = 3 (mod 4)`, otherwise 0.
    pub h_minus: u64,
    /// `eps^h(p)`.
    pub ab: QuadInt,
    /// `eps^((2 - (2/p)) h(p))`.
    pub ab_prime: QuadInt,
}

impl QuadInvariants {
    pub fn a(&self) -> BigRational {
        self.ab.a()
    }
    pub fn b(&self) -> BigRational {
        self.ab.b()
    }
    pub fn a_prime(&self) -> BigRational {
        self.ab_prime.a()
    }
    pub fn b_prime(&self) -> BigRational {
        self.ab_prime.b()
    }

    /// Exponent `2 - (2/p)` relating `ab_prime` to `ab`.
    pub fn prime_exponent(&self) -> u64 {
        (2 - jacobi(2, self.p as i64).unwrap().as_i64()) as u64
    }
}

/// Computes every invariant of `p` from scratch, bypassing the cache.
pub fn compute_invariants(p: u64) -> Result<QuadInvariants> {
    let eps = fundamental_unit(p)?;
    let h_plus = class_number_real(p)?;
    let h_minus = match p {
        3 => 1,
        _ if p % 4 == 3 => class_number_imag(p)?,
        _ => 0,
    };
    let ab = pow_unit(&eps, h_plus);
    let e = (2 - jacobi(2, p as i64)?.as_i64()) as u64;
    let ab_prime = pow_unit(&ab, e);
    Ok(QuadInvariants {
        p,
        eps,
        h_plus,
        h_minus,
        ab,
        ab_prime,
    })
}

type Cache = RwLock<HashMap<u64, Arc<QuadInvariants>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Invariants of `p` through the process-wide read-through cache.
///
/// Two threads may compute the same prime concurrently; the values are
/// deterministic, so whichever insert lands last is equivalent.
pub fn invariants(p: u64) -> Result<Arc<QuadInvariants>> {
    if let Some(v) = cache().read().unwrap().get(&p) {
        return Ok(Arc::clone(v));
    }
    let v = Arc::new(compute_invariants(p)?);
    cache().write().unwrap().insert(p, Arc::clone(&v));
    Ok(v)
}

/// Inserts externally loaded records (e.g. from the on-disk store).
pub fn seed_cache(records: impl IntoIterator<Item = QuadInvariants>) {
    let mut guard = cache().write().unwrap();
    for r in records {
        guard.insert(r.p, Arc::new(r));
    }
}

/// Snapshot of the cache, sorted by prime.
pub fn cached_invariants() -> Vec<Arc<QuadInvariants>> {
    let mut v: Vec<_> = cache().read().unwrap().values().cloned().collect();
    v.sort_by_key(|r| r.p);
    v
}

/// Relative tolerance of the floating-point product identity check.
pub const CROSSCHECK_TOLERANCE: f64 = 1e-6;

/// Checks `prod_{k=1}^{(p-1)/2} (1 - e^{2 pi i a k^2 / p}) = sqrt(p) eps^{-(a/p) h(p)}`
/// in floating point, for `p = 1 (mod 4)`.
pub fn dirichlet_crosscheck(p: u64, a: i64) -> Result<bool> {
    let inv = invariants(p)?;
    dirichlet_crosscheck_with(p, a, inv.eps.ln(), inv.h_plus)
}

/// Same as [`dirichlet_crosscheck`] with a caller-supplied `ln(eps)` and `h`.
pub fn dirichlet_crosscheck_with(p: u64, a: i64, ln_eps: f64, h: u64) -> Result<bool> {
    if p % 4 != 1 {
        return Err(Error::WrongResidueClass {
            p,
            condition: "p = 1 (mod 4)",
        });
    }
    let chi = jacobi(a, p as i64)?.as_i64();
    if chi == 0 {
        return Err(Error::Eval(format!("{a} is divisible by {p}")));
    }
    // Accumulate the product as log-modulus plus phase.
    let (mut log_mod, mut phase) = (0f64, 0f64);
    for k in 1..=(p - 1) / 2 {
        let r = (a as i128 * (k * k) as i128).rem_euclid(p as i128) as f64;
        let theta = 2.0 * PI * r / p as f64;
        let (re, im) = (1.0 - theta.cos(), -theta.sin());
        let m = re.hypot(im);
        if m < 1e-12 {
            return Err(Error::Precision(format!("vanishing factor at k={k}")));
        }
        log_mod += m.ln();
        phase += im.atan2(re);
    }
    let log_rhs = 0.5 * (p as f64).ln() - (chi * h as i64) as f64 * ln_eps;
    let delta = log_mod - log_rhs;
    if !delta.is_finite() || !phase.is_finite() {
        return Err(Error::Precision(format!("non-finite product at p={p}")));
    }
    let ratio_re = delta.exp() * phase.cos();
    let ratio_im = delta.exp() * phase.sin();
    Ok((ratio_re - 1.0).hypot(ratio_im) < CROSSCHECK_TOLERANCE)
}
