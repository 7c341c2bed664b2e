//! Exact integer determinants.
//!
//! [`det_bareiss`] is the reference engine, [`det_modular`] reconstructs the
//! determinant from residues modulo word-size primes, and [`det_mod`] works
//! over a single modulus.

mod bareiss;
mod modular;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

pub use bareiss::det_bareiss;
pub use modular::{det_mod, det_modular, det_modular_with_pool, det_mod_prime, prime_pool};

/// Dimension above which [`EngineChoice::Auto`] uses the modular engine.
pub const AUTO_THRESHOLD: usize = 64;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EngineChoice {
    Bareiss,
    Modular,
    #[default]
    Auto,
}

impl EngineChoice {
    /// The concrete engine used for a matrix of dimension `n`.
    pub fn resolve(self, n: usize) -> EngineChoice {
        match self {
            EngineChoice::Auto if n > AUTO_THRESHOLD => EngineChoice::Modular,
            EngineChoice::Auto => EngineChoice::Bareiss,
            e => e,
        }
    }

    /// The other concrete engine, for rechecks.
    pub fn alternate(self, n: usize) -> EngineChoice {
        match self.resolve(n) {
            EngineChoice::Bareiss => EngineChoice::Modular,
            _ => EngineChoice::Bareiss,
        }
    }
}

impl fmt::Display for EngineChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EngineChoice::Bareiss => "bareiss",
            EngineChoice::Modular => "modular",
            EngineChoice::Auto => "auto",
        })
    }
}

impl FromStr for EngineChoice {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bareiss" => Ok(EngineChoice::Bareiss),
            "modular" => Ok(EngineChoice::Modular),
            "auto" => Ok(EngineChoice::Auto),
            _ => Err(Error::Parse(format!("unknown engine `{s}`"))),
        }
    }
}

/// Determinant with the requested engine.
///
/// Skew-symmetric matrices of odd order return 0 without elimination.
pub fn det(m: &IntMatrix, engine: EngineChoice) -> Result<BigInt> {
    let n = m.dim()?;
    if n % 2 == 1 && m.is_skew_symmetric() {
        return Ok(BigInt::zero());
    }
    match engine.resolve(n) {
        EngineChoice::Bareiss => det_bareiss(m),
        _ => det_modular(m),
    }
}
