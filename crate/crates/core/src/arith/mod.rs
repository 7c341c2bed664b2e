//! Integer utilities: symbols, primality, remaindering, bounds, and the
//! two-squares and character-sum helpers.

mod crt;
mod jacobi;
mod primes;
mod squares;

pub use crt::{crt_reconstruct, hadamard_bound, inv_mod};
pub(crate) use crt::garner_symmetric;
pub use jacobi::{jacobi, jacobi_big, SymbolTable, SymbolValue};
pub use primes::{euler_phi, factorize, is_prime, primes_between};
pub use squares::{
    is_sum_of_two_squares, jacobsthal_sum, sum_two_squares, wilson_involution, TwoSquares,
};
