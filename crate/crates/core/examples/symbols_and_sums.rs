//! Jacobi symbols, two-squares decompositions and Jacobsthal sums.
//!
//! ```text
//! cargo run --example symbols_and_sums -- 65
//! ```

use legendre_det::arith::{euler_phi, jacobi, jacobsthal_sum, sum_two_squares};

fn main() -> legendre_det::Result<()> {
    let n: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(65);
    let symbols: Vec<i64> = (0..n as i64).map(|a| jacobi(a, n as i64).map(|s| s.as_i64())).collect::<Result<_, _>>()?;
    let row: String = symbols.iter().map(|s| match s { 1 => '+', -1 => '-', _ => '0' }).collect();
    println!("(a/{n}) for a = 0..{}: {row}", n - 1);
    println!("phi({n}) = {}", euler_phi(n));
    match sum_two_squares(n) {
        Some(t) => println!("{n} = {}^2 + {}^2", t.a, t.b),
        None => println!("{n} is not a sum of two squares"),
    }
    println!("Jacobsthal sum over Z/{n}: {}", jacobsthal_sum(n)?);
    Ok(())
}
