//! Fundamental units, class numbers and the half-integer pairs
//! `(a_p, b_p)` and `(a'_p, b'_p)` for a range of primes.
//!
//! ```text
//! cargo run --example quadratic_invariants -- 3 61
//! ```

use legendre_det::arith::primes_between;
use legendre_det::quadfield::invariants;

fn main() -> legendre_det::Result<()> {
    let args: Vec<u64> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let (lo, hi) = match args[..] {
        [lo, hi] => (lo, hi),
        _ => (3, 61),
    };
    println!("{:>4} {:>5} {:>5}  {:<28} {:<12} {:<12}", "p", "h(p)", "h(-p)", "eps", "a_p", "b_p");
    for p in primes_between(lo.max(3), hi) {
        let inv = invariants(p)?;
        let h_minus = if p % 4 == 3 { inv.h_minus.to_string() } else { "-".into() };
        println!(
            "{p:>4} {:>5} {h_minus:>5}  {:<28} {:<12} {:<12}",
            inv.h_plus,
            inv.eps.to_string(),
            inv.a().to_string(),
            inv.b().to_string()
        );
    }
    Ok(())
}
