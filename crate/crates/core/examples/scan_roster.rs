//! Scans every built-in identity over odd moduli below a bound and prints
//! failures. Usage: `scan_roster [max]`.

use legendre_det::registry::{scan, Registry, VerifyOptions};

fn main() -> legendre_det::Result<()> {
    let max: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(61);
    let registry = Registry::builtin();
    let moduli: Vec<u64> = (3..=max).step_by(2).collect();
    let reports = scan(registry.identities(), &moduli, &VerifyOptions::default())?;
    let mut checked = 0;
    for r in &reports {
        if r.outcome.to_string() != "inapplicable" {
            checked += 1;
        }
        if r.is_failure() {
            println!("{} n={} {} computed={} expected={} residual={}", r.id, r.modulus, r.outcome, r.computed, r.expected, r.residual);
        }
    }
    println!("{checked} applicable checks, {} failures", reports.iter().filter(|r| r.is_failure()).count());
    Ok(())
}
