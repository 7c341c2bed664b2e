//! Verifies a few identities at one modulus and prints the full reports.
//!
//! ```text
//! cargo run --release --example verify_identities -- 31
//! ```

use legendre_det::registry::{verify_with, Registry, VerifyOptions};

fn main() -> legendre_det::Result<()> {
    let p: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(31);
    let registry = Registry::builtin();
    let opts = VerifyOptions {
        guard: true,
        ..Default::default()
    };
    for id in ["wwn.evil-x", "thm1.3.i", "thm1.4.ii", "conj3.5.ii", "conj4.10.ii", "st.relation.d2"] {
        let ident = registry.get(id).expect("built-in");
        let r = verify_with(ident, p, &opts)?;
        println!("{id} at {p}: {}", r.outcome);
        if !r.computed.is_empty() {
            println!("  computed {}\n  expected {}\n  residual {}", r.computed, r.expected, r.residual);
        }
    }
    Ok(())
}
