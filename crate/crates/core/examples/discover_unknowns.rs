//! Solves for the integer sequences left unspecified by the conjectures and
//! compares them with the printed values.
//!
//! ```text
//! cargo run --release --example discover_unknowns -- 131
//! ```

use legendre_det::arith::primes_between;
use legendre_det::detengine::EngineChoice;
use legendre_det::registry::{discover, Registry};

fn main() -> legendre_det::Result<()> {
    let max: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(131);
    let registry = Registry::builtin();
    for ident in registry.identities().iter().filter(|i| i.unknown().is_some()) {
        let name = ident.unknown().unwrap();
        let mut line = Vec::new();
        for p in primes_between(3, max) {
            let Some(branch) = ident.branch_for(p) else { continue };
            if branch.claim.unknown().is_none() {
                continue;
            }
            let d = discover(ident, p, EngineChoice::Auto)?;
            let printed = branch.claim.table().iter().find(|(q, _)| *q == p).map(|&(_, v)| v);
            let value = d.value.map_or_else(|| format!("({})", d.failure.unwrap_or_default()), |v| v.to_string());
            let mark = match printed {
                Some(v) if v.to_string() != value => format!(" [printed {v}]"),
                _ => String::new(),
            };
            line.push(format!("{p}:{value}{mark}"));
        }
        println!("{} ({name}): {}", ident.id, line.join(", "));
    }
    Ok(())
}
