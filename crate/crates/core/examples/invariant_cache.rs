//! Writes invariants to a line-delimited JSON store and reads them back.
//!
//! ```text
//! cargo run --example invariant_cache -- /tmp/invariants.jsonl
//! ```

use legendre_det::arith::primes_between;
use legendre_det::cli::cache;
use legendre_det::quadfield::compute_invariants;

fn main() -> legendre_det::Result<()> {
    let path = std::env::args().nth(1).unwrap_or_else(|| "invariants.jsonl".into());
    let path = std::path::Path::new(&path);
    let records = primes_between(3, 200)
        .into_iter()
        .map(compute_invariants)
        .collect::<legendre_det::Result<Vec<_>>>()?;
    cache::store(path, &records)?;
    let loaded = cache::load(path)?;
    println!(
        "stored {} records, loaded {} ({} skipped), identical: {}",
        records.len(),
        loaded.records.len(),
        loaded.skipped,
        loaded.records == records
    );
    Ok(())
}
