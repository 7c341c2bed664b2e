//! Random instances of the three meta identities relating sums of
//! Legendre-symbol products to shifted and factored families.
//!
//! ```text
//! cargo run --release --example meta_identities -- 13 5
//! ```

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use legendre_det::detengine::EngineChoice;
use legendre_det::registry::{check_meta, random_meta_instance, MetaKind};

fn main() -> legendre_det::Result<()> {
    let args: Vec<u64> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let (p, count) = match args[..] {
        [p, c] => (p, c),
        _ => (13, 5),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(p);
    for kind in [MetaKind::JkInvariance, MetaKind::JkShift, MetaKind::Factorisation] {
        for _ in 0..count {
            let inst = random_meta_instance(&mut rng, p, kind);
            let (lhs, rhs) = check_meta(kind, &inst, EngineChoice::Auto)?;
            let holds = lhs.sub(&rhs).trimmed().is_zero();
            println!("{kind:?} n={} terms={:?}: {}  [{lhs}]", inst.n, inst.terms, if holds { "holds" } else { "FAILS" });
        }
    }
    Ok(())
}
