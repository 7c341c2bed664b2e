//! Determinants of perturbed families as multiaffine polynomials, with the
//! multiaffinity probe run first.
//!
//! ```text
//! cargo run --release --example determinant_polynomials -- 29
//! ```

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use legendre_det::detengine::EngineChoice;
use legendre_det::matrixgen::MatrixSpec;
use legendre_det::multiaffine::{det_poly, multiaffinity_guard};

fn main() -> legendre_det::Result<()> {
    let p: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(29);
    let families = [
        "range=0..(p-1)/2; atom=j+k; vars=x,y,z,w",
        "range=0..(p-1)/2; atom=j-k; vars=x,y,z,w",
        "range=1..(p-1)/2; atom=j+k-1; vars=x,y,z",
        "range=0..(p-1)/2; atom=j+k; atom=j-k; vars=x,y,z,w",
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(p);
    for body in families {
        let spec: MatrixSpec = format!("p={p}; {body}").parse()?;
        let affine = multiaffinity_guard(&spec, &mut rng, 2)?;
        let poly = det_poly(&spec, EngineChoice::Auto)?;
        println!("{body}\n  multiaffine: {affine}\n  det = {poly}\n");
    }
    Ok(())
}
