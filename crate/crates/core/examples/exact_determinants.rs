//! Compares the two exact engines on a `{c,d}_n` matrix.
//!
//! ```text
//! cargo run --release --example exact_determinants -- 301 3 2
//! ```

use std::time::Instant;

use legendre_det::detengine::{det, det_mod, EngineChoice};
use legendre_det::matrixgen::MatrixSpec;
use legendre_det::multiaffine::Assignment;

fn main() -> legendre_det::Result<()> {
    let args: Vec<i64> = std::env::args().skip(1).map(|a| a.parse().expect("integer")).collect();
    let (n, c, d) = match args[..] {
        [n, c, d] => (n, c, d),
        _ => (101, 3, 2),
    };
    let spec: MatrixSpec = format!("n={n}; rows=2..n-2; cols=2..n-2; atom=j^2+{c}*j*k+{d}*k^2").parse()?;
    let m = spec.build_numeric(&Assignment::new())?;
    println!("{{{c},{d}}}_{n}: {}x{} matrix", m.rows(), m.cols());
    for engine in [EngineChoice::Modular, EngineChoice::Bareiss] {
        if engine == EngineChoice::Bareiss && m.rows() > 160 {
            continue;
        }
        let t = Instant::now();
        let v = det(&m, engine)?;
        println!("{engine:>8}: {v}  ({:.2?})", t.elapsed());
    }
    println!("det mod n = {}", det_mod(&m, n as u64)?);
    Ok(())
}
