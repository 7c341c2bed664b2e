//! Parses a matrix spec, prints its numeric matrix at a point and the
//! decomposition into the atom matrix and the perturbation vectors.
//!
//! ```text
//! cargo run --example matrix_specs -- "p=11; range=1..(p-1)/2; atom=j+k-1; vars=x,y"
//! ```

use legendre_det::matrixgen::MatrixSpec;
use legendre_det::multiaffine::{Assignment, Var};

fn main() -> legendre_det::Result<()> {
    let text = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "p=11; range=0..(p-1)/2; atom=j-k; atom=-1:j^2+k^2; vars=x,z".into());
    let spec: MatrixSpec = text.parse()?;
    println!("canonical: {spec}");
    println!("dimension {}, variables {}", spec.dim(), spec.vars().iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","));

    let dec = spec.decompose();
    println!("u = {:?}", dec.u);
    println!("v = {:?}", dec.v);
    println!("atom matrix:");
    for row in dec.base.row_iter() {
        println!("  {row:?}");
    }

    let mut point = Assignment::new();
    for (i, v) in spec.vars().iter().enumerate() {
        point = point.set(v, i as i64 + 2);
    }
    let m = spec.build_numeric(&point)?;
    let shown: Vec<String> = spec.vars().iter().map(|v: Var| format!("{v}={}", point.require(v).unwrap())).collect();
    println!("at {}:", shown.join(", "));
    for row in m.row_iter() {
        println!("  {row:?}");
    }
    Ok(())
}
