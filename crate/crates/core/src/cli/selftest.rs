//! Quick example checks behind `legdet selftest`.

use num_bigint::BigInt;
use serde::Serialize;

use super::output::Row;
use crate::arith::jacobi;
use crate::detengine::{det, det_mod, EngineChoice};
use crate::error::Result;
use crate::matrixgen::{chapman_matrix, ChapmanVariant, MatrixSpec};
use crate::multiaffine::{det_poly, Assignment, MultiAffinePoly, Var, VarSet};
use crate::quadfield::{class_number_imag, invariants};
use crate::registry::{discover, verify, Outcome, Registry, RhsContext};

#[derive(Debug, Serialize)]
pub struct SelftestRow {
    pub check: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl Row for SelftestRow {
    fn headers() -> &'static [&'static str] {
        &["result", "check", "detail"]
    }

    fn cells(&self) -> Vec<String> {
        let result = if self.passed { "PASS" } else { "FAIL" };
        vec![result.into(), self.check.into(), self.detail.clone()]
    }
}

type Probe = fn(&Registry) -> Result<(bool, String)>;

fn same_poly(text: &str, expected: &str) -> Result<(bool, String)> {
    let a: MultiAffinePoly = text.parse()?;
    let b: MultiAffinePoly = expected.parse()?;
    Ok((a.sub(&b).trimmed().is_zero(), text.to_string()))
}

fn det_of(spec: &str) -> Result<MultiAffinePoly> {
    let spec: MatrixSpec = spec.parse()?;
    det_poly(&spec, EngineChoice::Auto)
}

fn discovered(reg: &Registry, id: &str, p: u64, want: i64) -> Result<(bool, String)> {
    let d = discover(reg.get(id).expect("built-in id"), p, EngineChoice::Auto)?;
    let shown = d.value.as_ref().map_or_else(|| d.failure.clone().unwrap_or_default(), |v| v.to_string());
    Ok((d.value == Some(BigInt::from(want)), shown))
}

fn verified(reg: &Registry, id: &str, n: u64) -> Result<(bool, String)> {
    let r = verify(reg.get(id).expect("built-in id"), n)?;
    Ok((r.outcome == Outcome::Match, format!("{} = {}", r.outcome, r.computed)))
}

const CHECKS: &[(&str, Probe)] = &[
    ("jacobi (2/7) = 1, (3/7) = -1, (6/9) = 0", |_| {
        let v = [jacobi(2, 7)?, jacobi(3, 7)?, jacobi(6, 9)?].map(|s| s.as_i64());
        Ok((v == [1, -1, 0], format!("{v:?}")))
    }),
    ("2a_5 = 2b_5 = 1", |_| {
        let inv = invariants(5)?;
        Ok((inv.ab.two_a == 1.into() && inv.ab.two_b == 1.into(), inv.ab.to_string()))
    }),
    ("h(-7) = 1", |_| {
        let h = invariants(7)?.h_minus;
        Ok((h == 1, h.to_string()))
    }),
    ("h(-23) = 3", |_| {
        let h = class_number_imag(23)?;
        Ok((h == 3, h.to_string()))
    }),
    ("C_7(1) = -8", |_| {
        let d = det(&chapman_matrix(7, ChapmanVariant::C, 1)?, EngineChoice::Bareiss)?;
        Ok((d == BigInt::from(-8), d.to_string()))
    }),
    ("|x + ((j-k)/5)| = -2 - 5x", |_| {
        same_poly(&det_of("p=5; range=0..2; atom=j-k; vars=x")?.to_string(), "-2 - 5*x")
    }),
    ("{3,2}_7 = 3", |_| {
        let d = det_of("n=7; range=2..5; atom=j^2+3*j*k+2*k^2")?;
        same_poly(&d.to_string(), "3")
    }),
    ("det mod 7 of {3,2}_7 = 3", |_| {
        let spec: MatrixSpec = "n=7; range=2..5; atom=j^2+3*j*k+2*k^2".parse()?;
        let r = det_mod(&spec.build_numeric(&Assignment::new())?, 7)?;
        Ok((r == 3, r.to_string()))
    }),
    ("closed form of thm1.3.i at 7 = 8(y+1)(z+1)", |_| {
        let vars = VarSet::of(&[Var::X, Var::Y, Var::Z]);
        let e = RhsContext::new(7).eval_poly("(y+1)*(z+1)*2^((p-1)/2)", vars)?;
        same_poly(&e.to_string(), "8 + 8*y + 8*z + 8*y*z")
    }),
    ("floor((p-2)/3)^2 x at 11 = 9x", |_| {
        let e = RhsContext::new(11).eval_poly("floor((p-2)/3)^2*x", VarSet::of(&[Var::X]))?;
        same_poly(&e.to_string(), "9*x")
    }),
    ("thm1.3.ii at 7", |r| verified(r, "thm1.3.ii", 7)),
    ("cor1.1.a at 7 = 4", |r| verified(r, "cor1.1.a", 7)),
    ("conj5.1.ii at 7", |r| verified(r, "conj5.1.ii", 7)),
    ("st.relation.d1 at 13", |r| verified(r, "st.relation.d1", 13)),
    ("st.relation.d2 at 5", |r| verified(r, "st.relation.d2", 5)),
    ("x_13 = -3", |r| discovered(r, "conj3.7.ii", 13, -3)),
    ("q_7 = 1", |r| discovered(r, "conj3.8.ii", 7, 1)),
    ("m_7 = 2", |r| discovered(r, "conj3.9", 7, 2)),
    ("n_5 = 1", |r| discovered(r, "conj4.6", 5, 1)),
];

pub fn run(registry: &Registry) -> Vec<SelftestRow> {
    CHECKS
        .iter()
        .map(|&(check, probe)| match probe(registry) {
            Ok((passed, detail)) => SelftestRow { check, passed, detail },
            Err(e) => SelftestRow {
                check,
                passed: false,
                detail: e.to_string(),
            },
        })
        .collect()
}

#[cfg(test)]
mod tests {
    #[test]
    fn all_pass() {
        let rows = super::run(&crate::registry::Registry::builtin());
        for r in &rows {
            assert!(r.passed, "{}: {}", r.check, r.detail);
        }
    }
}
