//! Line-delimited JSON store of quadratic-field invariants.

use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadfield::{pow_unit, QuadInt, QuadInvariants};

pub const SCHEMA_VERSION: u32 = 1;

/// One cached prime. Big integers are stored as decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheRecord {
    pub schema_version: u32,
    pub p: u64,
    pub eps: [String; 2],
    pub ab: [String; 2],
    pub ab_prime: [String; 2],
    pub h_plus: u64,
    pub h_minus: u64,
}

fn halves(q: &QuadInt) -> [String; 2] {
    [q.two_a.to_string(), q.two_b.to_string()]
}

fn unhalve(pair: &[String; 2], p: u64) -> Option<QuadInt> {
    let a: BigInt = pair[0].parse().ok()?;
    let b: BigInt = pair[1].parse().ok()?;
    if (&a - &b) % 2u32 != BigInt::from(0) {
        return None;
    }
    Some(QuadInt::new(a, b, p))
}

impl From<&QuadInvariants> for CacheRecord {
    fn from(inv: &QuadInvariants) -> Self {
        CacheRecord {
            schema_version: SCHEMA_VERSION,
            p: inv.p,
            eps: halves(&inv.eps),
            ab: halves(&inv.ab),
            ab_prime: halves(&inv.ab_prime),
            h_plus: inv.h_plus,
            h_minus: inv.h_minus,
        }
    }
}

impl CacheRecord {
    /// Rebuilds the invariants, rejecting records whose powers are
    /// inconsistent with the stored unit.
    pub fn to_invariants(&self) -> Option<QuadInvariants> {
        let inv = QuadInvariants {
            p: self.p,
            eps: unhalve(&self.eps, self.p)?,
            h_plus: self.h_plus,
            h_minus: self.h_minus,
            ab: unhalve(&self.ab, self.p)?,
            ab_prime: unhalve(&self.ab_prime, self.p)?,
        };
        let norm = &inv.eps.two_a * &inv.eps.two_a - BigInt::from(self.p) * &inv.eps.two_b * &inv.eps.two_b;
        let unit = norm == BigInt::from(4) || norm == BigInt::from(-4);
        let consistent = pow_unit(&inv.eps, inv.h_plus) == inv.ab
            && pow_unit(&inv.ab, inv.prime_exponent()) == inv.ab_prime;
        (unit && consistent && self.h_plus > 0).then_some(inv)
    }
}

/// What [`load`] found on disk.
#[derive(Debug, Default)]
pub struct Loaded {
    pub records: Vec<QuadInvariants>,
    pub skipped: usize,
    /// The file was written by another schema and must be rewritten.
    pub stale: bool,
}

/// Reads every valid record. A missing file is an empty cache.
pub fn load(path: &Path) -> Result<Loaded> {
    let file = match File::open(path) {
        Ok(f) => f,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Loaded::default()),
        Err(e) => return Err(e.into()),
    };
    let mut out = Loaded::default();
    for (lineno, line) in BufReader::new(file).lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        match serde_json::from_str::<CacheRecord>(&line) {
            Ok(rec) if rec.schema_version != SCHEMA_VERSION => {
                log::warn!(
                    "{}: schema version {} (expected {SCHEMA_VERSION}); ignoring cache",
                    path.display(),
                    rec.schema_version
                );
                return Ok(Loaded {
                    stale: true,
                    ..Default::default()
                });
            }
            Ok(rec) => match rec.to_invariants() {
                Some(inv) => out.records.push(inv),
                None => {
                    log::warn!("{}:{}: inconsistent record for p={}; skipped", path.display(), lineno + 1, rec.p);
                    out.skipped += 1;
                }
            },
            Err(e) => {
                log::warn!("{}:{}: corrupt record ({e}); skipped", path.display(), lineno + 1);
                out.skipped += 1;
            }
        }
    }
    Ok(out)
}

/// Writes `records` as a fresh file.
pub fn store(path: &Path, records: &[QuadInvariants]) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    for r in records {
        write_record(&mut w, r)?;
    }
    w.flush()?;
    Ok(())
}

/// Appends `records` to an existing store.
pub fn append(path: &Path, records: &[QuadInvariants]) -> Result<()> {
    let mut w = BufWriter::new(OpenOptions::new().create(true).append(true).open(path)?);
    for r in records {
        write_record(&mut w, r)?;
    }
    w.flush()?;
    Ok(())
}

fn write_record(w: &mut impl Write, r: &QuadInvariants) -> Result<()> {
    let line = serde_json::to_string(&CacheRecord::from(r)).map_err(|e| Error::Io(e.to_string()))?;
    writeln!(w, "{line}")?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::primes_between;
    use crate::quadfield::compute_invariants;

    fn sample(count: usize) -> Vec<QuadInvariants> {
        primes_between(3, 1000)
            .into_iter()
            .take(count)
            .map(|p| compute_invariants(p).unwrap())
            .collect()
    }

    #[test]
    fn round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("inv.jsonl");
        let recs = sample(100);
        store(&path, &recs).unwrap();
        let loaded = load(&path).unwrap();
        assert_eq!(loaded.records, recs);
        assert_eq!(loaded.skipped, 0);
        assert!(!loaded.stale);
    }

    #[test]
    fn truncated_last_line() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("inv.jsonl");
        store(&path, &sample(100)).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        std::fs::write(&path, &text[..text.len() - 20]).unwrap();
        let loaded = load(&path).unwrap();
        assert_eq!(loaded.records.len(), 99);
        assert_eq!(loaded.skipped, 1);
    }

    #[test]
    fn version_bump_ignores_cache() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("inv.jsonl");
        store(&path, &sample(5)).unwrap();
        let text = std::fs::read_to_string(&path)
            .unwrap()
            .replace("\"schema_version\":1", "\"schema_version\":2");
        std::fs::write(&path, text).unwrap();
        let loaded = load(&path).unwrap();
        assert!(loaded.stale);
        assert!(loaded.records.is_empty());
    }

    #[test]
    fn tampered_values_rejected() {
        let mut rec = CacheRecord::from(&compute_invariants(13).unwrap());
        assert!(rec.to_invariants().is_some());
        rec.ab[0] = "13".into();
        assert!(rec.to_invariants().is_none());
        rec.ab[0] = "x".into();
        assert!(rec.to_invariants().is_none());
    }

    #[test]
    fn missing_file_is_empty() {
        let dir = tempfile::tempdir().unwrap();
        let loaded = load(&dir.path().join("absent")).unwrap();
        assert!(loaded.records.is_empty() && !loaded.stale);
    }
}
