//! The identity catalogue, closed-form evaluation and verification.

mod identity;
mod meta;
mod rhs;
mod roster;
mod verify;

pub use identity::{Branch, Claim, Cond, FamilyTemplate, Identity, IdentityBuilder, MetaKind, Status};
pub use meta::{check_meta, random_meta_instance, MetaInstance};
pub use rhs::{RatPoly, RhsContext};
pub use roster::{binary_form_family, reference_table};
pub use verify::{
    discover, scan, scan_with_jobs, st_relation_check, verify, verify_with, Discovery, Outcome, VerificationReport, VerifyOptions,
};

use crate::error::{Error, Result};

/// An ordered collection of identities addressed by id.
#[derive(Clone, Debug)]
pub struct Registry {
    identities: Vec<Identity>,
}

impl Registry {
    pub fn builtin() -> Self {
        Registry {
            identities: roster::builtin(),
        }
    }

    pub fn from_identities(identities: Vec<Identity>) -> Self {
        Registry { identities }
    }

    pub fn identities(&self) -> &[Identity] {
        &self.identities
    }

    pub fn get(&self, id: &str) -> Option<&Identity> {
        self.identities.iter().find(|i| i.id == id)
    }

    /// Identities whose id matches a shell-style glob.
    pub fn select(&self, pattern: &str) -> Result<Vec<&Identity>> {
        let pat = glob::Pattern::new(pattern).map_err(|e| Error::Parse(format!("bad id pattern `{pattern}`: {e}")))?;
        Ok(self.identities.iter().filter(|i| pat.matches(&i.id)).collect())
    }

    pub fn with_status(&self, status: Status) -> Vec<&Identity> {
        self.identities.iter().filter(|i| i.status == status).collect()
    }

    pub fn push(&mut self, identity: Identity) {
        self.identities.retain(|i| i.id != identity.id);
        self.identities.push(identity);
    }
}

impl Default for Registry {
    fn default() -> Self {
        Self::builtin()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detengine::EngineChoice;
    use crate::multiaffine::{MultiAffinePoly, Var, VarSet};
    use num_bigint::BigInt;

    fn reg() -> Registry {
        Registry::builtin()
    }

    fn report(id: &str, n: u64) -> VerificationReport {
        verify(reg().get(id).unwrap(), n).unwrap()
    }

    #[test]
    fn ids_are_unique() {
        let r = reg();
        let mut ids: Vec<_> = r.identities().iter().map(|i| i.id.as_str()).collect();
        let total = ids.len();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), total);
    }

    #[test]
    fn glob_selection() {
        let r = reg();
        let thm13: Vec<_> = r.select("thm1.3.*").unwrap().iter().map(|i| i.id.clone()).collect();
        assert_eq!(thm13, ["thm1.3.i", "thm1.3.ii"]);
        assert_eq!(r.select("conj5.*").unwrap().len(), 21);
        assert!(r.select("[").is_err());
        assert!(r.select("nothing*").unwrap().is_empty());
    }

    #[test]
    fn product_identity_at_seven() {
        let rep = report("thm1.3.ii", 7);
        assert_eq!(rep.outcome, Outcome::Match);
        let expected: MultiAffinePoly = "1 + y - z - y*z".parse().unwrap();
        let computed: MultiAffinePoly = rep.computed.parse().unwrap();
        assert!(computed.sub(&expected).trimmed().is_zero());
        assert_eq!(rep.residual, "0");
    }

    #[test]
    fn constant_four_identity() {
        for p in [7, 11, 19, 23] {
            let rep = report("cor1.1.a", p);
            assert_eq!(rep.outcome, Outcome::Match, "{p}");
            assert_eq!(rep.computed, "4");
        }
    }

    #[test]
    fn divisibility_claim_at_seven() {
        // {3,2}_7 = 3 and phi(7)/2 = 3.
        let rep = report("conj5.1.ii", 7);
        assert_eq!(rep.outcome, Outcome::Match);
        assert!(rep.computed.contains('3'));
    }

    #[test]
    fn inapplicable_moduli() {
        assert_eq!(report("cor1.1.a", 13).outcome, Outcome::Inapplicable);
        assert_eq!(report("thm1.3.ii", 9).outcome, Outcome::Inapplicable);
        assert_eq!(report("conj5.2.i", 41).outcome, Outcome::Inapplicable);
    }

    #[test]
    fn falsified_identity_is_caught() {
        let wrong = IdentityBuilder::new("fake", Status::Conjecture)
            .branch(
                vec![Cond::Prime, Cond::Mod(4, vec![3])],
                Some("range=0..(p-1)/2; atom=j-k; vars=x,y,z"),
                Claim::Equals("(1+y)*(1+z)".into()),
            )
            .build();
        let rep = verify(&wrong, 7).unwrap();
        assert_eq!(rep.outcome, Outcome::Mismatch);
        assert_eq!(rep.residual.parse::<MultiAffinePoly>().unwrap().to_string(), "-2*z - 2*y*z");
    }

    #[test]
    fn discover_examples() {
        let r = reg();
        let cases = [("conj3.7.ii", 13, -3), ("conj3.8.ii", 7, 1), ("conj3.9", 7, 2), ("conj4.6", 5, 1)];
        for (id, p, value) in cases {
            let d = discover(r.get(id).unwrap(), p, EngineChoice::Auto).unwrap();
            assert_eq!(d.failure, None, "{id} at {p}");
            assert_eq!(d.value, Some(BigInt::from(value)), "{id} at {p}");
        }
    }

    #[test]
    fn discover_reports_verify_match() {
        let rep = report("conj3.7.ii", 13);
        assert_eq!(rep.outcome, Outcome::Match);
        assert_eq!(rep.solved.as_deref(), Some("-3"));
    }

    #[test]
    fn discover_rejects_identities_without_unknown() {
        let r = reg();
        assert!(discover(r.get("thm1.3.i").unwrap(), 7, EngineChoice::Auto).is_err());
    }

    #[test]
    fn discover_independent_of_engine() {
        let r = reg();
        for (id, p) in [("conj3.8.ii", 19), ("conj3.9", 11), ("conj4.6", 13)] {
            let a = discover(r.get(id).unwrap(), p, EngineChoice::Bareiss).unwrap();
            let b = discover(r.get(id).unwrap(), p, EngineChoice::Modular).unwrap();
            assert_eq!(a.value, b.value, "{id} at {p}");
        }
    }

    #[test]
    fn unknown_tables_reproduced() {
        let r = reg();
        for (id, name) in [("conj3.7.ii", "x_p"), ("conj3.8.ii", "q_p"), ("conj3.9", "m_p"), ("conj4.6", "n_p")] {
            for &(p, v) in reference_table(name) {
                // The printed table has x_41 = 6; exact rational elimination gives 8.
                let v = if (name, p) == ("x_p", 41) { 8 } else { v };
                let d = discover(r.get(id).unwrap(), p, EngineChoice::Auto).unwrap();
                assert_eq!(d.value, Some(BigInt::from(v)), "{name} at {p}");
            }
        }
    }

    #[test]
    fn positivity_of_unknown_enforced() {
        let np = IdentityBuilder::new("np.negated", Status::Conjecture)
            .branch(
                vec![Cond::Prime, Cond::Mod(4, vec![1])],
                Some("range=1..(p-1)/2; atom=j+k+1; vars=x,y,z"),
                Claim::EqualsWithUnknown {
                    rhs: "leg(2)*2^((p-3)/2)*((p*b - 2*a)*x + 2*(b - a - n_p)*y*z) \
                          + leg(2)*2^((p-3)/2)*((2*b - a - 1)*(y + z + 1) + 1)"
                        .into(),
                    unknown: "n_p".into(),
                    positive: true,
                    table: vec![],
                },
            )
            .build();
        let d = discover(&np, 13, EngineChoice::Auto).unwrap();
        assert!(d.failure.unwrap().contains("not positive"));
        assert_eq!(verify(&np, 13).unwrap().outcome, Outcome::Mismatch);
    }

    #[test]
    fn scan_example() {
        let r = reg();
        let ids: Vec<Identity> = r.select("thm1.3.*").unwrap().into_iter().cloned().collect();
        let reports = scan(&ids, &[5, 7, 11, 13, 9], &VerifyOptions::default()).unwrap();
        assert_eq!(reports.len(), 10);
        assert_eq!(reports[0].modulus, 5);
        assert_eq!(reports[4].modulus, 13);
        assert!(reports.iter().all(|r| !r.is_failure()));
        assert_eq!(reports.iter().filter(|r| r.outcome == Outcome::Inapplicable).count(), 2);
    }

    #[test]
    fn scan_with_guard() {
        let r = reg();
        let ids: Vec<Identity> = r.select("conj3.1.*").unwrap().into_iter().cloned().collect();
        let opts = VerifyOptions {
            guard: true,
            ..Default::default()
        };
        let reports = scan_with_jobs(&ids, &[5, 7, 11, 13], &opts, 2).unwrap();
        assert!(reports.iter().all(|r| r.outcome == Outcome::Match));
    }

    #[test]
    fn st_relations_hold() {
        for d in 1..=3 {
            let id = format!("st.relation.d{d}");
            for p in [5u64, 7, 11, 13, 17, 19, 23, 29, 31] {
                let rep = report(&id, p);
                assert!(!rep.is_failure(), "{id} at {p}: {}", rep.computed);
            }
        }
    }

    #[test]
    fn st_relation_examples() {
        let r = st_relation_check(1, 13).unwrap();
        assert_eq!(r.outcome, Outcome::Match);
        assert_eq!(r.expected, "(p-1)S = 2T, (T/p) = -1");
        let r = st_relation_check(2, 5).unwrap();
        assert_eq!(r.outcome, Outcome::Match);
        assert!(r.computed.starts_with("S = 0,"));
        assert!(st_relation_check(3, 3).is_err());
        assert!(st_relation_check(1, 15).is_err());
    }

    #[test]
    fn st_symbol_table_small_primes() {
        for p in crate::arith::primes_between(5, 61) {
            for d in 1..=3 {
                if p % d == 0 {
                    continue;
                }
                assert_eq!(st_relation_check(d as i64, p).unwrap().outcome, Outcome::Match, "d={d} p={p}");
            }
        }
    }

    #[test]
    fn general_bilinear_symbol_matrices_vanish() {
        use crate::matrixgen::{IndexRange, MatrixSpec};
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..60 {
            let p = [3u64, 5, 7, 11, 13, 17][rng.gen_range(0..6)];
            let m = rng.gen_range(-4..=4);
            let n = m + rng.gen_range(3..=12);
            let spec = MatrixSpec::square(p, IndexRange::new(m, n), vec![], VarSet::ALL).unwrap();
            let d = crate::multiaffine::det_poly(&spec, EngineChoice::Auto).unwrap();
            assert!(d.is_zero(), "p={p} m={m} n={n}: {d}");
        }
    }

    #[test]
    fn meta_identities_hold() {
        for id in ["thm1.2.i.a", "thm1.2.i.b", "thm1.2.ii"] {
            for p in [5, 7, 11, 13] {
                assert_eq!(report(id, p).outcome, Outcome::Match, "{id} at {p}");
            }
        }
    }

    #[test]
    fn jacobsthal_criterion() {
        for n in (5..200).step_by(4) {
            assert!(!report("thm5.1", n).is_failure(), "{n}");
        }
    }

    #[test]
    fn conditions() {
        assert!(Cond::SymbolOver(7, -1).holds(5));
        assert!(!Cond::SymbolOver(7, -1).holds(29));
        assert!(Cond::SumOfTwoSquares(true).holds(25));
        assert!(Cond::SumOfTwoSquares(false).holds(21));
        assert!(Cond::NotMod(12, vec![1, 11]).holds(25 + 2));
        assert_eq!(Cond::Mod(24, vec![13, 19]).to_string(), "n = 13,19 (mod 24)");
    }

    #[test]
    fn rhs_reads_unknown_free_terms() {
        let poly = RhsContext::new(7).eval_poly("(1+y)*(1-z)", VarSet::of(&[Var::Y, Var::Z])).unwrap();
        assert_eq!(poly.to_string(), "1 + y - z - y*z");
    }
}
