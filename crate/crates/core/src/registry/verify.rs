use std::fmt;
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::identity::{Branch, Claim, Cond, Identity, IdentityBuilder, Status};
use super::meta::{check_meta, random_meta_instance};
use super::rhs::RhsContext;
use crate::arith::{euler_phi, is_sum_of_two_squares, jacobi, jacobi_big, jacobsthal_sum};
use crate::detengine::{det, det_mod, EngineChoice};
use crate::error::{Error, Result};
use crate::matrixgen::{Atom, IndexRange, MatrixSpec};
use crate::multiaffine::{det_poly, multiaffinity_guard, MultiAffinePoly, VarSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Match,
    Mismatch,
    Inapplicable,
    GuardFailed,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Match => "match",
            Outcome::Mismatch => "mismatch",
            Outcome::Inapplicable => "inapplicable",
            Outcome::GuardFailed => "guard_failed",
        })
    }
}

/// Result of checking one identity at one modulus.
///
/// Polynomial claims carry canonical polynomial text in `computed`,
/// `expected` and `residual`; other claims carry the relevant values.
/// `residual` is `"0"` exactly when the outcome is a match.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub id: String,
    pub modulus: u64,
    pub outcome: Outcome,
    pub computed: String,
    pub expected: String,
    pub residual: String,
    pub engine: String,
    pub millis: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub solved: Option<String>,
}

impl VerificationReport {
    fn inapplicable(id: &str, n: u64) -> Self {
        VerificationReport {
            id: id.to_string(),
            modulus: n,
            outcome: Outcome::Inapplicable,
            computed: String::new(),
            expected: String::new(),
            residual: String::new(),
            engine: String::new(),
            millis: 0,
            solved: None,
        }
    }

    pub fn is_failure(&self) -> bool {
        matches!(self.outcome, Outcome::Mismatch | Outcome::GuardFailed)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub engine: EngineChoice,
    /// Run the multiaffinity guard before trusting the interpolation.
    pub guard: bool,
    /// Number of probe rounds for the guard.
    pub guard_probes: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            engine: EngineChoice::Auto,
            guard: false,
            guard_probes: 1,
        }
    }
}

impl VerifyOptions {
    pub fn with_engine(engine: EngineChoice) -> Self {
        VerifyOptions {
            engine,
            ..Default::default()
        }
    }
}

struct Check {
    outcome: Outcome,
    computed: String,
    expected: String,
    residual: String,
    solved: Option<String>,
    dim: usize,
}

impl Check {
    fn values(ok: bool, computed: String, expected: String, residual: String, dim: usize) -> Self {
        Check {
            outcome: if ok { Outcome::Match } else { Outcome::Mismatch },
            computed,
            expected,
            residual: if ok { "0".into() } else { residual },
            solved: None,
            dim,
        }
    }

    fn polys(computed: &MultiAffinePoly, expected: &MultiAffinePoly, dim: usize) -> Self {
        let residual = computed.sub(expected).trimmed();
        Check {
            outcome: if residual.is_zero() { Outcome::Match } else { Outcome::Mismatch },
            computed: computed.trimmed().to_string(),
            expected: expected.trimmed().to_string(),
            residual: residual.to_string(),
            solved: None,
            dim,
        }
    }
}

/// Checks `identity` at modulus `n` with default options.
pub fn verify(identity: &Identity, n: u64) -> Result<VerificationReport> {
    verify_with(identity, n, &VerifyOptions::default())
}

pub fn verify_with(identity: &Identity, n: u64, opts: &VerifyOptions) -> Result<VerificationReport> {
    let Some(branch) = identity.branch_for(n) else {
        return Ok(VerificationReport::inapplicable(&identity.id, n));
    };
    let start = Instant::now();
    let spec = branch.spec(n)?;
    if let (true, Some(spec)) = (opts.guard, &spec) {
        let mut rng = ChaCha8Rng::seed_from_u64(n ^ 0x9e37_79b9);
        if !multiaffinity_guard(spec, &mut rng, opts.guard_probes)? {
            return Ok(VerificationReport {
                outcome: Outcome::GuardFailed,
                engine: opts.engine.resolve(spec.dim()).to_string(),
                millis: start.elapsed().as_millis() as u64,
                ..VerificationReport::inapplicable(&identity.id, n)
            });
        }
    }
    let check = run_claim(identity, branch, spec.as_ref(), n, opts)?;
    Ok(VerificationReport {
        id: identity.id.clone(),
        modulus: n,
        outcome: check.outcome,
        computed: check.computed,
        expected: check.expected,
        residual: check.residual,
        engine: opts.engine.resolve(check.dim).to_string(),
        millis: start.elapsed().as_millis() as u64,
        solved: check.solved,
    })
}

fn need_spec(spec: Option<&MatrixSpec>) -> Result<&MatrixSpec> {
    spec.ok_or_else(|| Error::Eval("claim requires a matrix family".into()))
}

fn run_claim(
    identity: &Identity,
    branch: &Branch,
    spec: Option<&MatrixSpec>,
    n: u64,
    opts: &VerifyOptions,
) -> Result<Check> {
    let dim = spec.map_or(0, MatrixSpec::dim);
    Ok(match &branch.claim {
        Claim::Equals(rhs) => {
            let spec = need_spec(spec)?;
            let computed = det_poly(spec, opts.engine)?;
            let expected = RhsContext::new(n).eval_poly(rhs, spec.vars())?;
            Check::polys(&computed, &expected, dim)
        }
        Claim::EqualsWithUnknown { .. } => {
            let d = solve_unknown(branch, need_spec(spec)?, n, opts.engine)?;
            let mut check = match &d.expected {
                Some(expected) => Check::polys(&d.computed, expected, dim),
                None => Check::values(
                    false,
                    d.computed.trimmed().to_string(),
                    d.rhs.clone(),
                    d.failure.clone().unwrap_or_default(),
                    dim,
                ),
            };
            if let (Outcome::Match, Some(reason)) = (check.outcome, &d.failure) {
                check.outcome = Outcome::Mismatch;
                check.residual = reason.clone();
            }
            check.solved = d.value.as_ref().map(BigInt::to_string);
            check
        }
        Claim::DivisibleBy(expr) => {
            let m = RhsContext::new(n)
                .eval_integer(expr)?
                .to_u64()
                .filter(|&m| m > 0)
                .ok_or_else(|| Error::Eval(format!("modulus `{expr}` is not positive")))?;
            let mat = need_spec(spec)?.build_numeric(&Default::default())?;
            let r = if m == 1 { 0 } else { det_mod(&mat, m)? };
            Check::values(r == 0, format!("{r} (mod {m})"), format!("0 (mod {m})"), r.to_string(), dim)
        }
        Claim::HalfTotientTimesSquare => {
            let mat = need_spec(spec)?.build_numeric(&Default::default())?;
            let d = det(&mat, opts.engine)?;
            let half = BigInt::from(euler_phi(n) / 2);
            let (q, r) = d.div_mod_floor(&half);
            let root = if q.is_negative() { None } else { Some(q.sqrt()) };
            let witness = root.filter(|t| r.is_zero() && t * t == q);
            let expected = match &witness {
                Some(t) => format!("{half}*{t}^2"),
                None => format!("{half}*t^2"),
            };
            let mut c = Check::values(witness.is_some(), d.to_string(), expected, d.to_string(), dim);
            c.solved = witness.map(|t| t.to_string());
            c
        }
        Claim::QuadraticResidue(factor) => {
            let mat = need_spec(spec)?.build_numeric(&Default::default())?;
            let r = det_mod(&mat, n)?;
            let s = jacobi_big(&(BigInt::from(*factor) * r), n)?.as_i64();
            Check::values(
                s == 1,
                format!("{r} (mod {n}), symbol {s}"),
                format!("({factor}*det/{n}) = 1"),
                (1 - s).to_string(),
                dim,
            )
        }
        Claim::JacobiZero => {
            let mat = need_spec(spec)?.build_numeric(&Default::default())?;
            let r = det_mod(&mat, n)?;
            let s = jacobi_big(&BigInt::from(r), n)?.as_i64();
            Check::values(s == 0, format!("{r} (mod {n}), symbol {s}"), format!("(det/{n}) = 0"), s.to_string(), dim)
        }
        Claim::JacobsthalCriterion => {
            let s = jacobsthal_sum(n)?;
            let two_squares = is_sum_of_two_squares(n);
            let ok = (s == 0) != two_squares;
            let expected = if two_squares { "nonzero" } else { "0" };
            Check::values(ok, s.to_string(), expected.into(), s.to_string(), 0)
        }
        Claim::StRelation(d) => st_relation(*d, n, opts.engine)?,
        Claim::Meta { kind, instances } => {
            let mut last = None;
            for i in 0..*instances {
                let seed = seed_for(&identity.id, n, i as u64);
                let inst = random_meta_instance(&mut ChaCha8Rng::seed_from_u64(seed), n, *kind);
                let (lhs, rhs) = check_meta(*kind, &inst, opts.engine)?;
                let c = Check::polys(&lhs, &rhs, inst.n as usize);
                if c.outcome != Outcome::Match {
                    return Ok(c);
                }
                last = Some(c);
            }
            last.unwrap_or_else(|| Check::values(true, "0".into(), "0".into(), "0".into(), 0))
        }
    })
}

fn seed_for(id: &str, n: u64, i: u64) -> u64 {
    // FNV-1a, stable across platforms and releases.
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in id.bytes().chain(n.to_le_bytes()).chain(i.to_le_bytes()) {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h
}

/// Checks both displayed relations between `S(d,p)` over `1..(p-1)/2` and
/// `T(d,p)` over `0..(p-1)/2`.
fn st_relation(d: i64, p: u64, engine: EngineChoice) -> Result<Check> {
    let half = (p as i64 - 1) / 2;
    let atom = Atom {
        alpha: 1,
        gamma: d,
        ..Default::default()
    };
    let build = |lo| -> Result<BigInt> {
        let spec = MatrixSpec::square(p, IndexRange::new(lo, half), vec![(1, atom)], VarSet::EMPTY)?;
        det(&spec.build_numeric(&Default::default())?, engine)
    };
    let (s, t) = (build(1)?, build(0)?);
    let leg_d = jacobi(d, p as i64)?.as_i64();
    let leg_t = jacobi_big(&t, p)?.as_i64();
    let (ok, expected) = if leg_d == 1 {
        let leg2 = jacobi(2, p as i64)?.as_i64();
        let ok = &s * (p - 1) == &t * 2u32 && leg_t == leg2;
        (ok, format!("(p-1)S = 2T, (T/p) = {leg2}"))
    } else {
        (s.is_zero() && leg_t == 1, "S = 0, (T/p) = 1".to_string())
    };
    let computed = format!("S = {s}, T = {t}, (T/p) = {leg_t}");
    Ok(Check::values(ok, computed, expected, "relation fails".into(), half as usize + 1))
}

/// Checks both displayed facts about `S(d,p)` and `T(d,p)` at an odd prime
/// `p` not dividing `d`.
pub fn st_relation_check(d: i64, p: u64) -> Result<VerificationReport> {
    let id = format!("st.relation.d{d}");
    let identity = IdentityBuilder::new(&id, Status::KnownResult)
        .branch(vec![Cond::Prime, Cond::Coprime(d.unsigned_abs())], None, Claim::StRelation(d))
        .build();
    if identity.branch_for(p).is_none() {
        return Err(Error::Eval(format!("S(d,p) relation needs an odd prime p coprime to d, got d={d}, p={p}")));
    }
    verify(&identity, p)
}

/// Outcome of solving for a declared unknown.
#[derive(Clone, Debug)]
pub struct Discovery {
    pub computed: MultiAffinePoly,
    /// The right-hand side text with the unknown unbound.
    pub rhs: String,
    pub value: Option<BigInt>,
    /// The right-hand side with the solved value substituted.
    pub expected: Option<MultiAffinePoly>,
    pub failure: Option<String>,
}

fn solve_unknown(branch: &Branch, spec: &MatrixSpec, n: u64, engine: EngineChoice) -> Result<Discovery> {
    let Claim::EqualsWithUnknown {
        rhs,
        unknown,
        positive,
        ..
    } = &branch.claim
    else {
        return Err(Error::Discover("branch declares no unknown".into()));
    };
    let vars = spec.vars();
    let computed = det_poly(spec, engine)?;
    let at = |u: i64| -> Result<MultiAffinePoly> { RhsContext::new(n).bind(unknown, u).eval_poly(rhs, vars) };
    // The right-hand side is affine in the unknown, so two evaluations fix it.
    let e0 = at(0)?;
    let slope = at(1)?.sub(&e0);
    let gap = computed.sub(&e0);
    let mut value: Option<BigInt> = None;
    let mut failure = None;
    for s in vars.subsets_canonical() {
        let (d, g) = (slope.coeff(s), gap.coeff(s));
        if d.is_zero() {
            if !g.is_zero() {
                failure = Some(format!("coefficient of {} differs by {g} and does not involve {unknown}", monomial(s)));
            }
            continue;
        }
        let (q, r) = g.div_mod_floor(d);
        if !r.is_zero() {
            failure = Some(format!("{unknown} = {g}/{d} is not an integer"));
            continue;
        }
        match &value {
            Some(v) if *v != q => failure = Some(format!("{unknown} is both {v} and {q}")),
            Some(_) => {}
            None => value = Some(q),
        }
    }
    if value.is_none() && failure.is_none() {
        failure = Some(format!("{unknown} does not occur"));
    }
    if let (Some(v), true, None) = (&value, *positive, &failure) {
        if !v.is_positive() {
            failure = Some(format!("{unknown} = {v} is not positive"));
        }
    }
    let expected = match (&value, &failure) {
        (Some(v), None) => Some(RhsContext::new(n).bind(unknown, v.clone()).eval_poly(rhs, vars)?),
        _ => None,
    };
    Ok(Discovery {
        computed,
        rhs: rhs.clone(),
        value: if failure.is_none() { value } else { None },
        expected,
        failure,
    })
}

fn monomial(s: VarSet) -> String {
    if s.is_empty() {
        "1".into()
    } else {
        s.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("*")
    }
}

/// Solves for the identity's unknown at `n`.
pub fn discover(identity: &Identity, n: u64, engine: EngineChoice) -> Result<Discovery> {
    let branch = identity
        .branch_for(n)
        .ok_or_else(|| Error::Discover(format!("{} does not apply at {n}", identity.id)))?;
    if branch.claim.unknown().is_none() {
        return Err(Error::Discover(format!("{} has no unknown at {n}", identity.id)));
    }
    let spec = branch.spec(n)?.ok_or_else(|| Error::Discover("no matrix family".into()))?;
    solve_unknown(branch, &spec, n, engine)
}

/// Verifies every identity at every modulus, `identities`-major and in
/// ascending modulus order. Mismatches are recomputed with the alternate
/// engine; the guard runs at the smallest applicable modulus of each branch.
pub fn scan(identities: &[Identity], moduli: &[u64], opts: &VerifyOptions) -> Result<Vec<VerificationReport>> {
    let mut moduli = moduli.to_vec();
    moduli.sort_unstable();
    moduli.dedup();
    let mut tasks = Vec::new();
    for ident in identities {
        let mut guarded = vec![false; ident.branches.len()];
        for &n in &moduli {
            let branch = ident.branches.iter().position(|b| b.applies(n));
            let guard = match branch {
                Some(i) if opts.guard && !guarded[i] => {
                    guarded[i] = true;
                    true
                }
                _ => false,
            };
            tasks.push((ident, n, guard));
        }
    }
    tasks
        .par_iter()
        .map(|&(ident, n, guard)| {
            let local = VerifyOptions { guard, ..*opts };
            let report = verify_with(ident, n, &local)?;
            if report.outcome != Outcome::Mismatch {
                return Ok(report);
            }
            let dim = ident
                .branch_for(n)
                .and_then(|b| b.spec(n).ok().flatten())
                .map_or(0, |s| s.dim());
            let alt = VerifyOptions {
                engine: opts.engine.alternate(dim),
                guard: false,
                ..*opts
            };
            let second = verify_with(ident, n, &alt)?;
            if second.outcome == Outcome::Match {
                log::warn!("{} at {n}: engines disagree; keeping the {} result", ident.id, second.engine);
            }
            Ok(second)
        })
        .collect()
}

/// [`scan`] inside a dedicated pool of `jobs` threads.
pub fn scan_with_jobs(
    identities: &[Identity],
    moduli: &[u64],
    opts: &VerifyOptions,
    jobs: usize,
) -> Result<Vec<VerificationReport>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::Eval(e.to_string()))?;
    pool.install(|| scan(identities, moduli, opts))
}

