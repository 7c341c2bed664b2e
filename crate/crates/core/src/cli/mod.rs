//! The `legdet` command line.
//!
//! Exit codes: 0 when everything matched, 1 when a check failed (a mismatch
//! surviving the engine recheck, a guard failure, or an unsolvable unknown),
//! 2 for usage errors.

pub mod cache;
pub mod output;
mod selftest;

use std::collections::HashSet;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::primes_between;
use crate::detengine::{det_mod, EngineChoice};
use crate::error::{Error, Result};
use crate::matrixgen::MatrixSpec;
use crate::multiaffine::{det_poly, Assignment};
use crate::quadfield::{cached_invariants, invariants, seed_cache};
use crate::registry::{
    discover, reference_table, scan_with_jobs, Claim, Identity, Outcome, Registry, VerificationReport, VerifyOptions,
};

pub use output::{Format, Row};

#[derive(Debug, Parser)]
#[command(name = "legdet", version, about = "Legendre-symbol determinants and their closed forms")]
struct Cli {
    /// Output format; defaults to a table on a terminal and JSON lines otherwise.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Line-delimited JSON store of quadratic-field invariants.
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    /// Determinant engine: auto, bareiss or modular.
    #[arg(long, global = true, default_value = "auto")]
    engine: EngineChoice,
    /// Worker threads.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Fundamental units, class numbers and the pairs (a_p, b_p), (a'_p, b'_p).
    Invariants {
        #[arg(long, value_name = "A..B")]
        primes: String,
    },
    /// Determinant of a matrix spec, as a polynomial in its variables.
    Det {
        /// e.g. `p=13; range=0..(p-1)/2; atom=j+k; vars=x,y`
        spec: String,
        /// Reduce the determinant modulo M.
        #[arg(long = "mod", value_name = "M")]
        modulus: Option<u64>,
    },
    /// Check the selected identities and print one report per modulus.
    Verify(CheckArgs),
    /// Check the selected identities and print one summary row per identity.
    Scan(CheckArgs),
    /// Solve for the unknown integer sequence of the selected identities.
    Discover {
        #[arg(long, value_name = "GLOB")]
        id: String,
        #[command(flatten)]
        range: RangeArgs,
    },
    /// Run the built-in example checks.
    Selftest,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct RangeArgs {
    /// Odd primes in the inclusive range.
    #[arg(long, value_name = "A..B")]
    primes: Option<String>,
    /// Odd integers >= 3 in the inclusive range.
    #[arg(long, value_name = "A..B")]
    odd: Option<String>,
}

#[derive(Debug, Args)]
struct CheckArgs {
    /// Identity id or glob such as `thm1.3.*`.
    #[arg(long, value_name = "GLOB", default_value = "*")]
    id: String,
    #[command(flatten)]
    range: RangeArgs,
    /// Probe each family for multiaffinity before trusting interpolation.
    #[arg(long)]
    guard: bool,
    /// Record wall-clock milliseconds (reports are otherwise reproducible byte for byte).
    #[arg(long)]
    timings: bool,
}

/// Parses `A..B` (inclusive) or a single `N`.
pub fn parse_bounds(src: &str) -> Result<(u64, u64)> {
    let bad = || Error::BadRange(format!("`{src}`"));
    let (lo, hi) = match src.split_once("..") {
        Some((a, b)) => (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?),
        None => {
            let n = src.trim().parse().map_err(|_| bad())?;
            (n, n)
        }
    };
    if lo > hi {
        return Err(Error::BadRange(format!("`{src}` is empty")));
    }
    Ok((lo, hi))
}

impl RangeArgs {
    fn moduli(&self) -> Result<Vec<u64>> {
        let (src, list) = match (&self.primes, &self.odd) {
            (Some(s), _) => {
                let (lo, hi) = parse_bounds(s)?;
                (s, primes_between(lo.max(3), hi))
            }
            (None, Some(s)) => {
                let (lo, hi) = parse_bounds(s)?;
                (s, (lo.max(3)..=hi).filter(|n| n % 2 == 1).collect())
            }
            (None, None) => return Err(Error::BadRange("no range given".into())),
        };
        if list.is_empty() {
            return Err(Error::BadRange(format!("`{src}` contains no moduli")));
        }
        Ok(list)
    }
}

/// Entry point for the binary.
pub fn run() -> i32 {
    let _ = env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).try_init();
    let registry = Registry::builtin();
    run_with(std::env::args_os(), &registry, &mut std::io::stdout().lock())
}

/// Runs the command line against an explicit registry and output stream.
pub fn run_with<I, T>(args: I, registry: &Registry, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli, registry, out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::BadRange(_) | Error::UnknownIdentity(_) | Error::Parse(_) | Error::BadModulus(_) => 2,
                _ => 1,
            }
        }
    }
}

fn execute(cli: &Cli, registry: &Registry, out: &mut dyn Write) -> Result<i32> {
    let format = cli.format.unwrap_or_else(Format::detect);
    let jobs = cli.jobs.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    if jobs == 0 {
        return Err(Error::Parse("--jobs must be at least 1".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Eval(e.to_string()))?;
    let cache = CacheSession::open(cli.cache.as_ref())?;
    let code = match &cli.command {
        Command::Invariants { primes } => {
            let (lo, hi) = parse_bounds(primes)?;
            let list = primes_between(lo.max(3), hi);
            if list.is_empty() {
                return Err(Error::BadRange(format!("`{primes}` contains no odd primes")));
            }
            let rows = pool.install(|| list.par_iter().map(|&p| InvariantRow::new(p)).collect::<Result<Vec<_>>>())?;
            output::emit(out, format, &rows)?;
            0
        }
        Command::Det { spec, modulus } => {
            let spec: MatrixSpec = spec.parse()?;
            let row = pool.install(|| DetRow::new(&spec, cli.engine, *modulus))?;
            output::emit(out, format, &[row])?;
            0
        }
        Command::Verify(args) => {
            let reports = check(registry, args, cli.engine, jobs)?;
            output::emit(out, format, &reports)?;
            i32::from(reports.iter().any(VerificationReport::is_failure))
        }
        Command::Scan(args) => {
            let reports = check(registry, args, cli.engine, jobs)?;
            let rows = summarize(&reports);
            for r in reports.iter().filter(|r| r.is_failure()) {
                log::warn!("{} at {}: {} (residual {})", r.id, r.modulus, r.outcome, r.residual);
            }
            output::emit(out, format, &rows)?;
            i32::from(reports.iter().any(VerificationReport::is_failure))
        }
        Command::Discover { id, range } => {
            let identities: Vec<&Identity> = select(registry, id)?
                .into_iter()
                .filter(|i| i.unknown().is_some())
                .collect();
            if identities.is_empty() {
                return Err(Error::UnknownIdentity(format!("{id} (no identity with an unknown)")));
            }
            let moduli = range.moduli()?;
            let tasks: Vec<(&Identity, u64)> = identities
                .iter()
                .flat_map(|&i| moduli.iter().map(move |&n| (i, n)))
                .filter(|(i, n)| i.branch_for(*n).is_some_and(|b| matches!(b.claim, Claim::EqualsWithUnknown { .. })))
                .collect();
            let rows = pool.install(|| {
                tasks
                    .par_iter()
                    .map(|&(i, n)| DiscoverRow::new(i, n, cli.engine))
                    .collect::<Result<Vec<_>>>()
            })?;
            output::emit(out, format, &rows)?;
            i32::from(rows.iter().any(|r| r.value.is_none()))
        }
        Command::Selftest => {
            let rows = selftest::run(registry);
            output::emit(out, format, &rows)?;
            i32::from(rows.iter().any(|r| !r.passed))
        }
    };
    cache.finish()?;
    Ok(code)
}

fn select<'a>(registry: &'a Registry, pattern: &str) -> Result<Vec<&'a Identity>> {
    let found = registry.select(pattern)?;
    if found.is_empty() {
        return Err(Error::UnknownIdentity(pattern.to_string()));
    }
    Ok(found)
}

fn check(registry: &Registry, args: &CheckArgs, engine: EngineChoice, jobs: usize) -> Result<Vec<VerificationReport>> {
    let identities: Vec<Identity> = select(registry, &args.id)?.into_iter().cloned().collect();
    let moduli = args.range.moduli()?;
    let opts = VerifyOptions {
        engine,
        guard: args.guard,
        ..Default::default()
    };
    let mut reports = scan_with_jobs(&identities, &moduli, &opts, jobs)?;
    if !args.timings {
        for r in &mut reports {
            r.millis = 0;
        }
    }
    Ok(reports)
}

/// Loads the invariant store up front and writes new primes back at the end.
struct CacheSession {
    path: Option<PathBuf>,
    known: HashSet<u64>,
    rewrite: bool,
}

impl CacheSession {
    fn open(path: Option<&PathBuf>) -> Result<Self> {
        let Some(path) = path else {
            return Ok(CacheSession {
                path: None,
                known: HashSet::new(),
                rewrite: false,
            });
        };
        let loaded = cache::load(path)?;
        let known = loaded.records.iter().map(|r| r.p).collect();
        seed_cache(loaded.records);
        Ok(CacheSession {
            path: Some(path.clone()),
            known,
            rewrite: loaded.stale || loaded.skipped > 0,
        })
    }

    fn finish(self) -> Result<()> {
        let Some(path) = self.path else { return Ok(()) };
        let all: Vec<_> = cached_invariants().iter().map(|r| (**r).clone()).collect();
        if self.rewrite {
            cache::store(&path, &all)
        } else {
            let fresh: Vec<_> = all.into_iter().filter(|r| !self.known.contains(&r.p)).collect();
            if fresh.is_empty() {
                return Ok(());
            }
            cache::append(&path, &fresh)
        }
    }
}

#[derive(Debug, Serialize)]
pub struct InvariantRow {
    pub p: u64,
    pub h_plus: u64,
    pub h_minus: u64,
    pub eps_two_a: String,
    pub eps_two_b: String,
    pub two_a: String,
    pub two_b: String,
    pub two_a_prime: String,
    pub two_b_prime: String,
}

impl InvariantRow {
    pub fn new(p: u64) -> Result<Self> {
        let inv = invariants(p)?;
        Ok(InvariantRow {
            p,
            h_plus: inv.h_plus,
            h_minus: inv.h_minus,
            eps_two_a: inv.eps.two_a.to_string(),
            eps_two_b: inv.eps.two_b.to_string(),
            two_a: inv.ab.two_a.to_string(),
            two_b: inv.ab.two_b.to_string(),
            two_a_prime: inv.ab_prime.two_a.to_string(),
            two_b_prime: inv.ab_prime.two_b.to_string(),
        })
    }
}

impl Row for InvariantRow {
    fn headers() -> &'static [&'static str] {
        &["p", "h_plus", "h_minus", "eps_two_a", "eps_two_b", "two_a", "two_b", "two_a_prime", "two_b_prime"]
    }

    fn cells(&self) -> Vec<String> {
        vec![
            self.p.to_string(),
            self.h_plus.to_string(),
            self.h_minus.to_string(),
            self.eps_two_a.clone(),
            self.eps_two_b.clone(),
            self.two_a.clone(),
            self.two_b.clone(),
            self.two_a_prime.clone(),
            self.two_b_prime.clone(),
        ]
    }
}

#[derive(Debug, Serialize)]
pub struct DetRow {
    pub spec: String,
    pub dim: usize,
    pub engine: String,
    pub det: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub modulus: Option<u64>,
}

impl DetRow {
    pub fn new(spec: &MatrixSpec, engine: EngineChoice, modulus: Option<u64>) -> Result<Self> {
        let det = match modulus {
            Some(m) if spec.vars().is_empty() => det_mod(&spec.build_numeric(&Assignment::new())?, m)?.to_string(),
            Some(m) if m < 2 => return Err(Error::BadModulus(m as i64)),
            Some(m) => det_poly(spec, engine)?.reduce_mod(&m.into()).trimmed().to_string(),
            None => det_poly(spec, engine)?.trimmed().to_string(),
        };
        Ok(DetRow {
            spec: spec.to_string(),
            dim: spec.dim(),
            engine: engine.resolve(spec.dim()).to_string(),
            det,
            modulus,
        })
    }
}

impl Row for DetRow {
    fn headers() -> &'static [&'static str] {
        &["spec", "dim", "engine", "det", "modulus"]
    }

    fn cells(&self) -> Vec<String> {
        vec![
            self.spec.clone(),
            self.dim.to_string(),
            self.engine.clone(),
            self.det.clone(),
            self.modulus.map_or_else(String::new, |m| m.to_string()),
        ]
    }
}

#[derive(Debug, Serialize)]
pub struct SummaryRow {
    pub id: String,
    pub checked: usize,
    pub matched: usize,
    pub mismatched: usize,
    pub guard_failed: usize,
    pub first_failure: Option<u64>,
}

fn summarize(reports: &[VerificationReport]) -> Vec<SummaryRow> {
    let mut rows: Vec<SummaryRow> = Vec::new();
    for r in reports {
        if rows.last().is_none_or(|last| last.id != r.id) {
            rows.push(SummaryRow {
                id: r.id.clone(),
                checked: 0,
                matched: 0,
                mismatched: 0,
                guard_failed: 0,
                first_failure: None,
            });
        }
        let row = rows.last_mut().unwrap();
        match r.outcome {
            Outcome::Inapplicable => continue,
            Outcome::Match => row.matched += 1,
            Outcome::Mismatch => row.mismatched += 1,
            Outcome::GuardFailed => row.guard_failed += 1,
        }
        row.checked += 1;
        if r.is_failure() && row.first_failure.is_none() {
            row.first_failure = Some(r.modulus);
        }
    }
    rows
}

impl Row for SummaryRow {
    fn headers() -> &'static [&'static str] {
        &["id", "checked", "matched", "mismatched", "guard_failed", "first_failure"]
    }

    fn cells(&self) -> Vec<String> {
        vec![
            self.id.clone(),
            self.checked.to_string(),
            self.matched.to_string(),
            self.mismatched.to_string(),
            self.guard_failed.to_string(),
            self.first_failure.map_or_else(String::new, |n| n.to_string()),
        ]
    }
}

#[derive(Debug, Serialize)]
pub struct DiscoverRow {
    pub id: String,
    pub p: u64,
    pub unknown: String,
    pub value: Option<String>,
    /// The value printed alongside the conjecture, if any.
    pub reference: Option<i64>,
    /// `agrees`, `differs`, `unlisted` or the reason solving failed.
    pub status: String,
}

impl DiscoverRow {
    pub fn new(identity: &Identity, p: u64, engine: EngineChoice) -> Result<Self> {
        let unknown = identity.unknown().unwrap_or_default().to_string();
        let d = discover(identity, p, engine)?;
        let reference = identity
            .branch_for(p)
            .and_then(|b| b.claim.table().iter().find(|(q, _)| *q == p).map(|&(_, v)| v))
            .or_else(|| reference_table(&unknown).iter().find(|(q, _)| *q == p).map(|&(_, v)| v));
        let status = match (&d.value, reference, &d.failure) {
            (_, _, Some(f)) => f.clone(),
            (Some(v), Some(r), None) if *v == r.into() => "agrees".into(),
            (Some(_), Some(_), None) => "differs".into(),
            _ => "unlisted".into(),
        };
        Ok(DiscoverRow {
            id: identity.id.clone(),
            p,
            unknown,
            value: d.value.map(|v| v.to_string()),
            reference,
            status,
        })
    }
}

impl Row for DiscoverRow {
    fn headers() -> &'static [&'static str] {
        &["id", "p", "unknown", "value", "reference", "status"]
    }

    fn cells(&self) -> Vec<String> {
        vec![
            self.id.clone(),
            self.p.to_string(),
            self.unknown.clone(),
            self.value.clone().unwrap_or_default(),
            self.reference.map_or_else(String::new, |v| v.to_string()),
            self.status.clone(),
        ]
    }
}
