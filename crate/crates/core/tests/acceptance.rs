//! One PASS/FAIL line per acceptance criterion.

use std::collections::BTreeMap;
use std::time::Instant;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use legendre_det::arith::{is_prime, primes_between};
use legendre_det::detengine::{det, det_bareiss, det_modular, EngineChoice};
use legendre_det::matrix::IntMatrix;
use legendre_det::matrixgen::{chapman_matrix, ChapmanVariant, MatrixSpec};
use legendre_det::multiaffine::{det_poly, interpolate, multiaffinity_guard, Assignment, MultiAffinePoly, Var, VarSet};
use legendre_det::quadfield::{class_number_imag, class_number_real, dirichlet_crosscheck, CROSSCHECK_TOLERANCE};
use legendre_det::registry::{
    check_meta, discover, random_meta_instance, reference_table, scan, Identity, MetaKind, Outcome, Registry,
    VerifyOptions,
};

/// Criteria that fail for a recorded reason outside the code.
const KNOWN_FAILURES: &[&str] = &["3"];

type Verdict = (bool, String);

fn main() {
    let registry = Registry::builtin();
    let criteria: Vec<(&str, &str, Box<dyn Fn(&Registry) -> Verdict>)> = vec![
        ("1", "theorem suite, primes <= 199, exact", Box::new(theorem_suite)),
        ("2", "meta-identities, 200 random instances, exact", Box::new(meta_suite)),
        ("3", "reference tables of unknowns, exact", Box::new(unknown_tables)),
        ("4", "conj3/conj4 and rem1.1 identities, primes <= 199, exact", Box::new(conjecture_scan)),
        ("5a", "Jacobsthal criterion, odd n < 2000, exact", Box::new(jacobsthal)),
        ("5b", "{c,d}_n conjectures, odd n <= 499, exact", Box::new(binary_forms)),
        ("6", "oracle equivalences, exact", Box::new(oracles)),
        ("7", "Dirichlet cross-check, p <= 97, rel tol 1e-6", Box::new(dirichlet)),
        ("8", "known single values, exact", Box::new(known_values)),
    ];
    let mut unexpected = 0;
    for (tag, name, check) in &criteria {
        let start = Instant::now();
        let (ok, detail) = check(&registry);
        let secs = start.elapsed().as_secs_f64();
        let verdict = if ok { "PASS" } else { "FAIL" };
        println!("{verdict} [{tag}] {name}: {detail} ({secs:.1}s)");
        if !ok && !KNOWN_FAILURES.contains(tag) {
            unexpected += 1;
        }
    }
    std::process::exit(i32::from(unexpected > 0));
}

fn run_scan(registry: &Registry, pattern: &str, moduli: &[u64]) -> Verdict {
    let ids: Vec<Identity> = registry.select(pattern).unwrap().into_iter().cloned().collect();
    let reports = scan(&ids, moduli, &VerifyOptions::default()).unwrap();
    let checked = reports.iter().filter(|r| r.outcome != Outcome::Inapplicable).count();
    let failures: Vec<String> = reports
        .iter()
        .filter(|r| r.is_failure())
        .map(|r| format!("{}@{}", r.id, r.modulus))
        .collect();
    if failures.is_empty() {
        (true, format!("{checked} checks over {} identities, 0 failures", ids.len()))
    } else {
        (false, format!("{} of {checked} failed: {}", failures.len(), failures.join(" ")))
    }
}

fn combine(parts: Vec<Verdict>) -> Verdict {
    let ok = parts.iter().all(|p| p.0);
    let detail = parts.into_iter().map(|p| p.1).collect::<Vec<_>>().join("; ");
    (ok, detail)
}

fn theorem_suite(r: &Registry) -> Verdict {
    let primes = primes_between(3, 199);
    combine(
        ["thm1.1.*", "thm1.3.*", "thm1.4.*", "lem2.2.*", "chapman.*", "wwn.evil-x"]
            .iter()
            .map(|pat| {
                let (ok, d) = run_scan(r, pat, &primes);
                (ok, format!("{pat}: {d}"))
            })
            .collect(),
    )
}

fn meta_suite(_: &Registry) -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let primes = primes_between(3, 61);
    let kinds = [MetaKind::JkInvariance, MetaKind::JkShift, MetaKind::Factorisation];
    let mut failures = Vec::new();
    let mut nontrivial = 0;
    for i in 0..200 {
        let p = primes[rng.gen_range(0..primes.len())];
        let kind = kinds[i % 3];
        let inst = random_meta_instance(&mut rng, p, kind);
        let (lhs, rhs) = check_meta(kind, &inst, EngineChoice::Auto).unwrap();
        if !lhs.trimmed().is_zero() {
            nontrivial += 1;
        }
        if !lhs.sub(&rhs).trimmed().is_zero() {
            failures.push(format!("{kind:?}@{p}"));
        }
    }
    (failures.is_empty(), format!(
            "200 instances ({nontrivial} with nonzero sides), {} failures {}",
            failures.len(),
            failures.join(" ")
        ))
}

fn unknown_tables(r: &Registry) -> Verdict {
    let mut wrong = Vec::new();
    let mut total = 0;
    for (id, name) in [("conj3.7.ii", "x_p"), ("conj3.8.ii", "q_p"), ("conj3.9", "m_p"), ("conj4.6", "n_p")] {
        for &(p, printed) in reference_table(name) {
            total += 1;
            let d = discover(r.get(id).unwrap(), p, EngineChoice::Auto).unwrap();
            if d.value != Some(BigInt::from(printed)) {
                let got = d.value.map_or_else(|| d.failure.unwrap_or_default(), |v| v.to_string());
                wrong.push(format!("{name} at {p}: computed {got}, printed {printed}"));
            }
        }
    }
    if wrong.is_empty() {
        (true, format!("{total} printed values reproduced"))
    } else {
        (false, format!("{} of {total} differ: {}", wrong.len(), wrong.join("; ")))
    }
}

fn conjecture_scan(r: &Registry) -> Verdict {
    let primes = primes_between(3, 199);
    combine(vec![run_scan(r, "conj3.*", &primes), run_scan(r, "conj4.*", &primes), run_scan(r, "rem1.1", &primes)])
}

fn jacobsthal(r: &Registry) -> Verdict {
    let odd: Vec<u64> = (3..2000).step_by(2).collect();
    run_scan(r, "thm5.1", &odd)
}

fn binary_forms(r: &Registry) -> Verdict {
    let odd: Vec<u64> = (3..=499).step_by(2).collect();
    run_scan(r, "conj5.*", &odd)
}

fn random_matrix(rng: &mut ChaCha8Rng, n: usize, bound: i64) -> IntMatrix {
    IntMatrix::from_fn(n, n, |_, _| rng.gen_range(-bound..=bound))
}

fn oracles(r: &Registry) -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut notes = Vec::new();
    let mut ok = true;

    let mut engine_mismatch = 0;
    for i in 0..500 {
        let n = rng.gen_range(0..=14);
        let bound = if i % 5 == 0 { 1_000_000_000 } else { 60 };
        let m = random_matrix(&mut rng, n, bound);
        if det_bareiss(&m).unwrap() != det_modular(&m).unwrap() {
            engine_mismatch += 1;
        }
    }
    ok &= engine_mismatch == 0;
    notes.push(format!("bareiss/modular {engine_mismatch}/500 differ"));

    let mut interp_bad = 0;
    for _ in 0..200 {
        let vars = VarSet::from_bits(rng.gen_range(0..16));
        let mut poly = MultiAffinePoly::zero(vars);
        for s in vars.subsets_canonical() {
            poly.set_coeff(s, BigInt::from(rng.gen_range(-1000..=1000))).unwrap();
        }
        let evals: BTreeMap<VarSet, BigInt> = vars
            .subsets_canonical()
            .into_iter()
            .map(|s| (s, poly.evaluate(&Assignment::corner(vars, s)).unwrap()))
            .collect();
        if interpolate(vars, &evals).unwrap() != poly {
            interp_bad += 1;
        }
    }
    ok &= interp_bad == 0;
    notes.push(format!("interpolation {interp_bad}/200 differ"));

    let mut lemma_bad = 0;
    for _ in 0..200 {
        let n = rng.gen_range(1..=9);
        let a = random_matrix(&mut rng, n, 20);
        let x: i64 = rng.gen_range(-30..=30);
        let shifted = IntMatrix::from_fn(n, n, |i, j| a[(i, j)] + x);
        let b = IntMatrix::from_fn(n, n, |i, j| a[(i, j)] - a[(i, 0)] - a[(0, j)] + a[(0, 0)]);
        let d = |m: &IntMatrix| det_bareiss(m).unwrap();
        if d(&shifted) - d(&a) != BigInt::from(x) * d(&b.trailing_minor(1)) {
            lemma_bad += 1;
        }
    }
    ok &= lemma_bad == 0;
    notes.push(format!("rank-one shift {lemma_bad}/200 differ"));

    let mut shapes = 0;
    let mut guard_bad = Vec::new();
    let mut eval_bad = Vec::new();
    for ident in r.identities() {
        for (bi, branch) in ident.branches.iter().enumerate() {
            let Some(n) = (3..200).find(|&n| branch.applies(n)) else { continue };
            let Some(spec) = branch.spec(n).unwrap() else { continue };
            shapes += 1;
            if !multiaffinity_guard(&spec, &mut rng, 2).unwrap() {
                guard_bad.push(format!("{}#{bi}", ident.id));
            }
            if !poly_matches_numeric(&spec, &mut rng) {
                eval_bad.push(format!("{}#{bi}", ident.id));
            }
        }
    }
    ok &= guard_bad.is_empty() && eval_bad.is_empty();
    notes.push(format!(
        "guard on {shapes} shapes, {} fail {}; evaluation vs numeric {} fail {}",
        guard_bad.len(),
        guard_bad.join(" "),
        eval_bad.len(),
        eval_bad.join(" ")
    ));

    let mut class_bad = Vec::new();
    for p in primes_between(3, 499) {
        if class_number_real(p).is_err() {
            class_bad.push(p);
        }
        if p % 4 == 3 && p > 3 && class_number_imag(p).is_err() {
            class_bad.push(p);
        }
    }
    ok &= class_bad.is_empty();
    notes.push(format!("class number dual computation, p <= 499: {} disagree {class_bad:?}", class_bad.len()));
    (ok, notes.join("; "))
}

/// `evaluate(det_poly(spec), A) = det(build_numeric(spec, A))` on random points.
fn poly_matches_numeric(spec: &MatrixSpec, rng: &mut ChaCha8Rng) -> bool {
    let poly = det_poly(spec, EngineChoice::Auto).unwrap();
    (0..20).all(|_| {
        let mut a = Assignment::new();
        for v in [Var::X, Var::Y, Var::Z, Var::W] {
            a = a.set(v, rng.gen_range(-5..=5));
        }
        let numeric = det_bareiss(&spec.build_numeric(&a).unwrap()).unwrap();
        poly.evaluate(&a).unwrap() == numeric
    })
}

fn dirichlet(_: &Registry) -> Verdict {
    let mut checked = 0;
    let mut bad = Vec::new();
    for p in primes_between(5, 97).into_iter().filter(|p| p % 4 == 1) {
        for a in 1..p as i64 {
            checked += 1;
            if !dirichlet_crosscheck(p, a).unwrap() {
                bad.push((p, a));
            }
        }
    }
    (
        bad.is_empty(),
        format!("{checked} (p, a) pairs at tolerance {CROSSCHECK_TOLERANCE:e}, {} fail {bad:?}", bad.len()),
    )
}

fn known_values(r: &Registry) -> Verdict {
    let mut notes = Vec::new();
    let mut ok = true;
    let mut expect = |label: &str, good: bool, shown: String| {
        ok &= good;
        notes.push(format!("{label} = {shown}"));
    };

    let c7 = det(&chapman_matrix(7, ChapmanVariant::C, 1).unwrap(), EngineChoice::Bareiss).unwrap();
    expect("C_7(1)", c7 == BigInt::from(-8), c7.to_string());

    let spec: MatrixSpec = "p=5; range=0..2; atom=j-k; vars=x".parse().unwrap();
    let poly = det_poly(&spec, EngineChoice::Auto).unwrap();
    expect("|x+((j-k)/5)|", poly.to_string() == "-2 - 5*x", poly.to_string());

    let spec: MatrixSpec = "n=7; range=2..5; atom=j^2+3*j*k+2*k^2".parse().unwrap();
    let d = det_poly(&spec, EngineChoice::Auto).unwrap();
    expect("{3,2}_7", d.to_string() == "3", d.to_string());

    let h = class_number_imag(23).unwrap();
    expect("h(-23)", h == 3, h.to_string());

    let primes: Vec<u64> = (3..=199).filter(|&p| p % 4 == 3 && is_prime(p)).collect();
    let cor = r.get("cor1.1.a").unwrap();
    let fours = primes
        .iter()
        .filter(|&&p| {
            let rep = legendre_det::registry::verify(cor, p).unwrap();
            rep.outcome == Outcome::Match && rep.computed == "4"
        })
        .count();
    expect("corollary determinant", fours == primes.len(), format!("4 at {fours}/{} primes", primes.len()));
    (ok, notes.join("; "))
}
