use legendre_det::cli::run_with;
use legendre_det::registry::{Claim, Cond, IdentityBuilder, Registry, Status};

fn run(registry: &Registry, args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut argv = vec!["legdet"];
    argv.extend_from_slice(args);
    let code = run_with(argv, registry, &mut out);
    (code, String::from_utf8(out).unwrap())
}

fn builtin(args: &[&str]) -> (i32, String) {
    run(&Registry::builtin(), args)
}

fn json_lines(text: &str) -> Vec<serde_json::Value> {
    text.lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn proved_theorem_exits_zero() {
    let (code, out) = builtin(&["verify", "--id", "thm1.3.*", "--primes", "5..199", "--format", "json"]);
    assert_eq!(code, 0);
    let rows = json_lines(&out);
    assert_eq!(rows.len(), 2 * 44);
    assert!(rows.iter().all(|r| r["outcome"] == "match"));
}

#[test]
fn falsified_entry_exits_one() {
    let mut registry = Registry::builtin();
    registry.push(
        IdentityBuilder::new("thm1.3.ii.wrong", Status::Theorem)
            .branch(
                vec![Cond::Prime, Cond::Mod(4, vec![3])],
                Some("range=0..(p-1)/2; atom=j-k; vars=x,y,z"),
                Claim::Equals("(1+y)*(1+z)".into()),
            )
            .build(),
    );
    let (code, out) = run(&registry, &["verify", "--id", "thm1.3.ii*", "--primes", "5..23", "--format", "json"]);
    assert_eq!(code, 1);
    let bad: Vec<_> = json_lines(&out).into_iter().filter(|r| r["outcome"] == "mismatch").collect();
    assert_eq!(bad.len(), 4);
    assert!(bad.iter().all(|r| r["id"] == "thm1.3.ii.wrong" && r["residual"] != "0"));
    let (code, _) = run(&registry, &["scan", "--primes", "7", "--format", "json"]);
    assert_eq!(code, 1);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(builtin(&["verify", "--id", "no.such.id", "--primes", "5..9"]).0, 2);
    assert_eq!(builtin(&["verify", "--id", "thm1.3.i", "--primes", "9..5"]).0, 2);
    assert_eq!(builtin(&["verify", "--id", "thm1.3.i", "--primes", "24..28"]).0, 2);
    assert_eq!(builtin(&["verify", "--id", "thm1.3.i"]).0, 2);
    assert_eq!(builtin(&["verify", "--id", "thm1.3.i", "--primes", "5..9", "--odd", "5..9"]).0, 2);
    assert_eq!(builtin(&["invariants", "--primes", "8..10"]).0, 2);
    assert_eq!(builtin(&["invariants", "--primes", "a..b"]).0, 2);
    assert_eq!(builtin(&["det", "n=8; range=0..3; atom=j+k"]).0, 2);
    assert_eq!(builtin(&["--jobs", "0", "selftest"]).0, 2);
    assert_eq!(builtin(&["frobnicate"]).0, 2);
    assert_eq!(builtin(&["discover", "--id", "thm1.3.i", "--primes", "5..9"]).0, 2);
}

#[test]
fn odd_composite_range() {
    let (code, out) = builtin(&["verify", "--id", "conj5.1.i", "--odd", "9..199", "--format", "json"]);
    assert_eq!(code, 0);
    let applicable: Vec<u64> = json_lines(&out)
        .iter()
        .filter(|r| r["outcome"] == "match")
        .map(|r| r["modulus"].as_u64().unwrap())
        .collect();
    assert_eq!(&applicable[..4], [21, 33, 57, 69]);
}

#[test]
fn reports_are_deterministic() {
    let args = ["verify", "--id", "conj3.1.*", "--primes", "5..43", "--format", "json"];
    let with = |jobs: &str| {
        let mut a = vec!["--jobs", jobs];
        a.extend_from_slice(&args);
        builtin(&a).1
    };
    let first = with("1");
    assert_eq!(first, with("1"));
    assert_eq!(first, with("3"));
}

#[test]
fn invariants_rows() {
    let (code, out) = builtin(&["invariants", "--primes", "5..13", "--format", "json"]);
    assert_eq!(code, 0);
    let rows = json_lines(&out);
    let ps: Vec<u64> = rows.iter().map(|r| r["p"].as_u64().unwrap()).collect();
    assert_eq!(ps, [5, 7, 11, 13]);
    assert_eq!((rows[0]["two_a"].as_str(), rows[0]["two_b"].as_str()), (Some("1"), Some("1")));
    assert_eq!(rows[1]["h_minus"], 1);
}

#[test]
fn csv_and_table_formats() {
    let (_, csv_text) = builtin(&["invariants", "--primes", "5..13", "--format", "csv"]);
    let mut reader = csv::Reader::from_reader(csv_text.as_bytes());
    let headers = reader.headers().unwrap().clone();
    assert_eq!(&headers[0], "p");
    assert_eq!(reader.records().count(), 4);
    let (_, table) = builtin(&["invariants", "--primes", "5..13", "--format", "table"]);
    assert_eq!(table.lines().count(), 5);
    assert!(table.starts_with("p "));
}

#[test]
fn det_subcommand() {
    let (code, out) = builtin(&["det", "p=7; range=0..3; atom=j-k; vars=y,z", "--format", "json"]);
    assert_eq!(code, 0);
    assert_eq!(json_lines(&out)[0]["det"], "1 + y - z - y*z");
    let (_, out) = builtin(&["det", "n=7; range=2..5; atom=j^2+3*j*k+2*k^2", "--mod", "7", "--format", "json"]);
    assert_eq!(json_lines(&out)[0]["det"], "3");
    let (_, out) = builtin(&["det", "p=5; range=0..2; atom=j-k; vars=x", "--mod", "3", "--format", "json"]);
    assert_eq!(json_lines(&out)[0]["det"], "1 + x");
}

#[test]
fn discover_tables() {
    for (id, range, count) in [("conj3.8.ii", "7..127", 15), ("conj4.6", "5..53", 7), ("conj3.9", "7..59", 8)] {
        let (code, out) = builtin(&["discover", "--id", id, "--primes", range, "--format", "json"]);
        assert_eq!(code, 0, "{id}");
        let rows = json_lines(&out);
        assert_eq!(rows.len(), count, "{id}");
        assert!(rows.iter().all(|r| r["status"] == "agrees"), "{id}: {out}");
    }
}

#[test]
fn discover_failure_exits_one() {
    let mut registry = Registry::builtin();
    registry.push(
        IdentityBuilder::new("halved", Status::Conjecture)
            .branch(
                vec![Cond::Prime, Cond::Mod(4, vec![1])],
                Some("range=0..(p-1)/2; atom=j+k; atom=-1:j-k; vars=y,z"),
                Claim::EqualsWithUnknown {
                    rhs: "8*p^((p-5)/4)*t*y*z".into(),
                    unknown: "t".into(),
                    positive: false,
                    table: vec![],
                },
            )
            .build(),
    );
    let (code, out) = run(&registry, &["discover", "--id", "halved", "--primes", "13", "--format", "json"]);
    assert_eq!(code, 1);
    assert!(json_lines(&out)[0]["status"].as_str().unwrap().contains("not an integer"));
}

#[test]
fn selftest_passes() {
    let (code, out) = builtin(&["selftest", "--format", "table"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.lines().skip(1).all(|l| l.starts_with("PASS")));
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("inv.jsonl");
    let path_s = path.to_str().unwrap();
    let args = ["invariants", "--primes", "5..61", "--format", "json", "--cache", path_s];
    let (code, first) = builtin(&args);
    assert_eq!(code, 0);
    let stored = std::fs::read_to_string(&path).unwrap();
    assert!(stored.lines().count() >= 16);

    let (_, second) = builtin(&args);
    assert_eq!(first, second);
    let primes = |text: &str| -> Vec<u64> {
        text.lines()
            .map(|l| serde_json::from_str::<serde_json::Value>(l).unwrap()["p"].as_u64().unwrap())
            .collect()
    };
    let mut seen = primes(&std::fs::read_to_string(&path).unwrap());
    let total = seen.len();
    seen.sort_unstable();
    seen.dedup();
    assert_eq!(seen.len(), total);

    std::fs::write(&path, &stored[..stored.len() - 15]).unwrap();
    let (code, third) = builtin(&args);
    assert_eq!(code, 0);
    assert_eq!(first, third);
    let repaired = std::fs::read_to_string(&path).unwrap();
    assert!(repaired.lines().all(|l| serde_json::from_str::<serde_json::Value>(l).is_ok()));

    std::fs::write(&path, stored.replace("\"schema_version\":1", "\"schema_version\":9")).unwrap();
    let (_, fourth) = builtin(&args);
    assert_eq!(first, fourth);
    assert!(std::fs::read_to_string(&path).unwrap().contains("\"schema_version\":1"));
}
