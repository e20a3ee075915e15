//! One PASS/FAIL line per acceptance criterion. Two criteria fail on the
//! formulas as printed; for those the test asserts the recorded finding
//! instead, so a regression in either direction is still caught.

use std::collections::BTreeMap;
use std::time::Instant;
use thetahyp::catalog::Registry;
use thetahyp::report::{CheckResult, Report, Status};
use thetahyp::suite::{run_suite, RunConfig};

/// Tolerances and draw counts from the acceptance criteria.
const NUMERIC: &[(&str, f64, usize)] = &[
    ("spiridonov", 1e-8, 20),
    ("eval1", 1e-8, 20),
    ("eval2", 1e-8, 20),
    ("eval3", 1e-8, 36),
    ("eval3.zero-origin", 1e-8, 10),
    ("eval3.zero-shift", 1e-8, 10),
    ("fv-val1", 1e-8, 20),
    ("fv-val2", 1e-8, 20),
    ("fv-val2.via-eval1", 1e-8, 20),
    ("ellmac-val", 1e-8, 10),
    ("ellmac-val.lambda-free", 1e-8, 10),
    ("ellmac-eval", 1e-8, 20),
    ("delta.series", 1e-6, 5),
    ("ellmac-mod.minus", 1e-6, 5),
    ("ellmac-mod.plus", 1e-6, 5),
    ("lemma.sym-rearrange", 1e-8, 20),
    ("lemma.int-rearrange", 1e-8, 20),
    ("lemma.theta-simp", 1e-8, 20),
    ("lemma.full-sym", 1e-8, 20),
    ("lemma.theta-simp2", 1e-8, 20),
    ("lemma.theta-simp3", 1e-8, 20),
    ("lemma.theta-simp4", 1e-8, 20),
    ("lemma.int-eval1", 1e-8, 20),
    ("lemma.int-eval2", 1e-8, 20),
    ("bridge.denominator", 1e-6, 10),
    ("bridge.evaluation", 1e-6, 6),
];

struct Line {
    pass: bool,
    name: &'static str,
    detail: String,
}

fn tally(report: &Report, id: &str) -> (usize, usize, f64) {
    let rs: Vec<&CheckResult> = report.results_for(id).collect();
    let ok = rs.iter().filter(|r| r.status == Status::Pass).count();
    let worst = rs
        .iter()
        .map(|r| match r.rule {
            Some(thetahyp::catalog::Rule::Absolute) => r.abs_error.unwrap_or(f64::NAN),
            _ => r.rel_error.unwrap_or(f64::NAN),
        })
        .fold(0.0, f64::max);
    (ok, rs.len(), worst)
}

fn numeric_line(report: &Report, name: &'static str, ids: &[&str]) -> Line {
    let mut pass = true;
    let mut parts = Vec::new();
    for id in ids {
        let (ok, n, worst) = tally(report, id);
        let need = NUMERIC.iter().find(|x| x.0 == *id).expect("pinned").2;
        pass &= ok == n && n >= need;
        parts.push(format!("{id} {ok}/{n} worst {worst:.1e}"));
    }
    Line {
        pass,
        name,
        detail: parts.join("; "),
    }
}

fn series_line(registry: &Registry, name: &'static str, checks: &[(&str, i64)]) -> Line {
    let mut pass = true;
    let mut parts = Vec::new();
    for (id, order) in checks {
        let out = registry.series(id).expect("registered").run(*order).expect("series check runs");
        pass &= out.equal && out.order == *order;
        parts.push(format!("{id} to order {order}: {}", if out.equal { "equal" } else { "differs" }));
    }
    Line {
        pass,
        name,
        detail: parts.join("; "),
    }
}

#[test]
fn acceptance() {
    let registry = Registry::standard();
    let overrides: BTreeMap<String, f64> = NUMERIC.iter().map(|(id, t, _)| (id.to_string(), *t)).collect();
    let config = RunConfig {
        all: true,
        threads: 1,
        tolerance_overrides: overrides,
        ..RunConfig::default()
    };
    let start = Instant::now();
    let report = run_suite(&registry, &config).unwrap();
    let suite_seconds = start.elapsed().as_secs_f64();
    for (id, tol, n) in NUMERIC {
        let rs: Vec<_> = report.results_for(id).collect();
        assert!(rs.len() >= *n, "{id}: {} draws", rs.len());
        assert!(rs.iter().all(|r| r.tolerance == Some(*tol)));
    }
    for r in &report.results {
        assert!(r.status != Status::Error, "{}[{}]: {:?}", r.id, r.index, r.error);
    }

    let mut lines = Vec::new();

    let mut beta = numeric_line(&report, "elliptic beta integral", &["spiridonov"]);
    let slowest = report.results_for("spiridonov").map(|r| r.seconds).fold(0.0, f64::max);
    beta.pass &= slowest <= 2.0;
    beta.detail.push_str(&format!("; slowest integral {slowest:.3}s"));
    lines.push(beta);

    lines.push(numeric_line(&report, "deformed-cycle evaluations at eta = +-1/8", &["eval1", "eval2"]));
    lines.push(numeric_line(
        &report,
        "symmetric theta integral and its zeros",
        &["eval3", "eval3.zero-origin", "eval3.zero-shift"],
    ));

    // the first value holds; the second holds only in the corrected form
    let mut fv = numeric_line(&report, "special values of the two-modulus integral", &["fv-val1", "fv-val2"]);
    let (via_ok, via_n, via_worst) = tally(&report, "fv-val2.via-eval1");
    fv.detail
        .push_str(&format!("; fv-val2.via-eval1 {via_ok}/{via_n} worst {via_worst:.1e}"));
    let (printed_ok, _, _) = tally(&report, "fv-val2");
    assert_eq!(via_ok, via_n, "corrected second value must hold");
    assert_eq!(printed_ok, 0, "printed second value was recorded as failing on every draw");
    let (first_ok, first_n, _) = tally(&report, "fv-val1");
    assert_eq!(first_ok, first_n);
    lines.push(fv);

    lines.push(numeric_line(
        &report,
        "level-4 closed form and lambda independence",
        &["ellmac-val", "ellmac-val.lambda-free"],
    ));
    let mut eval = numeric_line(&report, "level-kappa specialisation", &["ellmac-eval"]);
    let mut cases: Vec<(i64, i64)> = report
        .results_for("ellmac-eval")
        .map(|r| {
            let p = r.params.as_ref().unwrap();
            (p.int("mu").unwrap(), p.int("kappa").unwrap())
        })
        .collect();
    cases.sort();
    cases.dedup();
    eval.pass &= cases == {
        let mut v = thetahyp::identities::evaluation_cases();
        v.sort();
        v
    };
    eval.detail.push_str(&format!("; {} (mu, kappa) cases", cases.len()));
    lines.push(eval);

    lines.push(numeric_line(&report, "integral form vs truncated j-series", &["delta.series"]));

    // the S^+ relation holds up to an overall factor of exactly -1
    let modular = numeric_line(&report, "modular relations", &["ellmac-mod.minus", "ellmac-mod.plus"]);
    let (minus_ok, minus_n, _) = tally(&report, "ellmac-mod.minus");
    assert_eq!(minus_ok, minus_n);
    for r in report.results_for("ellmac-mod.plus") {
        let ratio = r.lhs.unwrap() / r.rhs.unwrap();
        assert!((ratio + 1.0).norm() < 1e-6, "recorded ratio -1, got {ratio}");
    }
    lines.push(modular);

    let mut lemmas = numeric_line(
        &report,
        "lemma checks",
        &[
            "lemma.sym-rearrange",
            "lemma.int-rearrange",
            "lemma.theta-simp",
            "lemma.full-sym",
            "lemma.theta-simp2",
            "lemma.theta-simp3",
            "lemma.theta-simp4",
            "lemma.int-eval1",
            "lemma.int-eval2",
        ],
    );
    let exact = series_line(
        &registry,
        "",
        &[
            ("series.theta-simp2", 8),
            ("series.theta-simp3", 8),
            ("series.theta-simp4", 8),
            ("series.sym-rearrange", 8),
        ],
    );
    lemmas.pass &= exact.pass;
    lemmas.detail = format!("{}; {}", lemmas.detail, exact.detail);
    lines.push(lemmas);

    lines.push(series_line(
        &registry,
        "exact series identities",
        &[
            ("series.triple-product", 12),
            ("series.denominator", 6),
            ("series.evaluation", 40),
            ("series.hall-limit", 8),
        ],
    ));

    let mut bridge = numeric_line(&report, "affine bridge pipeline", &["bridge.denominator", "bridge.evaluation"]);
    let pairs: std::collections::BTreeSet<(i64, i64)> = report
        .results_for("bridge.evaluation")
        .map(|r| {
            let p = r.params.as_ref().unwrap();
            (p.int("mu").unwrap(), p.int("k").unwrap())
        })
        .collect();
    bridge.pass &= pairs.len() >= 3 && suite_seconds <= 600.0;
    bridge.detail.push_str(&format!(
        "; {} (mu, k) pairs; full suite {:.1}s single-threaded ({} checks)",
        pairs.len(),
        suite_seconds,
        report.results.len()
    ));
    lines.push(bridge);

    println!();
    for l in &lines {
        println!("{} {}: {}", if l.pass { "PASS" } else { "FAIL" }, l.name, l.detail);
    }
    let failing: Vec<&str> = lines.iter().filter(|l| !l.pass).map(|l| l.name).collect();
    println!("{} of {} criteria pass", lines.len() - failing.len(), lines.len());
    assert_eq!(failing, ["special values of the two-modulus integral", "modular relations"]);
}
