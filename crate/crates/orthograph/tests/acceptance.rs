//! One line per acceptance criterion. A criterion whose only discrepancies
//! are printed values contradicted by an independent oracle is reported as
//! unattainable and does not fail the test; any other discrepancy does.

use std::io::Write;
use std::time::{Duration, Instant};

use orthograph::verify::{self, Check, Report, Status};

struct Criterion {
    id: u32,
    title: &'static str,
    tolerance: &'static str,
    limit: Duration,
    run: fn() -> Vec<Check>,
}

fn suite(name: &str) -> Report {
    verify::run(name, verify::DEFAULT_SEED).expect("known suite").expect("suite runs within its budget")
}

fn named(pick: fn(&str) -> bool) -> Vec<Check> {
    suite("named-pairs").checks.into_iter().filter(|c| pick(&c.name)).collect()
}

const CRITERIA: &[Criterion] = &[
    Criterion {
        id: 1,
        title: "table reproduction",
        tolerance: "exact coefficients",
        limit: Duration::from_secs(10),
        run: || suite("tables").checks,
    },
    Criterion {
        id: 2,
        title: "K5 inner product",
        tolerance: "exact",
        limit: Duration::from_secs(1),
        run: || named(|n| n.contains("k5-")),
    },
    Criterion {
        id: 3,
        title: "companion exact values",
        tolerance: "exact",
        limit: Duration::from_secs(60),
        run: || named(|n| !n.contains("k5-")),
    },
    Criterion {
        id: 4,
        title: "oracle equivalence, n in {4,5,6}",
        tolerance: "exact rationals",
        limit: Duration::from_secs(120),
        run: || suite("oracle-agreement").checks,
    },
    Criterion {
        id: 5,
        title: "formula cross-validation",
        tolerance: "symbolic equality",
        limit: Duration::from_secs(600),
        run: || suite("cross-validation").checks,
    },
    Criterion {
        id: 6,
        title: "sign properties and scan at 8 union edges",
        tolerance: "exact sign",
        limit: Duration::from_secs(1800),
        run: || suite("sign").checks,
    },
    Criterion {
        id: 7,
        title: "variance bounds",
        tolerance: "exact inequalities on n in [|E|, |E|+10]",
        limit: Duration::from_secs(600),
        run: || suite("variance-bounds").checks,
    },
    Criterion {
        id: 8,
        title: "Boolean Isserlis coefficients",
        tolerance: "exact sets",
        limit: Duration::from_secs(60),
        run: || suite("boolean-isserlis").checks,
    },
    Criterion {
        id: 9,
        title: "dominance characterization",
        tolerance: "exhaustive",
        limit: Duration::from_secs(300),
        run: || suite("dominance").checks,
    },
    Criterion {
        id: 10,
        title: "inversion on the K5 block",
        tolerance: "residual exactly 0; ratios strictly decreasing",
        limit: Duration::from_secs(60),
        run: || suite("inversion").checks,
    },
    Criterion {
        id: 11,
        title: "Monte Carlo regression, n = 10, 1e5 samples",
        tolerance: "4 standard errors, fixed seed",
        limit: Duration::from_secs(600),
        run: || suite("monte-carlo").checks,
    },
    Criterion {
        id: 12,
        title: "Isserlis factor discrepancy",
        tolerance: "exact at n = 3",
        limit: Duration::from_secs(60),
        run: || suite("isserlis-discrepancy").checks,
    },
];

#[test]
fn acceptance() {
    // Written to the handle directly so the lines survive output capture.
    let mut out = std::io::stdout().lock();
    let mut genuine = Vec::new();
    writeln!(out).unwrap();
    for c in CRITERIA {
        let start = Instant::now();
        let checks = (c.run)();
        let elapsed = start.elapsed();
        let fails: Vec<&Check> = checks.iter().filter(|k| k.status == Status::Fail).collect();
        let errata = checks.iter().filter(|k| k.status == Status::Erratum).count();
        let slow = elapsed > c.limit;
        let verdict = if checks.is_empty() {
            "FAIL (no checks ran)".to_string()
        } else if !fails.is_empty() || slow {
            "FAIL".to_string()
        } else if errata > 0 {
            format!("FAIL (unattainable: {errata} printed value(s) contradicted by the oracle)")
        } else {
            "PASS".to_string()
        };
        writeln!(
            out,
            "criterion {:2} | {} | tolerance: {} | {} checks | {:.1?} (limit {:?}) | {verdict}",
            c.id,
            c.title,
            c.tolerance,
            checks.len(),
            elapsed,
            c.limit
        )
        .unwrap();
        for k in checks.iter().filter(|k| k.status != Status::Pass) {
            writeln!(out, "    {}: {} | {} vs {}", k.status.name(), k.name, k.lhs, k.rhs).unwrap();
        }
        if checks.is_empty() || !fails.is_empty() || slow {
            genuine.push(c.id);
        }
    }
    assert!(genuine.is_empty(), "criteria failed: {genuine:?}");
}
