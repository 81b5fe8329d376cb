//! Acceptance criteria, one PASS/FAIL line each. Runs as a plain binary so
//! the lines show up in `cargo test` output; exits non-zero on any failure.

use std::time::Duration;

use repro_matrix::sweep::{self, SuiteReport};

/// Every criterion is exact: any defect fails it.
const MAX_DEFECTS: u64 = 0;
const SEED: u64 = 20240601;

struct Criterion {
    id: u32,
    title: &'static str,
    limit: Duration,
    run: fn() -> SuiteReport,
    /// Extra requirement beyond zero defects, with its description.
    extra: fn(&SuiteReport) -> Result<(), String>,
}

fn expect_instances(r: &SuiteReport, n: u64) -> Result<(), String> {
    if r.instances == n {
        Ok(())
    } else {
        Err(format!("expected {n} instances, ran {}", r.instances))
    }
}

fn criteria() -> Vec<Criterion> {
    vec![
        Criterion {
            id: 1,
            title: "Cline, GF(2) 2x2, all triples at m=n=1 and m=n=2: verdict, image and enumeration vs oracle",
            limit: Duration::from_secs(60),
            run: sweep::cline_suite,
            extra: |r| expect_instances(r, 2 * 4096),
        },
        Criterion {
            id: 2,
            title: "Penrose, GF(2) 2x2, all 65536 quadruples: three clauses vs oracle, X1 solves, image vs oracle",
            limit: Duration::from_secs(300),
            run: sweep::penrose_suite,
            extra: |r| expect_instances(r, 65536),
        },
        Criterion {
            id: 3,
            title: "k-commutative, GF(3) 2x2 and GF(2) 3x3, k=1..3: verdict, identities, image, f(X)=X",
            limit: Duration::from_secs(120),
            run: sweep::kcomm_suite,
            extra: |r| expect_instances(r, 3 * (81 + 512)),
        },
        Criterion {
            id: 4,
            title: "Reproductivity over Q, 100 instances per family: f reproductive, g iff x0 canonical",
            limit: Duration::from_secs(30),
            run: || sweep::reproductivity_suite(SEED, 100),
            extra: |r| {
                expect_instances(r, 300)?;
                match r.counter("distinct_x0_tested") {
                    0 => Err("no instance had a second solution to test".into()),
                    _ => Ok(()),
                }
            },
        },
        Criterion {
            id: 5,
            title: "Witness search, GF(2) Cline: a solution outside {G C G'} over all {1}-inverse pairs",
            limit: Duration::from_secs(120),
            run: sweep::witness_suite,
            extra: |r| match r.counter("witnesses") {
                0 => Err("no witness found".into()),
                _ => Ok(()),
            },
        },
        Criterion {
            id: 6,
            title: "Primitives: 500 one_inverse memberships, 500 index vs naive loop",
            limit: Duration::from_secs(30),
            run: || sweep::primitives_suite(SEED, 500),
            extra: |r| expect_instances(r, 1000),
        },
    ]
}

fn main() {
    let mut failed = 0;
    for c in criteria() {
        let report = (c.run)();
        let mut problems = Vec::new();
        if report.defects > MAX_DEFECTS {
            problems.push(format!("{} defects, first: {:?}", report.defects, report.failures.first()));
        }
        if let Err(e) = (c.extra)(&report) {
            problems.push(e);
        }
        if report.elapsed > c.limit {
            problems.push(format!("took {:.1?}, limit {:?}", report.elapsed, c.limit));
        }
        let status = if problems.is_empty() { "PASS" } else { "FAIL" };
        let counters: Vec<String> = report.counters.iter().map(|(k, v)| format!("{k}={v}")).collect();
        println!(
            "[{status}] criterion {}: {} | instances={} consistent={} checks={} defects={} (max {MAX_DEFECTS}) {} | {:.2?} (limit {:?})",
            c.id,
            c.title,
            report.instances,
            report.consistent,
            report.checks,
            report.defects,
            counters.join(" "),
            report.elapsed,
            c.limit,
        );
        for p in &problems {
            println!("    {p}");
        }
        failed += !problems.is_empty() as u32;
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all acceptance criteria passed");
}
