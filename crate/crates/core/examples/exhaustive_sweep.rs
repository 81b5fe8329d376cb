//! Runs one of the cross-check suites and prints its summary.
//!
//! `cargo run --release --example exhaustive_sweep -- witness`

use repro_matrix::sweep::Suite;

fn main() {
    let name = std::env::args().nth(1).unwrap_or_else(|| "cline".into());
    let suite: Suite = name.parse().unwrap_or_else(|e| {
        eprintln!("{e}");
        std::process::exit(1);
    });
    let report = suite.run(1);
    println!(
        "{}: passed {}, {} instances, {} consistent, {} checks, {} defects in {:.2?}",
        report.suite, report.passed, report.instances, report.consistent, report.checks, report.defects, report.elapsed
    );
    for (k, v) in &report.counters {
        println!("  {k}: {v}");
    }
}
