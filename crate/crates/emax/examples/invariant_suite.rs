//! Run the internal cross-check suite: two dozen randomized and worked-value
//! checks covering the solvers, certificates, functional values, thresholds,
//! and moduli scans. This is the same battery behind `emax verify`.
//!
//!     cargo run --release --example invariant_suite
//!     cargo run --release --example invariant_suite -- 5000

use emax::verify::run_all;

fn main() {
    let samples: usize = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("sample count"))
        .unwrap_or(500);

    let report = run_all(samples, 1e-12);
    for check in &report.checks {
        let mark = if check.passed { "PASS" } else { "FAIL" };
        println!("{mark} {:<24} {}", check.name, check.detail);
    }
    println!(
        "\n{} checks, {} failed, sample count {samples}",
        report.checks.len(),
        report.failures()
    );
    std::process::exit(if report.passed() { 0 } else { 1 });
}
