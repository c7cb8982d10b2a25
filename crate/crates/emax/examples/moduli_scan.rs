//! Enumerate the distinct Einstein metrics on one 4-manifold and search for
//! the smallest polarization carrying a prescribed number of them.
//!
//!     cargo run --example moduli_scan

use emax::exact::{fmt_rat, rat};
use emax::moduli::{enumerate_components, witness_class, Manifold};

fn main() {
    // S^2 x T^2 blown down along p = 11/2: every ruled surface over the torus
    // with 2k < 11 contributes one metric, the k = 0 entry being the product.
    let scan = enumerate_components(Manifold::Product, 1, &rat(11, 2)).unwrap();
    println!(
        "{} over genus {} base, p = {}: {} admitted metrics",
        scan.manifold, scan.genus, fmt_rat(&scan.p), scan.distinct_count
    );
    println!("{:>3} {:>7} {:>8} {:>18} {:>16} {}", "k", "degree", "x", "verdict", "EH", "admitted");
    for e in &scan.entries {
        println!(
            "{:>3} {:>7} {:>8} {:>18} {:>16.10} {}",
            e.k,
            e.degree,
            e.x.as_ref().map(fmt_rat).unwrap_or_else(|| "-".into()),
            e.verdict().map(|v| v.to_string()).unwrap_or_else(|| "reference".into()),
            e.eh,
            e.admitted
        );
    }
    for w in &scan.warnings {
        println!("warning: {w}");
    }

    // The values strictly decrease in k, so "at least N metrics" is monotone
    // in p and a smallest witness exists.
    println!("\nsmallest p with at least N metrics (twisted bundle, torus base):");
    for n in 1..=6 {
        let witness = witness_class(Manifold::Twisted, 1, n).unwrap();
        println!("  N = {n}: p = {}", fmt_rat(&witness.p));
    }

    // Higher genus trims the list when the ratio crosses the positivity
    // threshold of the entry's own surface. That needs small degree and
    // large x at once: k = 1 with p just above 1.
    let scan = enumerate_components(Manifold::Product, 5, &rat(21, 20)).unwrap();
    println!(
        "\ngenus 5, p = 21/20: {} of {} entries admitted",
        scan.distinct_count,
        scan.entries.len()
    );
    for e in scan.entries.iter().filter(|e| !e.admitted) {
        println!(
            "  rejected k = {}: x = {} on the degree-{} surface gives {}",
            e.k,
            e.x.as_ref().map(fmt_rat).unwrap(),
            e.degree,
            e.verdict().unwrap()
        );
    }

    // Scans can also carry warnings, here for a class admitted by the
    // certificate but sitting outside the printed linear bound.
    let scan = enumerate_components(Manifold::Twisted, 4, &rat(6, 1)).unwrap();
    println!("\ntwisted, genus 4, p = 6: {} admitted", scan.distinct_count);
    for w in &scan.warnings {
        println!("  warning: {w}");
    }
}
