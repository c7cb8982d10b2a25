//! Existence thresholds over high-genus bases. For genus >= 2 the fiber
//! quadratic stops being positive once x crosses a genus-dependent value x2;
//! x1 marks where the naive discriminant argument breaks down first.
//!
//!     cargo run --example thresholds

use emax::exact::{best_approximation, fmt_rat, rat_to_f64, Rat};
use emax::surface::{solve_case1, thresholds, RuledSurface};
use num_bigint::BigInt;

fn main() {
    println!("{:>5} {:>6} {:>12} {:>12} {:>12}", "genus", "s", "x1", "x2", "lemma bound");
    let mut rows = Vec::new();
    for genus in 2..=8u32 {
        let surface = RuledSurface::new(genus, 1).unwrap();
        let t = thresholds(&surface).unwrap();
        println!(
            "{:>5} {:>6} {:>12.8} {:>12.8} {:>12.8}",
            genus,
            fmt_rat(surface.s_sigma()),
            t.x1,
            t.x2,
            rat_to_f64(&t.lemma_lower_bound())
        );
        rows.push((surface, t));
    }

    // The certificate agrees with the threshold: just inside x2 the solver
    // admits the candidate, just outside it refuses.
    println!("\ncertificates straddling x2 (genus 2):");
    let (surface, t) = &rows[0];
    let max_den = BigInt::from(1_000_000);
    for (label, xf) in [("x2 - 1e-4", t.x2 - 1e-4), ("x2 + 1e-4", t.x2 + 1e-4)] {
        let x = best_approximation(&Rat::from_float(xf).unwrap(), &max_den);
        let cand = solve_case1(&x, surface);
        println!("  {label}: x ~ {}, {}", fmt_rat(&x), cand.verdict().status);
    }
}
