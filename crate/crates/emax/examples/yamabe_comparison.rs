//! Einstein-Hilbert values against the two Yamabe-type bounds: the Kahler
//! bound of the class and the Aubin constant 8*sqrt(6)*pi of the round
//! four-sphere. Also locates the ratio where EH changes sign over a
//! negatively curved base.
//!
//!     cargo run --example yamabe_comparison

use emax::exact::{rat, rat_to_f64};
use emax::functional::{eh_case1_closed, eh_value, reference_eh, yamabe_bounds, ReferenceMetric};
use emax::surface::{solve_case1, RuledSurface};

fn main() {
    let surface = RuledSurface::new(0, 1).unwrap();
    println!("genus 0, degree 1:");
    println!("{:>8} {:>14} {:>14} {:>14} {}", "x", "EH", "Kahler bd", "Aubin", "EH > Aubin");
    for i in 1..=9 {
        let x = rat(i, 10);
        let cand = solve_case1(&x, &surface);
        let r = eh_value(&cand, &surface).unwrap();
        println!(
            "{:>8} {:>14.8} {:>14.8} {:>14.8} {}",
            format!("{i}/10"),
            r.eh,
            r.kahler_yamabe_bound,
            r.aubin_bound,
            r.exceeds_aubin
        );
    }

    // Over a genus-2 base the closed form crosses zero at x = 1/sqrt(5).
    let surface = RuledSurface::new(2, 1).unwrap();
    println!("\ngenus 2, degree 1: EH sign change");
    for (lo, hi) in [(0.4, 0.5)] {
        let f = |x: f64| eh_case1_closed(x, &surface);
        let (mut a, mut b) = (lo, hi);
        for _ in 0..60 {
            let mid = 0.5 * (a + b);
            if f(a) * f(mid) <= 0.0 {
                b = mid;
            } else {
                a = mid;
            }
        }
        println!("  root of EH(x) in ({lo}, {hi}): x = {:.10} (1/sqrt(5) = {:.10})", a, 0.2f64.sqrt());
    }

    // The bounds never reference the profile, only the class.
    let b = yamabe_bounds(rat_to_f64(&rat(3, 5)), &RuledSurface::new(0, 1).unwrap());
    println!("\nclass-level bounds at x = 3/5: kahler {:.8}, aubin {:.8}", b.kahler_bound, b.aubin_bound);

    // Reference values used by the moduli scans.
    println!("\nreference metrics:");
    for (label, m) in [
        ("product, torus, p = 3", ReferenceMetric::ProductCsc { genus: 1, p: 3.0 }),
        ("product, genus 2, p = 3", ReferenceMetric::ProductCsc { genus: 2, p: 3.0 }),
        ("twisted stable, p = 3", ReferenceMetric::TwistedStable { p: 3.0 }),
    ] {
        println!("  {label}: EH = {:.10}", reference_eh(m));
    }
}
