//! The exact positivity layer on its own: Sturm root counting over the
//! rationals, the three-way sign certificate, and the enclosure machinery
//! that extends both to coefficients living in a quadratic field.
//!
//!     cargo run --example positivity_certificates
//!     EMAX_PRECISION_BITS=256 cargo run --example positivity_certificates

use emax::exact::{precision_bits, rat, rat_i, rat_to_f64, sqrt_enclosure};
use emax::poly::{Interval, RationalPolynomial};
use emax::surface::{certify_fiber_quadratic, fiber_quadratic, solve_case1, RuledSurface};

fn main() {
    let iv = Interval::open(rat_i(-1), rat_i(1));

    // Sturm sequences count distinct real roots exactly, open endpoints
    // excluded. p = z (z^2 - 1/9)(z^2 - 49/9) has roots 0, +-1/3, +-7/3.
    let p = RationalPolynomial::new(vec![
        rat_i(0),
        rat(49, 81),
        rat_i(0),
        rat(-50, 9),
        rat_i(0),
        rat_i(1),
    ]);
    println!("roots of z(z^2 - 1/9)(z^2 - 49/9) in (-1, 1): {}", p.sturm_root_count(&iv));

    // The three certificate outcomes on fiber quadratics m = c z^2 + x z + (1 - c).
    for (x, c, label) in [
        (rat(3, 5), rat(11, 130), "solution coefficient"),
        (rat(4, 5), rat(4, 5), "tangent: m = (2z + 1)^2 / 5"),
        (rat(3, 5), rat(19, 20), "overweighted c"),
    ] {
        let verdict = fiber_quadratic(&x, &c).certify_positive(&iv);
        print!("x = {x}, c = {c} ({label}): {}", verdict.status);
        match verdict.witness {
            Some(w) => println!(", witness z = {w:.6}"),
            None => println!(),
        }
    }

    // Irrational c: the certificate works through rational envelopes whose
    // width is controlled by EMAX_PRECISION_BITS.
    let bits = precision_bits();
    println!("\nenclosure precision: {bits} bits");
    let surface = RuledSurface::new(2, 1).unwrap();
    let x = rat(49, 50); // past the genus-2 threshold x2 ~ 0.9737
    let cand = solve_case1(&x, &surface);
    let verdict = certify_fiber_quadratic(&x, cand.c_exact());
    println!(
        "genus 2, x = 49/50: c = {} is irrational, certificate says {}",
        cand.c_exact(),
        verdict.status
    );
    if let Some(w) = verdict.witness {
        println!("  negative value witnessed near z = {w:.6}");
    }
    // And just inside the threshold the same machinery says yes.
    let x = rat(24, 25);
    let cand = solve_case1(&x, &surface);
    println!(
        "genus 2, x = 24/25: certificate says {}",
        certify_fiber_quadratic(&x, cand.c_exact()).status
    );

    // The enclosures themselves: sqrt(2) to the configured width.
    let (lo, hi) = sqrt_enclosure(&rat_i(2), bits);
    let width = rat_to_f64(&(hi.clone() - lo.clone()));
    println!("\nsqrt(2) enclosure width at {bits} bits: {width:.3e}");
    println!("  lo ~ {:.15}", rat_to_f64(&lo));
    println!("  hi ~ {:.15}", rat_to_f64(&hi));
}
