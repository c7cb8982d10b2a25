//! The second solution family on the even genus-zero surface: two conformal
//! parameters for each admissible ratio, a rational profile coefficient, and
//! a coincidence point where the pair merges into the first family.
//!
//!     cargo run --example case2_branches

use emax::exact::{fmt_rat, rat, rat_to_f64};
use emax::functional::{eh_case2_closed, eh_value};
use emax::surface::{solve_case2, CaseTwoSolutions, RuledSurface};

fn main() {
    let surface = RuledSurface::new(0, 1).unwrap();

    for (num, den) in [(4i64, 5i64), (5, 6), (9, 10), (99, 100)] {
        let x = rat(num, den);
        println!("x = {}", fmt_rat(&x));
        match solve_case2(&x, &surface).unwrap() {
            CaseTwoSolutions::Pair { plus, minus } => {
                for cand in [&plus, &minus] {
                    let eh = eh_value(cand, &surface).unwrap().eh;
                    println!(
                        "  b = {:<24} c = {:<6} Scal(h) = {:<22} EH = {:.10}",
                        cand.b_exact().to_string(),
                        cand.c_exact().to_string(),
                        cand.scal_h_exact().to_string(),
                        eh
                    );
                }
                // Both branches carry the same Einstein-Hilbert value; the
                // closed form depends only on x.
                println!("  closed form EH = {:.10}", eh_case2_closed(rat_to_f64(&x)));
            }
            CaseTwoSolutions::Coincident(cand) => {
                println!(
                    "  branches coincide: b = {}, c = {}, same metric as the first family",
                    cand.b_exact(),
                    cand.c_exact()
                );
            }
        }
        println!();
    }

    // Below 4/5 the quadratic has no real root of modulus > 1.
    let err = solve_case2(&rat(1, 2), &surface).unwrap_err();
    println!("x = 1/2 is rejected: {err}");
    println!("limit of the family: EH -> 12*sqrt(2)*pi = {:.10} as x -> 1", eh_case2_closed(1.0));
}
