//! Solve one polarized class end to end and print everything the solver
//! knows about it, exact values first.
//!
//!     cargo run --example solve_class
//!     cargo run --example solve_class -- 2 1 7/10

use emax::exact::{fmt_rat, parse_rational};
use emax::functional::eh_value;
use emax::surface::{solve_case1, KahlerClass, RuledSurface};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (genus, degree, x_raw) = match args.as_slice() {
        [] => (1u32, 1u32, "3/5".to_string()),
        [g, d, x] => (g.parse().unwrap(), d.parse().unwrap(), x.clone()),
        _ => {
            eprintln!("usage: solve_class [GENUS DEGREE X]");
            std::process::exit(1);
        }
    };

    let x = parse_rational(&x_raw).unwrap().value;
    let surface = RuledSurface::new(genus, degree).unwrap();
    let class = KahlerClass::from_fiber_ratio(x.clone(), degree).unwrap();
    println!(
        "base genus {genus}, twisting degree {degree}, s_sigma = {}",
        fmt_rat(surface.s_sigma())
    );
    println!(
        "fiber ratio x = {} ({:?}, p = {})",
        fmt_rat(&x),
        class.parity(),
        fmt_rat(class.p())
    );

    let cand = solve_case1(&x, &surface);
    println!("\nconformal parameter  b = {}  ~ {:.12}", cand.b_exact(), cand.b_f64());
    println!("profile coefficient  c = {}  ~ {:.12}", cand.c_exact(), cand.c_f64());
    println!(
        "constant curvature   Scal(h) = {}  ~ {:.12}",
        cand.scal_h_exact(),
        cand.scal_h_f64()
    );
    println!("certificate          {}", cand.verdict().status);

    match eh_value(&cand, &surface) {
        Ok(r) => {
            println!("\nVol(h)  = {:.12}", r.vol_h);
            println!("EH      = {:.12}", r.eh);
            println!("Kahler bound = {:.12}  (improved: {})", r.kahler_yamabe_bound, r.improves_bound);
            println!("Aubin bound  = {:.12}  (exceeded: {})", r.aubin_bound, r.exceeds_aubin);
        }
        Err(e) => println!("\nno Einstein-Hilbert value: {e}"),
    }

    // Spot check: the conformal curvature really is constant along the fiber.
    let samples: Vec<f64> = (1..=9).map(|j| cand.scal_h_at(-1.0 + 0.2 * j as f64)).collect();
    let lo = samples.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = samples.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    println!(
        "\nScal(h) sampled at 9 fiber points: spread {:.3e} around {:.6}",
        hi - lo,
        cand.scal_h_f64()
    );
}
