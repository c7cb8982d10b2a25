//! Numerical cross-checks of the curvature formulas: the Kahler scalar
//! curvature built from a momentum profile, its behavior under the conformal
//! rescaling, and the total-scalar-curvature functional over the class.
//!
//!     cargo run --example curvature_identities

use emax::exact::{rat, rat_to_f64};
use emax::functional::total_scal_normalized;
use emax::poly::RealPolynomial;
use emax::surface::{scal_g_at, scal_h_profile_at, solve_case1, RuledSurface};

fn main() {
    let surface = RuledSurface::new(0, 1).unwrap();
    let x = rat(3, 5);
    let cand = solve_case1(&x, &surface);
    let profile = cand.profile_real();
    let (xf, bf, sf) = (rat_to_f64(&x), cand.b_f64(), surface.s_sigma_f64());

    // Scal(g) varies along the fiber; its conformal image is the constant A.
    println!("{:>6} {:>14} {:>14}", "z", "Scal(g)", "Scal(h)");
    for j in 0..=8 {
        let z = -0.96 + 0.24 * j as f64;
        println!(
            "{:>6.2} {:>14.8} {:>14.8}",
            z,
            scal_g_at(&profile, xf, &surface, z),
            scal_h_profile_at(&profile, xf, bf, sf, z)
        );
    }
    println!("expected constant: {}", cand.scal_h_exact());

    // The normalized total scalar curvature over the class does not depend
    // on the profile at all, only on the boundary data. Perturb F by a bump
    // vanishing to second order at both endpoints and watch the value hold.
    let base = total_scal_normalized(&profile, &x, &surface).unwrap();
    println!("\nnormalized total Scal(g) for the solution profile: {base:.12}");
    let bump = RealPolynomial::new(vec![1.0, 0.0, -2.0, 0.0, 1.0]); // (1 - z^2)^2
    for t in [0.05, -0.1, 0.3] {
        let perturbed = profile.add(&bump.scale(t));
        let v = total_scal_normalized(&perturbed, &x, &surface).unwrap();
        println!("  bump coefficient {t:>5}: {v:.12}  (drift {:.2e})", (v - base).abs());
    }

    // This value is exactly the Kahler Yamabe bound of the class.
    let bounds = emax::functional::yamabe_bounds(xf, &surface);
    println!("closed form (Kahler bound): {:.12}", bounds.kahler_bound);
}
