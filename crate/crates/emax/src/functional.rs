//! Volumes, Einstein-Hilbert values, and Yamabe-type comparison bounds for
//! the conformally rescaled metrics.
//!
//! The normalized Einstein-Hilbert functional of a unit-volume-normalized
//! metric is `Scal * sqrt(Vol)` once the scalar curvature is constant, so a
//! solved candidate reduces to two closed-form numbers. The quadrature
//! variants exist as independent oracles and for profiles that are not
//! solutions of anything.

use crate::exact::{rat_to_f64, QuadExt, Rat};
use crate::poly::{PositivityStatus, RealPolynomial};
use crate::quad::{integrate, QuadResult};
use crate::surface::{scal_g_at, EMCandidate, RuledSurface};
use std::f64::consts::PI;
use thiserror::Error;

/// Errors from the functional evaluators.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum FunctionalError {
    #[error("candidate is not a certified solution ({status}, witness near z = {witness:?})")]
    NotASolution {
        status: PositivityStatus,
        witness: Option<f64>,
    },
    #[error("profile violates the boundary conditions: {0}")]
    BoundaryViolation(String),
}

/// Everything the Einstein-Hilbert evaluation of one solution produces.
#[derive(Clone, Debug, PartialEq)]
pub struct EHReport {
    /// The constant scalar curvature of the rescaled metric.
    pub scal_h: f64,
    pub vol_h: f64,
    /// `scal_h * sqrt(vol_h)`.
    pub eh: f64,
    /// Best value achievable by Kähler metrics in the conformal class data.
    pub kahler_yamabe_bound: f64,
    /// `8 sqrt(6) pi`, the round-sphere comparison constant.
    pub aubin_bound: f64,
    /// `eh > aubin_bound`: the solution cannot be a Yamabe minimizer.
    pub exceeds_aubin: bool,
    /// `eh < kahler_yamabe_bound`: the conformal rescaling beats every
    /// Kähler representative.
    pub improves_bound: bool,
    pub negative_eh: bool,
}

/// Closed-form volume of the rescaled metric:
/// `(2 pi)^2 n * 2 (3 b^2 - 4 b x + 1) / (3 x (b^2 - 1)^3)`.
pub fn vol_h(x: f64, b: f64, degree: u32) -> f64 {
    let n = degree as f64;
    let b2m1 = b * b - 1.0;
    4.0 * PI * PI * n * 2.0 * (3.0 * b * b - 4.0 * b * x + 1.0) / (3.0 * x * b2m1.powi(3))
}

/// Exact coefficient of `pi^2` in the volume, for exact `b`.
pub fn vol_h_pi2_coeff(x: &Rat, b: &QuadExt, degree: u32) -> QuadExt {
    let q = QuadExt::from_i64;
    let xq = QuadExt::from_rat(x.clone());
    let n = q(degree as i64);
    let b2 = b * b;
    let num = q(8) * n * (q(3) * b2.clone() - q(4) * b.clone() * xq.clone() + q(1));
    let b2m1 = b2 - q(1);
    let den = q(3) * xq * b2m1.clone() * b2m1.clone() * b2m1;
    num / den
}

/// Volume by adaptive quadrature of `(2 pi)^2 n (z + b)^-4 (z + 1/x)` over
/// the fiber interval; the independent check on [`vol_h`].
pub fn vol_h_quadrature(x: f64, b: f64, degree: u32, abs_tol: f64) -> QuadResult {
    let n = degree as f64;
    let scale = 4.0 * PI * PI * n;
    let f = move |z: f64| (z + b).powi(-4) * (z + 1.0 / x);
    let mut r = integrate(&f, -1.0, 1.0, abs_tol / scale, 1e-13);
    r.value *= scale;
    r.error *= scale;
    r
}

/// Yamabe-type comparison constants for a class.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct YamabeBounds {
    /// `4 pi (2 + 2 s_sigma x) sqrt(n) / sqrt(2 x)`.
    pub kahler_bound: f64,
    /// `8 sqrt(6) pi`.
    pub aubin_bound: f64,
}

pub fn yamabe_bounds(x: f64, surface: &RuledSurface) -> YamabeBounds {
    let s = surface.s_sigma_f64();
    let n = surface.degree() as f64;
    YamabeBounds {
        kahler_bound: 4.0 * PI * (2.0 + 2.0 * s * x) * n.sqrt() / (2.0 * x).sqrt(),
        aubin_bound: aubin_bound(),
    }
}

/// `8 sqrt(6) pi`.
pub fn aubin_bound() -> f64 {
    8.0 * 6.0f64.sqrt() * PI
}

/// Einstein-Hilbert value and comparison data for a certified solution.
///
/// Refuses candidates whose positivity certificate failed; the formal
/// closed-form value of a non-solution is available from
/// [`eh_case1_closed`] instead.
pub fn eh_value(cand: &EMCandidate, surface: &RuledSurface) -> Result<EHReport, FunctionalError> {
    debug_assert_eq!(cand.surface(), surface, "candidate/surface mismatch");
    if !cand.is_solution() {
        return Err(FunctionalError::NotASolution {
            status: cand.verdict().status,
            witness: cand.verdict().witness,
        });
    }
    let x = rat_to_f64(cand.x());
    let scal_h = cand.scal_h_f64();
    let vol = vol_h(x, cand.b_f64(), surface.degree());
    let eh = scal_h * vol.sqrt();
    let bounds = yamabe_bounds(x, surface);
    Ok(EHReport {
        scal_h,
        vol_h: vol,
        eh,
        kahler_yamabe_bound: bounds.kahler_bound,
        aubin_bound: bounds.aubin_bound,
        exceeds_aubin: eh > bounds.aubin_bound,
        improves_bound: eh < bounds.kahler_bound,
        negative_eh: eh < 0.0,
    })
}

/// Closed form of the first-family Einstein-Hilbert value as a function of
/// the class alone, defined for every `x` in `(0, 1)` whether or not the
/// class is admissible:
/// `4 sqrt(6 n) pi sqrt((1 - x^2)/(x (1 + 2t))) + 8 pi sqrt(6/n) (1 - genus) sqrt(x/(1 + 2t))`
/// with `t = sqrt(1 - x^2)`.
pub fn eh_case1_closed(x: f64, surface: &RuledSurface) -> f64 {
    let n = surface.degree() as f64;
    let genus_term = 1.0 - surface.genus() as f64;
    let t = (1.0 - x * x).sqrt();
    let w = 1.0 + 2.0 * t;
    4.0 * (6.0 * n).sqrt() * PI * ((1.0 - x * x) / (x * w)).sqrt()
        + 8.0 * PI * (6.0 / n).sqrt() * genus_term * (x / w).sqrt()
}

/// Closed form of the second-family Einstein-Hilbert value
/// `4 pi sqrt(6) sqrt((4x - 1)/x)`, shared by both branches.
pub fn eh_case2_closed(x: f64) -> f64 {
    4.0 * PI * 6.0f64.sqrt() * ((4.0 * x - 1.0) / x).sqrt()
}

/// Distinguished comparison metrics whose Einstein-Hilbert values are known
/// in closed form.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ReferenceMetric {
    /// Constant-scalar-curvature product on the untwisted bundle:
    /// `8 pi sqrt(p) (1 + (1 - genus)/p)`.
    ProductCsc { genus: u32, p: f64 },
    /// Formal fiber-degree-zero limit on the twisted bundle:
    /// `4 pi sqrt(2) sqrt(2p + 1)`.
    TwistedStable { p: f64 },
}

pub fn reference_eh(metric: ReferenceMetric) -> f64 {
    match metric {
        ReferenceMetric::ProductCsc { genus, p } => {
            8.0 * PI * p.sqrt() * (1.0 + (1.0 - genus as f64) / p)
        }
        ReferenceMetric::TwistedStable { p } => 4.0 * PI * 2.0f64.sqrt() * (2.0 * p + 1.0).sqrt(),
    }
}

/// Normalized total scalar curvature `int Scal dV / sqrt(Vol)` of the
/// *unrescaled* structure built from an arbitrary profile, by quadrature.
///
/// The profile must satisfy the boundary conditions `F(+-1) = 0` and
/// `F'(+-1) = -+2(1 +- x)`; within those constraints the result depends on
/// the class alone, which is exactly what makes it a useful invariant.
pub fn total_scal_normalized(
    f: &RealPolynomial,
    x: &Rat,
    surface: &RuledSurface,
) -> Result<f64, FunctionalError> {
    let xf = rat_to_f64(x);
    let df = f.derivative();
    let checks = [
        (f.eval(1.0), 0.0, "F(1)"),
        (f.eval(-1.0), 0.0, "F(-1)"),
        (df.eval(1.0), -2.0 * (1.0 + xf), "F'(1)"),
        (df.eval(-1.0), 2.0 * (1.0 - xf), "F'(-1)"),
    ];
    for (got, want, label) in checks {
        if (got - want).abs() > 1e-8 {
            return Err(FunctionalError::BoundaryViolation(format!(
                "{label} = {got:e}, required {want:e}"
            )));
        }
    }
    let n = surface.degree() as f64;
    let scale = 4.0 * PI * PI * n;
    let surface_for_integrand = surface.clone();
    let f_clone = f.clone();
    let integrand = move |z: f64| {
        scal_g_at(&f_clone, xf, &surface_for_integrand, z) * (z + 1.0 / xf)
    };
    let total = scale * integrate(&integrand, -1.0, 1.0, 1e-13, 1e-13).value;
    let vol = scale * integrate(&|z: f64| z + 1.0 / xf, -1.0, 1.0, 1e-14, 1e-14).value;
    Ok(total / vol.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::surface::{profile_polynomial, solve_case1, solve_case2, CaseTwoSolutions};

    fn surface(genus: u32, degree: u32) -> RuledSurface {
        RuledSurface::new(genus, degree).unwrap()
    }

    #[test]
    fn volume_worked_value_is_exact() {
        let coeff = vol_h_pi2_coeff(&rat(3, 5), &QuadExt::from_i64(3), 1);
        assert_eq!(coeff.as_rat(), Some(rat(13, 72)));
        let v = vol_h(0.6, 3.0, 1);
        assert!((v - 13.0 * PI * PI / 72.0).abs() < 1e-13);
    }

    #[test]
    fn volume_quadrature_matches_closed_form() {
        for (x, b, n) in [
            (0.6, 3.0, 1u32),
            (0.25, 8.1, 2),
            (0.9, 1.6, 3),
            (0.5, -2.5, 1), // negative conformal parameter branch
        ] {
            let closed = vol_h(x, b, n);
            let quad = vol_h_quadrature(x, b, n, 1e-12);
            assert!(
                (closed - quad.value).abs() <= 1e-10 * closed.abs(),
                "x={x} b={b}: closed {closed} vs quadrature {}",
                quad.value
            );
        }
    }

    #[test]
    fn eh_worked_value() {
        let surf = surface(1, 1);
        let cand = solve_case1(&rat(3, 5), &surf);
        let report = eh_value(&cand, &surf).unwrap();
        let expected = 32.0 * PI / 26.0f64.sqrt();
        assert!((report.eh - expected).abs() < 1e-12, "eh = {}", report.eh);
        assert!((report.scal_h - 192.0 / 13.0).abs() < 1e-13);
        assert!(report.improves_bound);
        assert!(!report.exceeds_aubin);
        assert!(!report.negative_eh);
        // Same number from the closed form.
        assert!((eh_case1_closed(0.6, &surf) - expected).abs() < 1e-12);
    }

    #[test]
    fn eh_refuses_non_solutions() {
        let surf = surface(2, 1);
        let cand = solve_case1(&rat(99, 100), &surf);
        assert!(!cand.is_solution());
        assert!(matches!(
            eh_value(&cand, &surf),
            Err(FunctionalError::NotASolution { .. })
        ));
    }

    #[test]
    fn eh_closed_form_tracks_solver() {
        let surf = surface(2, 2);
        for i in 1..20 {
            let x = rat(i, 25);
            let cand = solve_case1(&x, &surf);
            if !cand.is_solution() {
                continue;
            }
            let direct = eh_value(&cand, &surf).unwrap().eh;
            let closed = eh_case1_closed(rat_to_f64(&x), &surf);
            assert!(
                (direct - closed).abs() <= 1e-12 * direct.abs().max(1.0),
                "x = {i}/25: {direct} vs {closed}"
            );
        }
    }

    #[test]
    fn case2_branches_share_eh() {
        let surf = surface(0, 1);
        let x = rat(5, 6);
        match solve_case2(&x, &surf).unwrap() {
            CaseTwoSolutions::Pair { plus, minus } => {
                let a = eh_value(&plus, &surf).unwrap().eh;
                let b = eh_value(&minus, &surf).unwrap().eh;
                let closed = eh_case2_closed(rat_to_f64(&x));
                assert!((a - b).abs() < 1e-12 * a.abs());
                assert!((a - closed).abs() < 1e-12 * a.abs(), "{a} vs {closed}");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn yamabe_bound_shapes() {
        // s_sigma = -2: 8 pi (1 - 2x)/sqrt(2x).
        let surf = surface(2, 1);
        let b = yamabe_bounds(0.4, &surf);
        let expected = 8.0 * PI * (1.0 - 0.8) / 0.8f64.sqrt();
        assert!((b.kahler_bound - expected).abs() < 1e-12);
        assert!((b.aubin_bound - 8.0 * 6.0f64.sqrt() * PI).abs() < 1e-13);
        // s_sigma = 2, x -> 1: the bound tends to 12 sqrt(2) pi.
        let surf = surface(0, 1);
        let b = yamabe_bounds(1.0 - 1e-9, &surf);
        assert!((b.kahler_bound - 12.0 * 2.0f64.sqrt() * PI).abs() < 1e-6);
    }

    #[test]
    fn reference_values() {
        let r = reference_eh(ReferenceMetric::ProductCsc { genus: 1, p: 5.5 });
        assert!((r - 8.0 * PI * 5.5f64.sqrt()).abs() < 1e-12);
        let r = reference_eh(ReferenceMetric::TwistedStable { p: 2.5 });
        assert!((r - 8.0 * PI * 3.0f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn total_scal_is_profile_independent() {
        let x = rat(3, 5);
        let surf = surface(1, 1);
        let base = profile_polynomial(&x, &rat(11, 130)).to_real();
        let target = yamabe_bounds(0.6, &surf).kahler_bound;
        // (1 - z^2)^2 vanishes to second order at both ends, so adding it
        // preserves the boundary data.
        let bump = RealPolynomial::new(vec![1.0, 0.0, -2.0, 0.0, 1.0]);
        for t in [0.0, 0.3, -0.45, 1.7] {
            let f = base.add(&bump.scale(t));
            let v = total_scal_normalized(&f, &x, &surf).unwrap();
            assert!(
                (v - target).abs() < 1e-10 * target.abs(),
                "t = {t}: {v} vs {target}"
            );
        }
    }

    #[test]
    fn total_scal_rejects_bad_boundaries() {
        let x = rat(3, 5);
        let surf = surface(1, 1);
        // Wrong slope at z = 1.
        let f = RealPolynomial::new(vec![1.0, 0.0, -1.0]);
        assert!(matches!(
            total_scal_normalized(&f, &x, &surf),
            Err(FunctionalError::BoundaryViolation(_))
        ));
    }

    #[test]
    fn exact_volume_quadext_route() {
        // Irrational b: coefficient lives in the same field, and its f64
        // image matches the floating volume.
        let surf = surface(1, 2);
        let cand = solve_case1(&rat(1, 2), &surf);
        let coeff = vol_h_pi2_coeff(cand.x(), cand.b_exact(), surf.degree());
        assert!(!coeff.is_zero());
        let via_exact = PI * PI * coeff.to_f64();
        let via_f64 = vol_h(0.5, cand.b_f64(), 2);
        assert!((via_exact - via_f64).abs() < 1e-12 * via_f64.abs());
    }
}
