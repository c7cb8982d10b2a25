//! End-to-end invariant suite.
//!
//! Re-derives every identity the crate trades on, with deterministic
//! seeding, and reports one pass/fail line per invariant instead of
//! stopping at the first failure. A panic inside one check is caught and
//! reported as that check's failure.

use crate::exact::{
    best_approximation, parse_rational, rat, rat_i, rat_to_f64, sqrt_enclosure, Rat,
};
use crate::functional::{
    eh_case1_closed, eh_case2_closed, eh_value, total_scal_normalized, vol_h, vol_h_pi2_coeff,
    vol_h_quadrature, yamabe_bounds,
};
use crate::moduli::{enumerate_components, witness_class, Manifold};
use crate::poly::PositivityStatus;
use crate::quad::integrate;
use crate::surface::{
    certify_fiber_quadratic, futaki_c, lebrun_invariants, solve_case1, solve_case2, thresholds,
    CaseTwoSolutions, ClassParity, KahlerClass, LeBrunShift, RuledSurface,
};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::panic::{catch_unwind, AssertUnwindSafe};

#[derive(Clone, Debug)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default)]
pub struct VerifyReport {
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.passed).count()
    }
}

fn panic_text(p: Box<dyn std::any::Any + Send>) -> String {
    if let Some(s) = p.downcast_ref::<&str>() {
        (*s).to_string()
    } else if let Some(s) = p.downcast_ref::<String>() {
        s.clone()
    } else {
        "opaque panic payload".to_string()
    }
}

fn run_check<F>(checks: &mut Vec<CheckResult>, name: &'static str, f: F)
where
    F: FnOnce() -> Result<String, String>,
{
    let outcome = catch_unwind(AssertUnwindSafe(f));
    let (passed, detail) = match outcome {
        Ok(Ok(d)) => (true, d),
        Ok(Err(d)) => (false, d),
        Err(p) => (false, format!("panicked: {}", panic_text(p))),
    };
    checks.push(CheckResult {
        name,
        passed,
        detail,
    });
}

fn random_ratio(rng: &mut ChaCha8Rng) -> Rat {
    let den = rng.gen_range(30..2000i64);
    let num = rng.gen_range(1..den);
    rat(num, den)
}

fn surface(genus: u32, degree: u32) -> RuledSurface {
    RuledSurface::new(genus, degree).unwrap()
}

/// Run the whole suite. `samples` sets grid densities (the fiber-coordinate
/// sampling of curvature constancy in particular); `tol` is the relative
/// tolerance for floating comparisons that have no intrinsic scale of their
/// own. Checks with published tolerances keep them regardless of `tol`.
pub fn run_all(samples: usize, tol: f64) -> VerifyReport {
    let samples = samples.max(8);
    let tol = if tol > 0.0 { tol } else { 1e-12 };
    let mut checks = Vec::new();
    let c = &mut checks;

    run_check(c, "base-curvature", || {
        for (genus, degree, num, den) in
            [(0, 1, 2, 1), (1, 3, 0, 1), (2, 1, -2, 1), (3, 4, -1, 1), (5, 2, -4, 1)]
        {
            let s = surface(genus, degree);
            if s.s_sigma() != &rat(num, den) {
                return Err(format!(
                    "genus {genus}, degree {degree}: s_sigma = {}",
                    s.s_sigma()
                ));
            }
        }
        Ok("5 bases".into())
    });

    run_check(c, "class-round-trip", || {
        let mut rng = ChaCha8Rng::seed_from_u64(0xE4A701);
        for _ in 0..48 {
            let k = rng.gen_range(0..12u64);
            let parity = if rng.gen_bool(0.5) && k >= 1 {
                ClassParity::Even { k }
            } else {
                ClassParity::Odd { k }
            };
            let p = &rat_i(k as i64) + &random_ratio(&mut rng) + rat(1, 7);
            let class = KahlerClass::from_integral_data(parity, p.clone())
                .map_err(|e| e.to_string())?;
            let back = KahlerClass::from_fiber_ratio(class.x().clone(), class.degree())
                .map_err(|e| e.to_string())?;
            if back.parity() != parity || back.p() != &p {
                return Err(format!("k = {k}: {:?} round-tripped to {:?}", parity, back));
            }
        }
        Ok("48 classes".into())
    });

    run_check(c, "worked-solution", || {
        let surf = surface(1, 1);
        let cand = solve_case1(&rat(3, 5), &surf);
        let checks = [
            (cand.b_exact().as_rat() == Some(rat_i(3)), "b = 3"),
            (cand.c_exact().as_rat() == Some(rat(11, 130)), "c = 11/130"),
            (
                cand.scal_h_exact().as_rat() == Some(rat(192, 13)),
                "scal = 192/13",
            ),
            (cand.is_solution(), "strictly positive"),
        ];
        for (ok, what) in checks {
            if !ok {
                return Err(format!("expected {what}"));
            }
        }
        Ok("b, c, scal, verdict all exact".into())
    });

    run_check(c, "constraint-residual", || {
        let mut rng = ChaCha8Rng::seed_from_u64(0xE4A702);
        let mut count = 0;
        for _ in 0..40 {
            let genus = rng.gen_range(0..4u32);
            let degree = rng.gen_range(1..6u32);
            let surf = surface(genus, degree);
            let x = random_ratio(&mut rng);
            let cand = solve_case1(&x, &surf);
            if !cand.constraint_residual_exact().is_zero() {
                return Err(format!("first family residual nonzero at x = {x}"));
            }
            count += 1;
        }
        let surf = surface(0, 1);
        for i in 1..20 {
            let x = &rat(4, 5) + rat(i, 100);
            if let Ok(CaseTwoSolutions::Pair { plus, minus }) = solve_case2(&x, &surf) {
                for cand in [plus, minus] {
                    if !cand.constraint_residual_exact().is_zero() {
                        return Err(format!("second family residual nonzero at x = {x}"));
                    }
                    count += 1;
                }
            }
        }
        Ok(format!("{count} candidates, all residuals exactly 0"))
    });

    run_check(c, "second-family-duality", || {
        let surf = surface(0, 1);
        for i in 1..=20 {
            let x = &rat(4, 5) + rat(i, 105);
            match solve_case2(&x, &surf).map_err(|e| e.to_string())? {
                CaseTwoSolutions::Pair { plus, minus } => {
                    let half = (Rat::one() - &x) / rat_i(2);
                    if plus.c_exact().as_rat() != Some(half.clone())
                        || minus.c_exact().as_rat() != Some(half.clone())
                    {
                        return Err(format!("c != (1-x)/2 at x = {x}"));
                    }
                    if plus.profile_exact() != minus.profile_exact()
                        || plus.profile_exact().is_none()
                    {
                        return Err(format!("branch profiles differ at x = {x}"));
                    }
                    let a = eh_value(&plus, &surf).map_err(|e| e.to_string())?.eh;
                    let b = eh_value(&minus, &surf).map_err(|e| e.to_string())?.eh;
                    let closed = eh_case2_closed(rat_to_f64(&x));
                    if (a - b).abs() > tol * a.abs() || (a - closed).abs() > tol * a.abs() {
                        return Err(format!("eh mismatch at x = {x}: {a} vs {b} vs {closed}"));
                    }
                }
                CaseTwoSolutions::Coincident(_) => {
                    return Err(format!("unexpected coincidence at x = {x}"))
                }
            }
        }
        Ok("20 ratios: shared profile, c = (1-x)/2, equal eh".into())
    });

    run_check(c, "second-family-coincidence", || {
        let surf = surface(0, 1);
        match solve_case2(&rat(4, 5), &surf).map_err(|e| e.to_string())? {
            CaseTwoSolutions::Coincident(cand) => {
                if cand.b_exact().as_rat() == Some(rat_i(2)) {
                    Ok("x = 4/5 collapses to b = 2".into())
                } else {
                    Err(format!("coincident b = {:?}", cand.b_exact()))
                }
            }
            CaseTwoSolutions::Pair { .. } => Err("expected coincident branches".into()),
        }
    });

    run_check(c, "curvature-constancy", || {
        let mut rng = ChaCha8Rng::seed_from_u64(0xE4A703);
        let mut worst = 0.0f64;
        let mut tested = 0;
        while tested < 24 {
            let genus = rng.gen_range(0..4u32);
            let degree = rng.gen_range(1..5u32);
            let surf = surface(genus, degree);
            let x = random_ratio(&mut rng);
            let cand = solve_case1(&x, &surf);
            if !cand.is_solution() {
                continue;
            }
            tested += 1;
            let target = cand.scal_h_f64();
            let profile = cand.profile_real();
            let (xf, bf, sf) = (rat_to_f64(&x), cand.b_f64(), surf.s_sigma_f64());
            for j in 1..=samples {
                let z = -1.0 + 2.0 * j as f64 / (samples as f64 + 1.0);
                let value = crate::surface::scal_h_profile_at(&profile, xf, bf, sf, z);
                let dev = (value - target).abs() / target.abs().max(1.0);
                worst = worst.max(dev);
            }
        }
        if worst < 1e-9 {
            Ok(format!("24 solutions x {samples} points, max rel dev {worst:.2e}"))
        } else {
            Err(format!("max rel deviation {worst:.2e} exceeds 1e-9"))
        }
    });

    run_check(c, "volume-agreement", || {
        let mut rng = ChaCha8Rng::seed_from_u64(0xE4A704);
        let mut worst = 0.0f64;
        for _ in 0..40 {
            let genus = rng.gen_range(0..2u32);
            let degree = rng.gen_range(1..5u32);
            let surf = surface(genus, degree);
            let x = random_ratio(&mut rng);
            let cand = solve_case1(&x, &surf);
            let xf = rat_to_f64(&x);
            let closed = vol_h(xf, cand.b_f64(), degree);
            let quad = vol_h_quadrature(xf, cand.b_f64(), degree, 1e-13).value;
            worst = worst.max((closed - quad).abs() / closed.abs());
        }
        let coeff = vol_h_pi2_coeff(&rat(3, 5), &crate::exact::QuadExt::from_i64(3), 1);
        if coeff.as_rat() != Some(rat(13, 72)) {
            return Err(format!("worked volume coefficient {coeff:?} != 13/72"));
        }
        if worst < 1e-10 {
            Ok(format!("40 candidates, max rel dev {worst:.2e}; worked value 13/72 pi^2 exact"))
        } else {
            Err(format!("max rel deviation {worst:.2e} exceeds 1e-10"))
        }
    });

    run_check(c, "eh-closed-form", || {
        let mut rng = ChaCha8Rng::seed_from_u64(0xE4A705);
        let mut worst = 0.0f64;
        let mut tested = 0;
        while tested < 30 {
            let genus = rng.gen_range(0..4u32);
            let degree = rng.gen_range(1..6u32);
            let surf = surface(genus, degree);
            let x = random_ratio(&mut rng);
            let cand = solve_case1(&x, &surf);
            if !cand.is_solution() {
                continue;
            }
            tested += 1;
            let direct = eh_value(&cand, &surf).map_err(|e| e.to_string())?.eh;
            let closed = eh_case1_closed(rat_to_f64(&x), &surf);
            worst = worst.max((direct - closed).abs() / direct.abs().max(1.0));
        }
        if worst < tol {
            Ok(format!("30 solutions, max rel dev {worst:.2e}"))
        } else {
            Err(format!("max rel deviation {worst:.2e} exceeds {tol:.1e}"))
        }
    });

    run_check(c, "total-scal-invariance", || {
        let bump = crate::poly::RealPolynomial::new(vec![1.0, 0.0, -2.0, 0.0, 1.0]);
        let mut worst = 0.0f64;
        for (genus, degree, x) in [(1u32, 1u32, rat(3, 5)), (0, 2, rat(1, 3)), (2, 1, rat(1, 4))] {
            let surf = surface(genus, degree);
            let cand = solve_case1(&x, &surf);
            let base = cand.profile_real();
            let target = yamabe_bounds(rat_to_f64(&x), &surf).kahler_bound;
            for t in [0.0, 0.6, -0.8, 2.3] {
                let f = base.add(&bump.scale(t));
                let v = total_scal_normalized(&f, &x, &surf).map_err(|e| e.to_string())?;
                worst = worst.max((v - target).abs() / target.abs());
            }
        }
        if worst < 1e-10 {
            Ok(format!("12 perturbed profiles, max rel dev {worst:.2e}"))
        } else {
            Err(format!("max rel deviation {worst:.2e} exceeds 1e-10"))
        }
    });

    run_check(c, "thresholds-worked", || {
        let t = thresholds(&surface(2, 1)).map_err(|e| e.to_string())?;
        if (t.x1 - 0.93578).abs() > 5e-5 {
            return Err(format!("x1 = {:.6}", t.x1));
        }
        if (t.x2 - 0.97367).abs() > 5e-5 {
            return Err(format!("x2 = {:.6}", t.x2));
        }
        Ok(format!("x1 = {:.6}, x2 = {:.6}", t.x1, t.x2))
    });

    run_check(c, "threshold-lemma", || {
        for (genus, degree) in [(2u32, 1u32), (2, 2), (2, 3), (3, 1), (6, 1)] {
            let surf = surface(genus, degree);
            let t = thresholds(&surf).map_err(|e| e.to_string())?;
            let bound = rat_to_f64(&t.lemma_lower_bound());
            if !(bound < t.x2 && t.x1 < t.x2 && t.x2 < 1.0) {
                return Err(format!(
                    "s = {}: bound {bound:.4}, x1 {:.4}, x2 {:.4}",
                    surf.s_sigma(),
                    t.x1,
                    t.x2
                ));
            }
        }
        Ok("5 curvatures: 1/(s^2+2) < x2 and x1 < x2 < 1".into())
    });

    run_check(c, "certificate-flip", || {
        let surf = surface(2, 1);
        let t = thresholds(&surf).map_err(|e| e.to_string())?;
        let million = BigInt::from(1_000_000);
        let below = best_approximation(&Rat::from_float(t.x2 - 3e-6).unwrap(), &million);
        let above = best_approximation(&Rat::from_float(t.x2 + 3e-6).unwrap(), &million);
        let lo = solve_case1(&below, &surf);
        let hi = solve_case1(&above, &surf);
        if lo.verdict().status != PositivityStatus::StrictlyPositive {
            return Err(format!("below threshold: {:?}", lo.verdict().status));
        }
        if hi.verdict().status != PositivityStatus::ChangesSign {
            return Err(format!("above threshold: {:?}", hi.verdict().status));
        }
        Ok(format!(
            "verdict flips across x2 = {:.6} within 3e-6",
            t.x2
        ))
    });

    run_check(c, "eh-sign-change", || {
        let surf = surface(2, 1);
        let root = 1.0 / 5.0f64.sqrt();
        let lo = eh_case1_closed(root - 5e-4, &surf);
        let hi = eh_case1_closed(root + 5e-4, &surf);
        if lo > 0.0 && hi < 0.0 {
            Ok(format!("sign change inside ({:.5}, {:.5})", root - 5e-4, root + 5e-4))
        } else {
            Err(format!("values {lo:.3e}, {hi:.3e} around {root:.6}"))
        }
    });

    run_check(c, "futaki-branches", || {
        let mut rng = ChaCha8Rng::seed_from_u64(0xE4A706);
        let mut count = 0usize;
        let mut worst = 0.0f64;
        for _ in 0..60 {
            let genus = rng.gen_range(0..4u32);
            let degree = rng.gen_range(1..5u32);
            let surf = surface(genus, degree);
            let x = random_ratio(&mut rng);
            let xf = rat_to_f64(&x);
            let t = (1.0 - xf * xf).sqrt();
            let mut roots = vec![(1.0 + t) / xf, (1.0 - t) / xf];
            if surf.s_sigma() == &rat_i(2) && xf > 0.8 {
                let r = (xf * (5.0 * xf - 4.0)).sqrt();
                roots.push((xf + r) / (2.0 * (1.0 - xf)));
                roots.push((xf - r) / (2.0 * (1.0 - xf)));
            }
            for b in roots {
                let s = surf.s_sigma_f64();
                let expected = (-1.0 + 3.0 * b * xf - s * xf) / (2.0 * (3.0 * b * b - 1.0));
                match futaki_c(&x, b, &surf) {
                    Ok(v) => {
                        worst = worst.max((v - expected).abs() / expected.abs().max(1.0));
                        count += 1;
                    }
                    Err(_) => continue, // singular denominator, skip sample
                }
            }
        }
        if count < 100 {
            return Err(format!("only {count} branch evaluations succeeded"));
        }
        if worst < tol {
            Ok(format!("{count} branch points, max rel dev {worst:.2e}"))
        } else {
            Err(format!("max rel deviation {worst:.2e} exceeds {tol:.1e}"))
        }
    });

    run_check(c, "lebrun-invariance", || {
        for zeta in [rat_i(2), rat(7, 3), rat(19, 5)] {
            let fwd = lebrun_invariants(zeta.clone());
            let bwd = lebrun_invariants(zeta.recip());
            if fwd != bwd {
                return Err(format!("not invariant at zeta = {zeta}"));
            }
        }
        let unit = lebrun_invariants(rat_i(1));
        let expected = LeBrunShift {
            a_shift: rat(1, 8),
            b_shift: rat(9, 8),
            e_coeff: rat(-1, 4),
        };
        if unit != expected {
            return Err(format!("zeta = 1 gave {unit:?}"));
        }
        Ok("zeta <-> 1/zeta exact; zeta = 1 worked values".into())
    });

    run_check(c, "moduli-torus", || {
        for manifold in [Manifold::Product, Manifold::Twisted] {
            let scan =
                enumerate_components(manifold, 1, &rat(11, 2)).map_err(|e| e.to_string())?;
            if scan.distinct_count != 6 || scan.entries.len() != 6 {
                return Err(format!(
                    "{manifold}: {} admitted of {}",
                    scan.distinct_count,
                    scan.entries.len()
                ));
            }
            for w in scan.entries.windows(2) {
                if w[1].eh >= w[0].eh {
                    return Err(format!("{manifold}: eh not strictly decreasing"));
                }
            }
        }
        Ok("p = 11/2: 6 strictly decreasing values on both bundles".into())
    });

    run_check(c, "moduli-prefix", || {
        for (manifold, genus, p) in [
            (Manifold::Product, 2u32, rat_i(4)),
            (Manifold::Twisted, 2, rat_i(4)),
            (Manifold::Product, 3, rat_i(5)),
            (Manifold::Twisted, 3, rat_i(5)),
        ] {
            let scan = enumerate_components(manifold, genus, &p).map_err(|e| e.to_string())?;
            let mut seen_false = false;
            for e in &scan.entries {
                if !e.admitted {
                    seen_false = true;
                } else if seen_false {
                    return Err(format!(
                        "{manifold} genus {genus}: admission not a prefix"
                    ));
                }
            }
        }
        Ok("4 scans: admitted entries form prefixes".into())
    });

    run_check(c, "witness-classes", || {
        for target in 1..=5usize {
            let scan = witness_class(Manifold::Product, 1, target).map_err(|e| e.to_string())?;
            if scan.p != rat(2 * target as i64 - 1, 2) {
                return Err(format!("target {target}: witness p = {}", scan.p));
            }
        }
        Ok("genus 1 witnesses are p = N - 1/2 for N = 1..5".into())
    });

    run_check(c, "positivity-cone", || {
        for (genus, degree) in [(0u32, 1u32), (0, 3), (1, 1), (1, 4)] {
            let surf = surface(genus, degree);
            for i in 1..100 {
                let x = rat(i, 100);
                let cand = solve_case1(&x, &surf);
                if !cand.is_solution() {
                    return Err(format!(
                        "genus {genus}: not strictly positive at x = {i}/100"
                    ));
                }
            }
        }
        let surf = surface(2, 1);
        let mut flips = Vec::new();
        let mut last = true;
        for i in 1..400 {
            let x = rat(i, 400);
            let now = solve_case1(&x, &surf).is_solution();
            if now != last {
                flips.push(i);
                last = now;
            }
        }
        if flips.len() != 1 {
            return Err(format!("genus 2 verdict flipped at grid points {flips:?}"));
        }
        Ok(format!(
            "nonnegative bases positive on full grid; genus 2 flips once at x = {}/400",
            flips[0]
        ))
    });

    run_check(c, "quadrature-oracle", || {
        let r = integrate(&|z| (z + 3.0f64).powi(-4), -1.0, 1.0, 1e-13, 1e-13);
        if (r.value - 7.0 / 192.0).abs() > 1e-14 {
            return Err(format!("1/(z+3)^4 integrated to {}", r.value));
        }
        let r = integrate(&|z| z * z * z * z, -1.0, 1.0, 1e-14, 0.0);
        if (r.value - 0.4).abs() > 1e-15 {
            return Err(format!("z^4 integrated to {}", r.value));
        }
        Ok("closed-form integrands reproduced".into())
    });

    run_check(c, "enclosure-width", || {
        let mut rng = ChaCha8Rng::seed_from_u64(0xE4A707);
        let bits = crate::exact::precision_bits();
        for _ in 0..20 {
            let r = &random_ratio(&mut rng) + rat_i(rng.gen_range(0..5i64));
            if r.is_zero() {
                continue;
            }
            let (lo, hi) = sqrt_enclosure(&r, bits);
            if &lo * &lo > r || &hi * &hi < r {
                return Err(format!("enclosure misses sqrt({r})"));
            }
            let width = &hi - &lo;
            let f = rat_to_f64(&width) * 2f64.powi(bits.min(1000) as i32);
            if f > 1.0 + 1e-9 {
                return Err(format!("enclosure width {f:.3} * 2^-{bits} too wide"));
            }
        }
        Ok(format!("20 square roots enclosed within 2^-{bits}"))
    });

    run_check(c, "rational-parse", || {
        let cases = [("3/5", rat(3, 5)), ("0.6", rat(3, 5)), ("0.125", rat(1, 8))];
        for (s, want) in cases {
            let got = parse_rational(s).map_err(|e| e.to_string())?;
            if got.value != want {
                return Err(format!("{s} parsed to {}", got.value));
            }
        }
        let pi = best_approximation(
            &Rat::from_float(std::f64::consts::PI).unwrap(),
            &BigInt::from(400),
        );
        if pi != rat(355, 113) {
            return Err(format!("pi approximated by {pi}"));
        }
        Ok("decimals exact, pi -> 355/113".into())
    });

    run_check(c, "certifier-vs-grid", || {
        // The exact verdict must agree with dense floating sampling of the
        // fiber quadratic wherever sampling is conclusive.
        let mut rng = ChaCha8Rng::seed_from_u64(0xE4A708);
        for _ in 0..40 {
            let x = random_ratio(&mut rng);
            let c_num = rng.gen_range(-300..300i64);
            let cq = crate::exact::QuadExt::from_rat(rat(c_num, 173));
            let verdict = certify_fiber_quadratic(&x, &cq);
            let quad = crate::surface::fiber_quadratic(&x, &rat(c_num, 173)).to_real();
            let mut min = f64::INFINITY;
            for j in 1..=2000 {
                let z = -1.0 + 2.0 * j as f64 / 2001.0;
                min = min.min(quad.eval(z));
            }
            let consistent = match verdict.status {
                PositivityStatus::StrictlyPositive => min > -1e-9,
                PositivityStatus::TouchesZero => min.abs() < 1e-3,
                PositivityStatus::ChangesSign => min < 1e-9,
            };
            if !consistent {
                return Err(format!(
                    "x = {x}, c = {c_num}/173: verdict {:?} but sampled min {min:.3e}",
                    verdict.status
                ));
            }
        }
        Ok("40 quadratics agree with dense sampling".into())
    });

    VerifyReport { checks }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_is_green() {
        let report = run_all(64, 1e-12);
        for check in &report.checks {
            assert!(check.passed, "{}: {}", check.name, check.detail);
        }
        assert!(report.checks.len() >= 20);
    }

    #[test]
    fn failures_are_reported_not_panicked() {
        let mut checks = Vec::new();
        run_check(&mut checks, "boom", || panic!("deliberate"));
        assert!(!checks[0].passed);
        assert!(checks[0].detail.contains("deliberate"));
    }
}
