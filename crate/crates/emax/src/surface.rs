//! Ruled surfaces over a curve, their admissible Kähler classes, and the
//! conformally related constant-scalar-curvature structures those classes
//! carry.
//!
//! The geometry is parametrized by a fiber coordinate `z` on `(-1, 1)` and a
//! momentum profile `F(z) = (1 - z^2) m(z)` with `m(z) = c z^2 + x z + (1 - c)`.
//! A class admits the structure we are after exactly when a conformal factor
//! parameter `b` (|b| > 1) and the profile coefficient `c` jointly satisfy a
//! quartic constraint in `b`; the two quadratic factors of that constraint
//! give the two solution families below. Everything algebraic is carried out
//! in `Q(sqrt(d))` so admissibility is decided exactly.

use crate::exact::{precision_bits, rat, rat_i, rat_to_f64, QuadExt, Rat};
use crate::poly::{
    find_root_bracketed, Interval, PositivityStatus, PositivityVerdict, RationalPolynomial,
    RealPolynomial,
};
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::ops::{Add, Div, Mul, Sub};
use thiserror::Error;

/// Errors from surface and class construction and the solvers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SurfaceError {
    #[error("fiber degree must be at least 1, got {0}")]
    InvalidDegree(u32),
    #[error("fiber ratio x = {0} lies outside the open Kähler cone (0, 1)")]
    OutOfCone(String),
    #[error("second-family solutions need x in [4/5, 1), got x = {0}")]
    CaseTwoOutOfRange(String),
    #[error("second-family solutions exist only on the surface with s_sigma = 2 (genus 0, degree 1)")]
    WrongSurface,
    #[error("positivity thresholds are defined only for base curves of genus >= 2")]
    NotNegativeCurvature,
    #[error("denominator vanishes at b = {0}; the invariant is undefined there")]
    SingularDenominator(f64),
}

/// Projectivization of `O + L` over a curve of the given genus, where `L`
/// has the given degree (>= 1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuledSurface {
    genus: u32,
    degree: u32,
    s_sigma: Rat,
}

impl RuledSurface {
    /// Build the surface; `s_sigma = 2(1 - genus)/degree` is the normalized
    /// base scalar curvature, kept exact.
    pub fn new(genus: u32, degree: u32) -> Result<Self, SurfaceError> {
        if degree == 0 {
            return Err(SurfaceError::InvalidDegree(degree));
        }
        let s_sigma = rat(2 * (1 - genus as i64), degree as i64);
        Ok(RuledSurface {
            genus,
            degree,
            s_sigma,
        })
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn s_sigma(&self) -> &Rat {
        &self.s_sigma
    }

    pub fn s_sigma_f64(&self) -> f64 {
        rat_to_f64(&self.s_sigma)
    }
}

/// Which integrality pattern the polarization follows.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassParity {
    /// Fiber degree `2k`, ratio `x = k/p` with `1 <= k < p`.
    Even { k: u64 },
    /// Fiber degree `2k + 1`, ratio `x = (2k + 1)/(2p + 1)` with `0 <= k < p`.
    Odd { k: u64 },
}

impl ClassParity {
    pub fn k(&self) -> u64 {
        match *self {
            ClassParity::Even { k } | ClassParity::Odd { k } => k,
        }
    }
}

/// An admissible Kähler class, carried redundantly as the fiber ratio
/// `x in (0, 1)` and the integral data `(parity, k, p)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KahlerClass {
    x: Rat,
    parity: ClassParity,
    p: Rat,
}

impl KahlerClass {
    /// Class determined by the fiber ratio and the fiber degree `n`.
    pub fn from_fiber_ratio(x: Rat, degree: u32) -> Result<Self, SurfaceError> {
        if degree == 0 {
            return Err(SurfaceError::InvalidDegree(degree));
        }
        if !(x > Rat::zero() && x < Rat::one()) {
            return Err(SurfaceError::OutOfCone(x.to_string()));
        }
        let n = degree as i64;
        let (parity, p) = if n % 2 == 0 {
            let k = n / 2;
            (ClassParity::Even { k: k as u64 }, rat_i(k) / &x)
        } else {
            let k = (n - 1) / 2;
            // x = (2k + 1)/(2p + 1)
            let p = (rat_i(n) / &x - Rat::one()) / rat_i(2);
            (ClassParity::Odd { k: k as u64 }, p)
        };
        Ok(KahlerClass { x, parity, p })
    }

    /// Class determined by the integral data.
    pub fn from_integral_data(parity: ClassParity, p: Rat) -> Result<Self, SurfaceError> {
        let x = match parity {
            ClassParity::Even { k } => {
                if k == 0 || rat_i(k as i64) >= p {
                    return Err(SurfaceError::OutOfCone(format!("k = {k}, p = {p}")));
                }
                rat_i(k as i64) / &p
            }
            ClassParity::Odd { k } => {
                if rat_i(k as i64) >= p {
                    return Err(SurfaceError::OutOfCone(format!("k = {k}, p = {p}")));
                }
                rat_i(2 * k as i64 + 1) / (rat_i(2) * &p + Rat::one())
            }
        };
        debug_assert!(x > Rat::zero() && x < Rat::one());
        Ok(KahlerClass { x, parity, p })
    }

    pub fn x(&self) -> &Rat {
        &self.x
    }

    pub fn parity(&self) -> ClassParity {
        self.parity
    }

    pub fn p(&self) -> &Rat {
        &self.p
    }

    /// Fiber degree `n` encoded by the parity data.
    pub fn degree(&self) -> u32 {
        match self.parity {
            ClassParity::Even { k } => 2 * k as u32,
            ClassParity::Odd { k } => 2 * k as u32 + 1,
        }
    }
}

/// Which factor of the quartic constraint produced a solution.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolutionCase {
    /// First factor: `x b^2 - 2 b + x = 0`, available for every `x`.
    CaseOne,
    /// Second factor, larger root of
    /// `(s x - 2) b^2 + 2 b x - s x = 0` (only on the `s_sigma = 2` surface).
    CaseTwoPlus,
    /// Second factor, smaller root.
    CaseTwoMinus,
}

impl SolutionCase {
    pub fn as_str(&self) -> &'static str {
        match self {
            SolutionCase::CaseOne => "case_one",
            SolutionCase::CaseTwoPlus => "case_two_plus",
            SolutionCase::CaseTwoMinus => "case_two_minus",
        }
    }
}

/// A solved (or refuted) structure on one Kähler class: the conformal factor
/// parameter `b`, profile coefficient `c`, the would-be constant scalar
/// curvature, and the exact positivity verdict for the fiber quadratic.
///
/// All scalars are exact elements of `Q(sqrt(d))`; the verdict alone decides
/// whether the candidate is a genuine solution.
#[derive(Clone, Debug)]
pub struct EMCandidate {
    x: Rat,
    surface: RuledSurface,
    case: SolutionCase,
    b: QuadExt,
    c: QuadExt,
    scal_h: QuadExt,
    verdict: PositivityVerdict,
}

impl EMCandidate {
    pub fn x(&self) -> &Rat {
        &self.x
    }

    pub fn surface(&self) -> &RuledSurface {
        &self.surface
    }

    pub fn case(&self) -> SolutionCase {
        self.case
    }

    pub fn b_exact(&self) -> &QuadExt {
        &self.b
    }

    pub fn c_exact(&self) -> &QuadExt {
        &self.c
    }

    /// The constant value of `Scal(h)` this candidate would realize.
    pub fn scal_h_exact(&self) -> &QuadExt {
        &self.scal_h
    }

    pub fn verdict(&self) -> &PositivityVerdict {
        &self.verdict
    }

    pub fn b_f64(&self) -> f64 {
        self.b.to_f64()
    }

    pub fn c_f64(&self) -> f64 {
        self.c.to_f64()
    }

    pub fn scal_h_f64(&self) -> f64 {
        self.scal_h.to_f64()
    }

    /// True when the positivity certificate admits the metric.
    pub fn is_solution(&self) -> bool {
        self.verdict.is_strictly_positive()
    }

    /// The quartic profile `F` with floating coefficients.
    pub fn profile_real(&self) -> RealPolynomial {
        profile_real(rat_to_f64(&self.x), self.c.to_f64())
    }

    /// The quartic profile `F` with exact coefficients, when `c` is rational.
    pub fn profile_exact(&self) -> Option<RationalPolynomial> {
        self.c.as_rat().map(|c| profile_polynomial(&self.x, &c))
    }

    /// The fiber quadratic `m` with exact coefficients, when `c` is rational.
    pub fn fiber_quadratic_exact(&self) -> Option<RationalPolynomial> {
        self.c.as_rat().map(|c| fiber_quadratic(&self.x, &c))
    }

    /// Constant-curvature scalar at fiber coordinate `z`, evaluated in
    /// floating point. For a genuine solution this is `z`-independent up to
    /// rounding.
    pub fn scal_h_at(&self, z: f64) -> f64 {
        scal_h_profile_at(
            &self.profile_real(),
            rat_to_f64(&self.x),
            self.b_f64(),
            self.surface.s_sigma_f64(),
            z,
        )
    }

    /// Residual of the quartic constraint at this candidate's `(x, b)`,
    /// computed exactly. Zero for anything the solvers emit.
    pub fn constraint_residual_exact(&self) -> QuadExt {
        constraint_residual(&self.x, &self.b, self.surface.s_sigma())
    }
}

/// `m(z) = c z^2 + x z + (1 - c)` as an exact polynomial.
pub fn fiber_quadratic(x: &Rat, c: &Rat) -> RationalPolynomial {
    RationalPolynomial::new(vec![Rat::one() - c, x.clone(), c.clone()])
}

/// `F(z) = (1 - z^2) m(z)`, expanded.
pub fn profile_polynomial(x: &Rat, c: &Rat) -> RationalPolynomial {
    RationalPolynomial::new(vec![
        Rat::one() - c,
        x.clone(),
        rat_i(2) * c - Rat::one(),
        -x.clone(),
        -c.clone(),
    ])
}

/// Floating-point twin of [`profile_polynomial`].
pub fn profile_real(x: f64, c: f64) -> RealPolynomial {
    RealPolynomial::new(vec![1.0 - c, x, 2.0 * c - 1.0, -x, -c])
}

/// `(x b^2 - 2 b + x) ((s x - 2) b^2 + 2 b x - s x)` in `Q(sqrt(d))`.
pub fn constraint_residual(x: &Rat, b: &QuadExt, s_sigma: &Rat) -> QuadExt {
    let xq = QuadExt::from_rat(x.clone());
    let sx = QuadExt::from_rat(s_sigma * x);
    let b2 = b * b;
    let q = QuadExt::from_i64;
    let factor1 = xq.clone() * b2.clone() - q(2) * b.clone() + xq.clone();
    let factor2 =
        (sx.clone() - q(2)) * b2 + q(2) * b.clone() * xq - sx;
    factor1 * factor2
}

/// Shared tail of the two solvers: derive `c` and the constant curvature
/// from a constraint root `b`, then certify the fiber quadratic.
fn candidate_from_b(
    x: &Rat,
    b: QuadExt,
    case: SolutionCase,
    surface: &RuledSurface,
) -> EMCandidate {
    let q = QuadExt::from_i64;
    let xq = QuadExt::from_rat(x.clone());
    let sx = QuadExt::from_rat(surface.s_sigma() * x);
    let b2 = &b * &b;
    let b3 = &b2 * &b;
    let b4 = &b2 * &b2;
    let three_b2_minus_1 = q(3) * b2.clone() - q(1);
    let c = (q(-1) + q(3) * b.clone() * xq.clone() - sx.clone())
        / (q(2) * three_b2_minus_1.clone());
    let scal_h = q(6)
        * (q(1) - q(6) * b2.clone() + b4.clone() + q(2) * b.clone() * xq.clone()
            + q(2) * b3 * xq
            - sx.clone()
            + b4 * sx)
        / three_b2_minus_1;
    let verdict = certify_fiber_quadratic(x, &c);
    let cand = EMCandidate {
        x: x.clone(),
        surface: surface.clone(),
        case,
        b,
        c,
        scal_h,
        verdict,
    };
    debug_assert!(
        cand.constraint_residual_exact().is_zero(),
        "solver produced a non-root of the constraint"
    );
    cand
}

/// First-family solution for the class with fiber ratio `x in (0, 1)`:
/// `b = (1 + sqrt(1 - x^2)) / x`.
///
/// Always returns a candidate; whether it is a genuine solution is recorded
/// in the verdict.
pub fn solve_case1(x: &Rat, surface: &RuledSurface) -> EMCandidate {
    assert!(
        x > &Rat::zero() && x < &Rat::one(),
        "fiber ratio outside (0, 1)"
    );
    let d = Rat::one() - x * x;
    let inv_x = x.recip();
    let b = QuadExt::new(inv_x.clone(), inv_x, d);
    candidate_from_b(x, b, SolutionCase::CaseOne, surface)
}

/// Outcome of the second-family solver.
#[derive(Clone, Debug)]
pub enum CaseTwoSolutions {
    /// Two distinct conformal factors sharing a single profile.
    Pair {
        plus: EMCandidate,
        minus: EMCandidate,
    },
    /// At `x = 4/5` the two roots merge (into `b = 2`), which is also the
    /// first-family value; returned as a single first-family candidate.
    Coincident(EMCandidate),
}

/// Second-family solutions: the roots of `(s x - 2) b^2 + 2 b x - s x` on
/// the `s_sigma = 2` surface, real exactly when `x >= 4/5`.
pub fn solve_case2(x: &Rat, surface: &RuledSurface) -> Result<CaseTwoSolutions, SurfaceError> {
    if surface.s_sigma() != &rat_i(2) {
        return Err(SurfaceError::WrongSurface);
    }
    if !(x >= &rat(4, 5) && x < &Rat::one()) {
        return Err(SurfaceError::CaseTwoOutOfRange(x.to_string()));
    }
    if x == &rat(4, 5) {
        return Ok(CaseTwoSolutions::Coincident(solve_case1(x, surface)));
    }
    // b = (x +- sqrt(x(5x - 4))) / (2(1 - x))
    let radicand = x * (rat_i(5) * x - rat_i(4));
    let denom = rat_i(2) * (Rat::one() - x);
    let rational = x / &denom;
    let coeff = denom.recip();
    let plus = candidate_from_b(
        x,
        QuadExt::new(rational.clone(), coeff.clone(), radicand.clone()),
        SolutionCase::CaseTwoPlus,
        surface,
    );
    let minus = candidate_from_b(
        x,
        QuadExt::new(rational, -coeff, radicand),
        SolutionCase::CaseTwoMinus,
        surface,
    );
    // Both roots force the same rational profile coefficient c = (1 - x)/2.
    let c_expected = (Rat::one() - x) / rat_i(2);
    debug_assert_eq!(plus.c_exact().as_rat(), Some(c_expected.clone()));
    debug_assert_eq!(minus.c_exact().as_rat(), Some(c_expected));
    Ok(CaseTwoSolutions::Pair { plus, minus })
}

/// Exact positivity certificate for `m(z) = c z^2 + x z + (1 - c)` on the
/// open fiber interval `(-1, 1)`.
///
/// Rational `c` goes straight to the Sturm certifier. Irrational `c` is
/// handled through the monotone envelope trick: `dm/dc = z^2 - 1 < 0` on the
/// open interval, so the quadratic with `c` replaced by the upper enclosure
/// endpoint bounds the family from below and vice versa. Certifying an
/// envelope therefore certifies the exact quadratic. Tangency (vanishing
/// discriminant) is decided by an exact sign computation in `Q(sqrt(d))`,
/// never numerically.
pub fn certify_fiber_quadratic(x: &Rat, c: &QuadExt) -> PositivityVerdict {
    let iv = Interval::open(rat_i(-1), rat_i(1));
    if let Some(cr) = c.as_rat() {
        return fiber_quadratic(x, &cr).certify_positive(&iv);
    }
    let q = QuadExt::from_i64;
    let xq = QuadExt::from_rat(x.clone());
    let disc = xq.clone() * xq.clone() - q(4) * c.clone() * (QuadExt::one() - c.clone());
    // m(-1) = 1 - x and m(1) = 1 + x are positive whatever c is, so real
    // roots lie inside (-1, 1) exactly when the vertex does.
    let vertex = -(xq / (q(2) * c.clone()));
    let vertex_inside = vertex.cmp_rat(&rat_i(-1)) == Ordering::Greater
        && vertex.cmp_rat(&rat_i(1)) == Ordering::Less;
    if disc.sign() == 0 {
        return if vertex_inside {
            PositivityVerdict {
                status: PositivityStatus::TouchesZero,
                witness: Some(vertex.to_f64()),
            }
        } else {
            PositivityVerdict::strictly_positive()
        };
    }
    let mut bits = precision_bits();
    for _ in 0..4 {
        let (c_lo, c_hi) = c.enclosure(bits);
        let lower_envelope = fiber_quadratic(x, &c_hi);
        if lower_envelope.certify_positive(&iv).is_strictly_positive() {
            return PositivityVerdict::strictly_positive();
        }
        let upper_envelope = fiber_quadratic(x, &c_lo);
        let upper = upper_envelope.certify_positive(&iv);
        if upper.status == PositivityStatus::ChangesSign {
            // m <= upper envelope pointwise, so the witness carries over.
            return upper;
        }
        bits = bits.saturating_mul(2).min(8192);
    }
    // Only reachable within ~2^-8192 of tangency; fall back to the exact
    // discriminant geometry.
    if disc.sign() < 0 || !vertex_inside {
        PositivityVerdict::strictly_positive()
    } else {
        PositivityVerdict {
            status: PositivityStatus::ChangesSign,
            witness: Some(vertex.to_f64()),
        }
    }
}

/// Lower/upper envelope quadratics used by the irrational-`c` certificate,
/// exposed for testing: `(m with c -> enclosure hi, m with c -> enclosure lo)`.
pub fn fiber_envelopes(
    x: &Rat,
    c: &QuadExt,
    bits: u32,
) -> (RationalPolynomial, RationalPolynomial) {
    let (c_lo, c_hi) = c.enclosure(bits);
    (fiber_quadratic(x, &c_hi), fiber_quadratic(x, &c_lo))
}

/// `Scal(h)` at fiber coordinate `z` for an arbitrary (not necessarily
/// solved) profile, conformal parameter, and base curvature.
pub fn scal_h_profile_at(f: &RealPolynomial, x: f64, b: f64, s_sigma: f64, z: f64) -> f64 {
    let d1 = f.derivative();
    let d2 = d1.derivative();
    let zb = z + b;
    let num =
        -zb * zb * d2.eval(z) + 6.0 * zb * d1.eval(z) - 12.0 * f.eval(z) + 2.0 * s_sigma * x * zb * zb;
    num / (1.0 + x * z)
}

/// Scalar curvature of the unrescaled Kähler structure at `z`.
pub fn scal_g_at(f: &RealPolynomial, x: f64, surface: &RuledSurface, z: f64) -> f64 {
    let d2 = f.derivative().derivative();
    (2.0 * surface.s_sigma_f64() * x - d2.eval(z)) / (1.0 + x * z)
}

/// Metric Laplacian applied to a function of the fiber coordinate alone:
/// `-(F p')' / (1 + x z)` expanded by the product rule.
pub fn laplacian_at(p: &RealPolynomial, f: &RealPolynomial, x: f64, z: f64) -> f64 {
    let dp = p.derivative();
    let d2p = dp.derivative();
    let df = f.derivative();
    -(df.eval(z) * dp.eval(z) + f.eval(z) * d2p.eval(z)) / (1.0 + x * z)
}

/// The two distinguished fiber ratios of a negative base: strict positivity
/// of the fiber quadratic holds on `(0, x2)` and fails beyond, while the
/// quadratic's minimum moves interior at `x1 < x2`.
#[derive(Clone, Debug)]
pub struct Thresholds {
    pub x1: f64,
    pub x2: f64,
    s_sigma: Rat,
}

impl Thresholds {
    pub fn s_sigma(&self) -> &Rat {
        &self.s_sigma
    }

    /// Exact lower bound `1/(s_sigma^2 + 2)` that `x2` always exceeds.
    pub fn lemma_lower_bound(&self) -> Rat {
        (self.s_sigma() * self.s_sigma() + rat_i(2)).recip()
    }
}

/// Locate `x1` (interior-minimum onset) and `x2` (positivity loss) for a
/// base of genus >= 2.
pub fn thresholds(surface: &RuledSurface) -> Result<Thresholds, SurfaceError> {
    let s = surface.s_sigma();
    if !s.is_negative() {
        return Err(SurfaceError::NotNegativeCurvature);
    }
    let sf = rat_to_f64(s);
    // 2 (3 - 2x^2 + 3 sqrt(1-x^2)) m'(-1) / x rewritten as a function of x alone.
    let g = move |x: f64| {
        6.0 - 2.0 * x - 4.0 * x * x + sf * x * x + (6.0 - 3.0 * x) * (1.0 - x * x).sqrt()
    };
    // Discriminant of the fiber quadratic, cleared of its positive factor.
    let disc = move |x: f64| {
        let t = (1.0 - x * x).sqrt();
        12.0 + 12.0 * sf * x - 19.0 * x * x - 12.0 * sf * x.powi(3)
            + (7.0 + sf * sf) * x.powi(4)
            + 6.0 * t * (2.0 + 2.0 * sf * x - 2.0 * x * x - sf * x.powi(3))
    };
    // g(0) = 12 > 0 > s_sigma = g(1); the root is unique in (0, 1).
    let x1 = find_root_bracketed(g, 0.0, 1.0, 1e-14)
        .expect("interior-minimum threshold bracket must change sign");
    // disc(x1) < 0 (the minimum arrives with positive value) and
    // disc(1) = s_sigma^2 > 0.
    let x2 = find_root_bracketed(disc, x1, 1.0, 1e-14)
        .expect("positivity threshold bracket must change sign");
    let t = Thresholds {
        x1,
        x2,
        s_sigma: s.clone(),
    };
    debug_assert!(rat_to_f64(&t.lemma_lower_bound()) < t.x1 && t.x1 < t.x2 && t.x2 < 1.0);
    Ok(t)
}

/// The profile coefficient `c` as a function on all of `(x, b)` space, not
/// just on constraint roots: the Futaki-type obstruction calculation.
///
/// On each of the four constraint-root branches the correction term
/// vanishes and this reduces to the solver's `c`.
pub fn futaki_c(x: &Rat, b: f64, surface: &RuledSurface) -> Result<f64, SurfaceError> {
    let xf = rat_to_f64(x);
    let s = surface.s_sigma_f64();
    let den1 = 3.0 * b * b - 1.0;
    let den2 = (b * b - 3.0) * xf * xf + 4.0 * b * xf + (1.0 - 3.0 * b * b);
    if den1.abs() < 1e-12 || den2.abs() < 1e-12 {
        return Err(SurfaceError::SingularDenominator(b));
    }
    let base = (-1.0 + 3.0 * b * xf - s * xf) / (2.0 * den1);
    let factor1 = xf * b * b - 2.0 * b + xf;
    let factor2 = (s * xf - 2.0) * b * b + 2.0 * b * xf - s * xf;
    Ok(base + 3.0 * xf * factor1 * factor2 / (2.0 * den1 * den2))
}

/// Shifted coordinate data for the hyperbolic-ansatz presentation of the
/// metrics; invariant under `zeta -> 1/zeta`.
#[derive(Clone, Debug, PartialEq)]
pub struct LeBrunShift<T> {
    pub a_shift: T,
    pub b_shift: T,
    pub e_coeff: T,
}

/// Compute the shifted coordinates from the branch-ratio parameter `zeta`.
/// Works verbatim over `f64` and over exact rationals.
pub fn lebrun_invariants<T>(zeta: T) -> LeBrunShift<T>
where
    T: Clone
        + Zero
        + One
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Div<Output = T>,
{
    let one = T::one;
    let two = || one() + one();
    let four = || two() * two();
    let a = one() / (two() * zeta);
    let b = one() + a.clone();
    let sum = a.clone() + b.clone();
    // alpha = -4 a^2 b / (a + b)^2, kept as a subtraction to avoid a Neg bound.
    let shift = four() * a.clone() * a.clone() * b.clone() / (sum.clone() * sum);
    let a_shift = a.clone() - shift.clone();
    let b_shift = b.clone() - shift.clone();
    let denom = a.clone() * a.clone() + four() * a.clone() * b.clone() + b.clone() * b;
    let e_coeff = (T::zero() - (shift + two() * a)) / denom;
    LeBrunShift {
        a_shift,
        b_shift,
        e_coeff,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::fmt_rat;
    use proptest::prelude::*;

    fn surface(genus: u32, degree: u32) -> RuledSurface {
        RuledSurface::new(genus, degree).unwrap()
    }

    #[test]
    fn base_curvature_values() {
        assert_eq!(surface(0, 1).s_sigma(), &rat_i(2));
        assert_eq!(surface(0, 2).s_sigma(), &rat_i(1));
        assert_eq!(surface(1, 3).s_sigma(), &rat_i(0));
        assert_eq!(surface(2, 1).s_sigma(), &rat_i(-2));
        assert_eq!(surface(2, 2).s_sigma(), &rat_i(-1));
        assert_eq!(surface(2, 3).s_sigma(), &rat(-2, 3));
        assert_eq!(surface(3, 1).s_sigma(), &rat_i(-4));
        assert_eq!(surface(6, 1).s_sigma(), &rat_i(-10));
        assert!(matches!(
            RuledSurface::new(1, 0),
            Err(SurfaceError::InvalidDegree(0))
        ));
    }

    #[test]
    fn class_conversion_round_trip() {
        // Even: n = 4, x = 3/5 -> k = 2, p = 10/3.
        let c = KahlerClass::from_fiber_ratio(rat(3, 5), 4).unwrap();
        assert_eq!(c.parity(), ClassParity::Even { k: 2 });
        assert_eq!(c.p(), &rat(10, 3));
        let back = KahlerClass::from_integral_data(c.parity(), c.p().clone()).unwrap();
        assert_eq!(back.x(), &rat(3, 5));
        assert_eq!(back.degree(), 4);
        // Odd: n = 1, x = 3/5 -> k = 0, p = 1/3.
        let c = KahlerClass::from_fiber_ratio(rat(3, 5), 1).unwrap();
        assert_eq!(c.parity(), ClassParity::Odd { k: 0 });
        assert_eq!(c.p(), &rat(1, 3));
        // Odd: n = 5, x = 5/11 -> 2p + 1 = 11, p = 5, k = 2.
        let c = KahlerClass::from_fiber_ratio(rat(5, 11), 5).unwrap();
        assert_eq!(c.parity(), ClassParity::Odd { k: 2 });
        assert_eq!(c.p(), &rat_i(5));
    }

    #[test]
    fn class_rejects_degenerate_data() {
        assert!(matches!(
            KahlerClass::from_fiber_ratio(rat_i(1), 2),
            Err(SurfaceError::OutOfCone(_))
        ));
        assert!(matches!(
            KahlerClass::from_fiber_ratio(rat(-1, 2), 2),
            Err(SurfaceError::OutOfCone(_))
        ));
        assert!(matches!(
            KahlerClass::from_integral_data(ClassParity::Even { k: 0 }, rat_i(3)),
            Err(SurfaceError::OutOfCone(_))
        ));
        assert!(matches!(
            KahlerClass::from_integral_data(ClassParity::Odd { k: 3 }, rat_i(3)),
            Err(SurfaceError::OutOfCone(_))
        ));
        assert!(matches!(
            KahlerClass::from_fiber_ratio(rat(1, 2), 0),
            Err(SurfaceError::InvalidDegree(0))
        ));
    }

    #[test]
    fn worked_first_family_solution() {
        // x = 3/5 on a torus base: every quantity is rational.
        let surf = surface(1, 1);
        let cand = solve_case1(&rat(3, 5), &surf);
        assert_eq!(cand.b_exact().as_rat(), Some(rat_i(3)));
        assert_eq!(cand.c_exact().as_rat(), Some(rat(11, 130)));
        assert_eq!(cand.scal_h_exact().as_rat(), Some(rat(192, 13)));
        assert!(cand.is_solution());
        assert!(cand.constraint_residual_exact().is_zero());
        let f = cand.profile_exact().unwrap();
        // Boundary behavior: F(+-1) = 0, F'(+-1) = -+2(1 +- x).
        assert!(f.eval(&rat_i(1)).is_zero() && f.eval(&rat_i(-1)).is_zero());
        let fp = f.derivative();
        assert_eq!(fp.eval(&rat_i(1)), rat(-16, 5));
        assert_eq!(fp.eval(&rat_i(-1)), rat(4, 5));
    }

    #[test]
    fn irrational_first_family_solution() {
        // x = 1/2, s_sigma = 0: b = 2 + sqrt(3), irrational.
        let surf = surface(1, 2);
        let cand = solve_case1(&rat(1, 2), &surf);
        let b = cand.b_exact();
        assert!(!b.is_rational());
        // Minimal polynomial: b^2 - 4b + 1 = 0.
        let min_poly = b * b - QuadExt::from_i64(4) * b.clone() + QuadExt::one();
        assert!(min_poly.is_zero());
        assert!((cand.b_f64() - (2.0 + 3.0f64.sqrt())).abs() < 1e-14);
        assert!(cand.is_solution());
        assert!(cand.constraint_residual_exact().is_zero());
        // Dual route to c: x^2 (2 - s x + 3 t) / (4 (3 - 2 x^2 + 3 t)) with
        // t = sqrt(1 - x^2), evaluated in the same field.
        let x = rat(1, 2);
        let t = QuadExt::sqrt_of(Rat::one() - &x * &x);
        let q = QuadExt::from_i64;
        let xq = QuadExt::from_rat(x.clone());
        let c_closed = xq.clone() * xq.clone() * (q(2) + q(3) * t.clone())
            / (q(4) * (q(3) - q(2) * xq.clone() * xq + q(3) * t));
        assert!((cand.c_exact().clone() - c_closed).is_zero());
    }

    #[test]
    fn second_family_pair_and_coincidence() {
        let surf = surface(0, 1);
        match solve_case2(&rat(5, 6), &surf).unwrap() {
            CaseTwoSolutions::Pair { plus, minus } => {
                // b = (5 +- sqrt(5))/2: minimal polynomial b^2 - 5b + 5.
                for cand in [&plus, &minus] {
                    let b = cand.b_exact();
                    let mp = b * b - QuadExt::from_i64(5) * b.clone() + QuadExt::from_i64(5);
                    assert!(mp.is_zero(), "branch {:?}", cand.case());
                    assert_eq!(cand.c_exact().as_rat(), Some(rat(1, 12)));
                    assert!(cand.is_solution());
                }
                assert!(plus.b_f64() > minus.b_f64());
                assert!(minus.b_f64() > 1.0);
                // Shared profile, exactly.
                assert_eq!(plus.profile_exact(), minus.profile_exact());
            }
            other => panic!("expected a pair, got {other:?}"),
        }
        match solve_case2(&rat(4, 5), &surf).unwrap() {
            CaseTwoSolutions::Coincident(cand) => {
                assert_eq!(cand.b_exact().as_rat(), Some(rat_i(2)));
                assert_eq!(cand.case(), SolutionCase::CaseOne);
            }
            other => panic!("expected coincident roots, got {other:?}"),
        }
        assert!(matches!(
            solve_case2(&rat(1, 2), &surf),
            Err(SurfaceError::CaseTwoOutOfRange(_))
        ));
        assert!(matches!(
            solve_case2(&rat(5, 6), &surface(1, 1)),
            Err(SurfaceError::WrongSurface)
        ));
    }

    #[test]
    fn scal_h_is_constant_on_solutions() {
        let surf = surface(1, 1);
        let cand = solve_case1(&rat(3, 5), &surf);
        let a = cand.scal_h_f64();
        for i in 0..=40 {
            let z = -0.999 + 1.998 * (i as f64) / 40.0;
            assert!(
                (cand.scal_h_at(z) - a).abs() < 1e-12 * a.abs(),
                "z = {z}"
            );
        }
    }

    #[test]
    fn scal_g_matches_exact_second_derivative() {
        let x = rat(3, 5);
        let f = profile_polynomial(&x, &rat(11, 130));
        let surf = surface(1, 1);
        let z = rat(1, 4);
        let exact = (rat_i(2) * surf.s_sigma() * &x - f.derivative_n(2).eval(&z))
            / (Rat::one() + &x * &z);
        let numeric = scal_g_at(&f.to_real(), rat_to_f64(&x), &surf, rat_to_f64(&z));
        assert!((numeric - rat_to_f64(&exact)).abs() < 1e-13);
    }

    #[test]
    fn laplacian_matches_product_rule_oracle() {
        // Oracle: expand -(F p')' = -(F' p' + F p'') as exact polynomials
        // and evaluate rationally.
        let x = rat(3, 5);
        let f = profile_polynomial(&x, &rat(11, 130));
        let p = RationalPolynomial::from_integers(&[0, 2, 5]); // 2z + 5z^2
        let z = rat(-3, 8);
        let num =
            &(&f.derivative() * &p.derivative()) + &(&f * &p.derivative_n(2));
        let exact = -num.eval(&z) / (Rat::one() + &x * &z);
        let numeric = laplacian_at(&p.to_real(), &f.to_real(), rat_to_f64(&x), rat_to_f64(&z));
        assert!((numeric - rat_to_f64(&exact)).abs() < 1e-13);
    }

    #[test]
    fn thresholds_worked_values() {
        let t = thresholds(&surface(2, 1)).unwrap();
        assert!((t.x1 - 0.93578).abs() < 5e-5, "x1 = {}", t.x1);
        assert!((t.x2 - 0.97367).abs() < 5e-5, "x2 = {}", t.x2);
        assert_eq!(t.lemma_lower_bound(), rat(1, 6));
        assert!(matches!(
            thresholds(&surface(1, 1)),
            Err(SurfaceError::NotNegativeCurvature)
        ));
        assert!(matches!(
            thresholds(&surface(0, 2)),
            Err(SurfaceError::NotNegativeCurvature)
        ));
    }

    #[test]
    fn lemma_bound_across_curvatures() {
        for (genus, degree) in [(2u32, 1u32), (2, 2), (2, 3), (3, 1), (6, 1)] {
            let surf = surface(genus, degree);
            let t = thresholds(&surf).unwrap();
            let bound = rat_to_f64(&t.lemma_lower_bound());
            assert!(
                t.x2 > bound,
                "x2 = {} <= bound {} at s = {}",
                t.x2,
                bound,
                fmt_rat(surf.s_sigma())
            );
        }
    }

    #[test]
    fn certificates_flip_past_the_threshold() {
        let surf = surface(2, 1);
        let below = solve_case1(&rat(9, 10), &surf);
        assert!(below.is_solution());
        let near = solve_case1(&rat(97, 100), &surf);
        assert!(near.is_solution());
        let above = solve_case1(&rat(98, 100), &surf);
        assert_eq!(above.verdict().status, PositivityStatus::ChangesSign);
        let w = above.verdict().witness.unwrap();
        assert!((-1.0..1.0).contains(&w));
        // The witness really is a negative point of the envelope family.
        let x = rat(98, 100);
        let (lower, upper) = fiber_envelopes(&x, above.c_exact(), 128);
        assert!(upper.eval_f64(w) < 0.0);
        assert!(lower.eval_f64(w) < 0.0);
    }

    #[test]
    fn futaki_reduces_to_c_on_constraint_roots() {
        let surf = surface(2, 1);
        let x = rat(7, 10);
        let cand = solve_case1(&x, &surf);
        let c = futaki_c(&x, cand.b_f64(), &surf).unwrap();
        assert!((c - cand.c_f64()).abs() < 1e-12);
        // Also on the reciprocal first-family root (1 - sqrt(1-x^2))/x,
        // which has |b| < 1 and is not a metric, but is a constraint root.
        let xf = rat_to_f64(&x);
        let b_small = (1.0 - (1.0 - xf * xf).sqrt()) / xf;
        let c_small = futaki_c(&x, b_small, &surf).unwrap();
        let eqc = (-1.0 + 3.0 * b_small * xf - surf.s_sigma_f64() * xf)
            / (2.0 * (3.0 * b_small * b_small - 1.0));
        assert!((c_small - eqc).abs() < 1e-12);
    }

    #[test]
    fn futaki_rejects_singular_denominators() {
        let surf = surface(1, 1);
        let b = (1.0f64 / 3.0).sqrt(); // 3b^2 - 1 = 0
        assert!(matches!(
            futaki_c(&rat(1, 2), b, &surf),
            Err(SurfaceError::SingularDenominator(_))
        ));
    }

    #[test]
    fn lebrun_shift_worked_values() {
        let shift = lebrun_invariants(rat_i(1));
        assert_eq!(shift.a_shift, rat(1, 8));
        assert_eq!(shift.b_shift, rat(9, 8));
        assert_eq!(shift.e_coeff, rat(-1, 4));
        let shift = lebrun_invariants(rat_i(2));
        assert_eq!(shift.a_shift, rat(1, 9));
        assert_eq!(shift.b_shift, rat(10, 9));
        assert_eq!(shift.e_coeff, rat(-2, 9));
    }

    #[test]
    fn lebrun_shift_reciprocal_invariance() {
        for zeta in [rat(3, 1), rat(7, 2), rat(12, 5)] {
            let there = lebrun_invariants(zeta.clone());
            let back = lebrun_invariants(zeta.recip());
            assert_eq!(there, back, "zeta = {zeta}");
        }
        let a = lebrun_invariants(3.0f64);
        let b = lebrun_invariants(1.0 / 3.0f64);
        assert!((a.a_shift - b.a_shift).abs() < 1e-14);
        assert!((a.b_shift - b.b_shift).abs() < 1e-14);
        assert!((a.e_coeff - b.e_coeff).abs() < 1e-14);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn class_round_trip(num in 1i64..60, den in 2i64..61, degree in 1u32..9) {
            prop_assume!(num < den);
            let x = rat(num, den);
            let class = KahlerClass::from_fiber_ratio(x.clone(), degree).unwrap();
            let back = KahlerClass::from_integral_data(class.parity(), class.p().clone()).unwrap();
            prop_assert_eq!(back.x(), &x);
            prop_assert_eq!(class.degree(), degree);
        }

        #[test]
        fn first_family_residual_is_exactly_zero(
            num in 1i64..40, den in 2i64..41, genus in 0u32..4, degree in 1u32..4,
        ) {
            prop_assume!(num < den);
            let x = rat(num, den);
            let surf = RuledSurface::new(genus, degree).unwrap();
            let cand = solve_case1(&x, &surf);
            prop_assert!(cand.constraint_residual_exact().is_zero());
            // b > 1 always on this branch.
            prop_assert!(cand.b_exact().cmp_rat(&rat_i(1)) == Ordering::Greater);
        }

        #[test]
        fn futaki_matches_solver_c_on_branches(
            num in 1i64..30, den in 2i64..31, genus in 0u32..4,
        ) {
            prop_assume!(num < den);
            let x = rat(num, den);
            let surf = RuledSurface::new(genus, 1).unwrap();
            let cand = solve_case1(&x, &surf);
            let via_futaki = futaki_c(&x, cand.b_f64(), &surf).unwrap();
            prop_assert!((via_futaki - cand.c_f64()).abs() < 1e-11);
        }
    }
}
