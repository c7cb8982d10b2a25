//! Exact univariate polynomials over `Q`, Sturm-sequence root counting on
//! open or closed intervals, and sign certificates.
//!
//! The certificates here are what make the geometric claims in the rest of
//! the crate rigorous: a verdict of [`PositivityStatus::StrictlyPositive`]
//! is backed by an exact root count, never by sampling. Floating point only
//! appears in reported witnesses and in the bracketed root finder, which is
//! a numeric tool by design.

use crate::exact::{rat, rat_i, rat_to_f64, Rat};
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Polynomial with exact rational coefficients, ascending order.
///
/// Canonical form: the zero polynomial has an empty coefficient vector and
/// every other polynomial has a nonzero leading coefficient.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalPolynomial {
    coeffs: Vec<Rat>,
}

impl RationalPolynomial {
    /// Build from ascending coefficients, trimming trailing zeros.
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        RationalPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        RationalPolynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: Rat) -> Self {
        Self::new(vec![c])
    }

    /// Convenience constructor from integer coefficients, ascending.
    pub fn from_integers(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rat_i(c)).collect())
    }

    /// Ascending coefficients (empty for the zero polynomial).
    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    /// Exact evaluation by Horner's rule.
    pub fn eval(&self, z: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    /// Floating-point evaluation (converts coefficients on the fly).
    pub fn eval_f64(&self, z: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * z + rat_to_f64(c);
        }
        acc
    }

    /// First derivative.
    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat_i(i as i64))
                .collect(),
        )
    }

    /// Derivative of the given order; `order >= 1`.
    pub fn derivative_n(&self, order: u32) -> Self {
        assert!(order >= 1, "derivative order must be at least 1");
        let mut p = self.derivative();
        for _ in 1..order {
            p = p.derivative();
        }
        p
    }

    pub fn scale(&self, k: &Rat) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Exact Euclidean division: returns `(quotient, remainder)` with
    /// `self = quotient * divisor + remainder` and
    /// `deg(remainder) < deg(divisor)`. Panics if `divisor` is zero.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let dlen = divisor.coeffs.len();
        if self.coeffs.len() < dlen {
            return (Self::zero(), self.clone());
        }
        let lead = divisor.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rat::zero(); self.coeffs.len() - dlen + 1];
        for i in (0..quot.len()).rev() {
            let factor = &rem[i + dlen - 1] / &lead;
            if !factor.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    let t = &rem[i + j] - d * &factor;
                    rem[i + j] = t;
                }
            }
            quot[i] = factor;
        }
        rem.truncate(dlen - 1);
        (Self::new(quot), Self::new(rem))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = std::mem::replace(&mut b, r);
        }
        match a.leading() {
            Some(l) if !l.is_one() => {
                let inv = l.recip();
                a.scale(&inv)
            }
            _ => a,
        }
    }

    /// Square-free part `self / gcd(self, self')`: same roots, all simple.
    pub fn square_free_part(&self) -> Self {
        if self.degree().unwrap_or(0) <= 1 {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) {
            self.clone()
        } else {
            self.div_rem(&g).0
        }
    }

    /// Sturm sequence `p, p', -rem(...), ...` ending before the zero
    /// polynomial.
    pub fn sturm_sequence(&self) -> Vec<Self> {
        let mut seq = vec![self.clone()];
        let d = self.derivative();
        if d.is_zero() {
            return seq;
        }
        seq.push(d);
        loop {
            let n = seq.len();
            let rem = seq[n - 2].div_rem(&seq[n - 1]).1;
            if rem.is_zero() {
                return seq;
            }
            seq.push(-&rem);
        }
    }

    /// Number of distinct real roots in `iv`, counted exactly.
    ///
    /// Open endpoints use one-sided limits, so a root exactly at an open
    /// endpoint is not counted; at closed endpoints it is. The polynomial
    /// must not be identically zero.
    pub fn sturm_root_count(&self, iv: &Interval) -> usize {
        assert!(
            !self.is_zero(),
            "root counting on the zero polynomial is undefined"
        );
        let seq = self.sturm_sequence();
        let mut count = open_root_count(&seq, &iv.lo, &iv.hi);
        if !iv.open_lo && self.eval(&iv.lo).is_zero() {
            count += 1;
        }
        if !iv.open_hi && self.eval(&iv.hi).is_zero() {
            count += 1;
        }
        count
    }

    /// Number of distinct real roots on the whole line.
    pub fn count_real_roots(&self) -> usize {
        assert!(!self.is_zero());
        if self.degree() == Some(0) {
            return 0;
        }
        let seq = self.sturm_sequence();
        let at_minus_inf: Vec<i32> = seq.iter().map(|p| sign_at_minus_infinity(p)).collect();
        let at_plus_inf: Vec<i32> = seq.iter().map(|p| sign_at_plus_infinity(p)).collect();
        sign_variations(&at_minus_inf) - sign_variations(&at_plus_inf)
    }

    /// Sign certificate for `self` on `iv`. See [`PositivityVerdict`].
    pub fn certify_positive(&self, iv: &Interval) -> PositivityVerdict {
        certify(self, iv)
    }

    /// Coefficients converted to `f64`.
    pub fn to_real(&self) -> RealPolynomial {
        RealPolynomial::new(self.coeffs.iter().map(rat_to_f64).collect())
    }
}

impl fmt::Debug for RationalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 => format!("({c})z"),
                _ => format!("({c})z^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl Add for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn add(self, rhs: &RationalPolynomial) -> RationalPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero);
            let b = rhs.coeffs.get(i).cloned().unwrap_or_else(Rat::zero);
            out.push(a + b);
        }
        RationalPolynomial::new(out)
    }
}

impl Sub for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn sub(self, rhs: &RationalPolynomial) -> RationalPolynomial {
        self + &(-rhs)
    }
}

impl Neg for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn neg(self) -> RationalPolynomial {
        RationalPolynomial::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl Mul for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn mul(self, rhs: &RationalPolynomial) -> RationalPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return RationalPolynomial::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let t = &out[i + j] + &(a * b);
                out[i + j] = t;
            }
        }
        RationalPolynomial::new(out)
    }
}

/// Rational interval with independently open or closed endpoints.
///
/// Invariant: `lo < hi` strictly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: Rat,
    pub hi: Rat,
    pub open_lo: bool,
    pub open_hi: bool,
}

impl Interval {
    pub fn open(lo: Rat, hi: Rat) -> Self {
        assert!(lo < hi, "interval endpoints out of order");
        Interval {
            lo,
            hi,
            open_lo: true,
            open_hi: true,
        }
    }

    pub fn closed(lo: Rat, hi: Rat) -> Self {
        assert!(lo < hi, "interval endpoints out of order");
        Interval {
            lo,
            hi,
            open_lo: false,
            open_hi: false,
        }
    }

    pub fn midpoint(&self) -> Rat {
        (&self.lo + &self.hi) / rat_i(2)
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }
}

/// Outcome of a sign certificate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PositivityStatus {
    /// `p > 0` everywhere on the interval.
    StrictlyPositive,
    /// `p >= 0` with at least one zero on the interval.
    TouchesZero,
    /// `p` takes a negative value somewhere on the interval.
    ChangesSign,
}

impl PositivityStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            PositivityStatus::StrictlyPositive => "strictly_positive",
            PositivityStatus::TouchesZero => "touches_zero",
            PositivityStatus::ChangesSign => "changes_sign",
        }
    }
}

impl fmt::Display for PositivityStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Certificate returned by [`RationalPolynomial::certify_positive`].
///
/// `witness` is present exactly when the status is not strictly positive:
/// a zero location for [`PositivityStatus::TouchesZero`], a point of
/// negativity for [`PositivityStatus::ChangesSign`]. The underlying count
/// is exact; the witness itself is a floating-point approximation accurate
/// to about 1e-12 in the coordinate.
#[derive(Clone, Debug, PartialEq)]
pub struct PositivityVerdict {
    pub status: PositivityStatus,
    pub witness: Option<f64>,
}

impl PositivityVerdict {
    pub fn strictly_positive() -> Self {
        PositivityVerdict {
            status: PositivityStatus::StrictlyPositive,
            witness: None,
        }
    }

    pub fn is_strictly_positive(&self) -> bool {
        self.status == PositivityStatus::StrictlyPositive
    }
}

fn sign_variations(signs: &[i32]) -> usize {
    let mut count = 0;
    let mut last = 0;
    for &s in signs {
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

fn sign_at_plus_infinity(p: &RationalPolynomial) -> i32 {
    p.leading().map_or(0, |l| if l.is_positive() { 1 } else { -1 })
}

fn sign_at_minus_infinity(p: &RationalPolynomial) -> i32 {
    match (p.degree(), p.leading()) {
        (Some(d), Some(l)) => {
            let s = if l.is_positive() { 1 } else { -1 };
            if d % 2 == 0 {
                s
            } else {
                -s
            }
        }
        _ => 0,
    }
}

/// Which one-sided limit to take at a point.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    /// Approach from the right: the sign of `p(a + eps)`.
    Right,
    /// Approach from the left: the sign of `p(b - eps)`.
    Left,
}

/// Sign of `p` in the one-sided limit at `at`. Zero only for the zero
/// polynomial: for nonzero `p` the first nonvanishing derivative decides,
/// with the `(-1)^k` twist on left limits.
fn sign_near(p: &RationalPolynomial, at: &Rat, side: Side) -> i32 {
    let mut q = p.clone();
    let mut order = 0u32;
    while !q.is_zero() {
        let v = q.eval(at);
        if !v.is_zero() {
            let s = if v.is_positive() { 1 } else { -1 };
            return if side == Side::Left && order % 2 == 1 {
                -s
            } else {
                s
            };
        }
        q = q.derivative();
        order += 1;
    }
    0
}

/// Distinct roots of the sequence's head polynomial strictly inside
/// `(lo, hi)`, by the difference of one-sided sign variation counts.
fn open_root_count(seq: &[RationalPolynomial], lo: &Rat, hi: &Rat) -> usize {
    let at_lo: Vec<i32> = seq.iter().map(|p| sign_near(p, lo, Side::Right)).collect();
    let at_hi: Vec<i32> = seq.iter().map(|p| sign_near(p, hi, Side::Left)).collect();
    let (va, vb) = (sign_variations(&at_lo), sign_variations(&at_hi));
    debug_assert!(va >= vb, "sign variations must not increase left to right");
    va - vb
}

/// Location of one distinct real root.
#[derive(Clone, Debug)]
enum RootLoc {
    /// Root found exactly at a rational point.
    Exact(Rat),
    /// Open bracket `(lo, hi)` containing exactly one root; the polynomial
    /// is nonzero at both bracket endpoints.
    Bracket(Rat, Rat),
}

impl RootLoc {
    fn left_edge(&self) -> &Rat {
        match self {
            RootLoc::Exact(r) => r,
            RootLoc::Bracket(u, _) => u,
        }
    }

    fn right_edge(&self) -> &Rat {
        match self {
            RootLoc::Exact(r) => r,
            RootLoc::Bracket(_, v) => v,
        }
    }

    fn approx(&self) -> f64 {
        match self {
            RootLoc::Exact(r) => rat_to_f64(r),
            RootLoc::Bracket(u, v) => rat_to_f64(&((u + v) / rat_i(2))),
        }
    }
}

/// Isolate the distinct roots of `sf` (square-free) strictly inside
/// `(lo, hi)`, returning locations ordered left to right.
fn isolate_roots_open(sf: &RationalPolynomial, lo: &Rat, hi: &Rat) -> Vec<RootLoc> {
    let seq = sf.sturm_sequence();
    let mut out = Vec::new();
    subdivide(sf, &seq, lo, hi, lo, hi, &mut out);
    out.sort_by(|a, b| a.left_edge().cmp(b.left_edge()));
    out
}

fn subdivide(
    sf: &RationalPolynomial,
    seq: &[RationalPolynomial],
    lo: &Rat,
    hi: &Rat,
    outer_lo: &Rat,
    outer_hi: &Rat,
    out: &mut Vec<RootLoc>,
) {
    let n = open_root_count(seq, lo, hi);
    if n == 0 {
        return;
    }
    if n == 1 {
        out.push(refine_single(sf, seq, lo.clone(), hi.clone(), outer_lo, outer_hi));
        return;
    }
    let mid = (lo + hi) / rat_i(2);
    if sf.eval(&mid).is_zero() {
        out.push(RootLoc::Exact(mid.clone()));
    }
    subdivide(sf, seq, lo, &mid, outer_lo, outer_hi, out);
    subdivide(sf, seq, &mid, hi, outer_lo, outer_hi, out);
}

/// Shrink a single-root bracket until it sits strictly inside the outer
/// interval, has non-root endpoints, and is narrow enough for a sharp
/// floating witness. May discover the root exactly at a bisection point.
fn refine_single(
    sf: &RationalPolynomial,
    seq: &[RationalPolynomial],
    mut lo: Rat,
    mut hi: Rat,
    outer_lo: &Rat,
    outer_hi: &Rat,
) -> RootLoc {
    let target = (outer_hi - outer_lo) * rat(1, 1i64 << 48);
    loop {
        let clean = &lo > outer_lo
            && &hi < outer_hi
            && !sf.eval(&lo).is_zero()
            && !sf.eval(&hi).is_zero();
        if clean && (&hi - &lo) <= target {
            return RootLoc::Bracket(lo, hi);
        }
        let mid = (&lo + &hi) / rat_i(2);
        if sf.eval(&mid).is_zero() {
            return RootLoc::Exact(mid);
        }
        if open_root_count(seq, &lo, &mid) == 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
}

fn certify(p: &RationalPolynomial, iv: &Interval) -> PositivityVerdict {
    let mid_witness = rat_to_f64(&iv.midpoint());
    if p.is_zero() {
        return PositivityVerdict {
            status: PositivityStatus::TouchesZero,
            witness: Some(mid_witness),
        };
    }
    if p.degree() == Some(0) {
        let c = &p.coeffs()[0];
        return if c.is_positive() {
            PositivityVerdict::strictly_positive()
        } else if c.is_zero() {
            unreachable!("canonical form excludes zero constants")
        } else {
            PositivityVerdict {
                status: PositivityStatus::ChangesSign,
                witness: Some(mid_witness),
            }
        };
    }
    // Closed endpoints where p vanishes force at least TouchesZero; the
    // interior decides whether it is worse.
    let lo_zero = !iv.open_lo && p.eval(&iv.lo).is_zero();
    let hi_zero = !iv.open_hi && p.eval(&iv.hi).is_zero();
    let interior = certify_open(p, &iv.lo, &iv.hi);
    if lo_zero || hi_zero {
        return match interior.status {
            PositivityStatus::ChangesSign => interior,
            _ => PositivityVerdict {
                status: PositivityStatus::TouchesZero,
                witness: Some(if lo_zero {
                    rat_to_f64(&iv.lo)
                } else {
                    rat_to_f64(&iv.hi)
                }),
            },
        };
    }
    // With open (or non-vanishing closed) endpoints, a negative closed
    // endpoint is a negative point of the interval itself.
    if !iv.open_lo && p.eval(&iv.lo).is_negative() {
        return PositivityVerdict {
            status: PositivityStatus::ChangesSign,
            witness: Some(rat_to_f64(&iv.lo)),
        };
    }
    if !iv.open_hi && p.eval(&iv.hi).is_negative() {
        return PositivityVerdict {
            status: PositivityStatus::ChangesSign,
            witness: Some(rat_to_f64(&iv.hi)),
        };
    }
    interior
}

/// Certificate on the open interval `(lo, hi)`.
fn certify_open(p: &RationalPolynomial, lo: &Rat, hi: &Rat) -> PositivityVerdict {
    let seq = p.sturm_sequence();
    let roots = open_root_count(&seq, lo, hi);
    if roots == 0 {
        // Constant sign on the open interval; one interior sample decides.
        let mid = (lo + hi) / rat_i(2);
        let v = p.eval(&mid);
        debug_assert!(!v.is_zero());
        return if v.is_positive() {
            PositivityVerdict::strictly_positive()
        } else {
            PositivityVerdict {
                status: PositivityStatus::ChangesSign,
                witness: Some(rat_to_f64(&mid)),
            }
        };
    }
    let sf = p.square_free_part();
    let locs = isolate_roots_open(&sf, lo, hi);
    debug_assert_eq!(locs.len(), roots, "isolation must find every root");
    // Signs of p on the root-free segments between consecutive locations.
    // Segment i lies left of location i; the final segment is right of the
    // last location.
    let mut segment_signs = Vec::with_capacity(locs.len() + 1);
    segment_signs.push(sign_near(p, lo, Side::Right));
    for loc in &locs {
        segment_signs.push(match loc {
            RootLoc::Exact(r) => sign_near(p, r, Side::Right),
            RootLoc::Bracket(_, v) => {
                let s = p.eval(v);
                debug_assert!(!s.is_zero());
                if s.is_positive() {
                    1
                } else {
                    -1
                }
            }
        });
    }
    debug_assert_eq!(
        *segment_signs.last().unwrap(),
        sign_near(p, hi, Side::Left),
        "segment signs must be consistent at the right endpoint"
    );
    if let Some(neg) = segment_signs.iter().position(|&s| s < 0) {
        // Concrete point inside the negative segment.
        let left = if neg == 0 {
            lo.clone()
        } else {
            locs[neg - 1].right_edge().clone()
        };
        let right = if neg == locs.len() {
            hi.clone()
        } else {
            locs[neg].left_edge().clone()
        };
        let w = (&left + &right) / rat_i(2);
        debug_assert!(p.eval(&w).is_negative());
        return PositivityVerdict {
            status: PositivityStatus::ChangesSign,
            witness: Some(rat_to_f64(&w)),
        };
    }
    // Every segment is positive, so each root is touched from above.
    PositivityVerdict {
        status: PositivityStatus::TouchesZero,
        witness: Some(locs[0].approx()),
    }
}

/// Error from [`find_root_bracketed`].
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum BracketError {
    #[error("no sign change on the bracket: f({lo}) = {flo:e}, f({hi}) = {fhi:e}")]
    NoSignChange { lo: f64, hi: f64, flo: f64, fhi: f64 },
}

/// Root of a continuous function on a sign-changing bracket.
///
/// Bisection narrows the bracket to width `tol` (or machine resolution),
/// then as many as 50 Newton steps with a numeric derivative polish the
/// midpoint; any step that leaves the bracket or fails to reduce `|f|`
/// falls back to the bisection midpoint. The result `r` always satisfies
/// sign change of `f` across `[r - tol, r + tol]`.
pub fn find_root_bracketed(
    f: impl Fn(f64) -> f64,
    lo: f64,
    hi: f64,
    tol: f64,
) -> Result<f64, BracketError> {
    assert!(tol > 0.0, "tolerance must be positive");
    assert!(lo < hi, "bracket endpoints out of order");
    let (mut a, mut b) = (lo, hi);
    let (mut fa, fb) = (f(a), f(b));
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() * fb.signum() >= 0.0 || !fa.is_finite() || !fb.is_finite() {
        return Err(BracketError::NoSignChange {
            lo,
            hi,
            flo: fa,
            fhi: fb,
        });
    }
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if b - a <= tol || m <= a || m >= b {
            break;
        }
        let fm = f(m);
        if fm == 0.0 {
            return Ok(m);
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    let mid = 0.5 * (a + b);
    let mut best = mid;
    let mut best_f = f(best).abs();
    let mut x = mid;
    for _ in 0..50 {
        let h = 1e-7 * x.abs().max(1e-3);
        let df = (f(x + h) - f(x - h)) / (2.0 * h);
        if df == 0.0 || !df.is_finite() {
            break;
        }
        let next = x - f(x) / df;
        if !(a..=b).contains(&next) {
            break;
        }
        let fx = f(next).abs();
        if fx < best_f {
            best = next;
            best_f = fx;
        }
        if (next - x).abs() <= f64::EPSILON * x.abs().max(1.0) {
            break;
        }
        x = next;
    }
    Ok(best)
}

/// Polynomial with `f64` coefficients, ascending order. The floating twin
/// of [`RationalPolynomial`] for quadrature and plotting paths.
#[derive(Clone, Debug, PartialEq)]
pub struct RealPolynomial {
    coeffs: Vec<f64>,
}

impl RealPolynomial {
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        while coeffs.last().map_or(false, |c| *c == 0.0) {
            coeffs.pop();
        }
        RealPolynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn eval(&self, z: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return RealPolynomial { coeffs: Vec::new() };
        }
        RealPolynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * i as f64)
                .collect(),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        RealPolynomial::new(
            (0..n)
                .map(|i| {
                    self.coeffs.get(i).copied().unwrap_or(0.0)
                        + other.coeffs.get(i).copied().unwrap_or(0.0)
                })
                .collect(),
        )
    }

    pub fn scale(&self, k: f64) -> Self {
        RealPolynomial::new(self.coeffs.iter().map(|c| c * k).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_i};
    use proptest::prelude::*;

    /// The worked fiber profile: (1 - z^2) * ((1 + (3/5) z) - (11/130)(1 - z^2)).
    fn worked_profile() -> RationalPolynomial {
        let one_minus_z2 = RationalPolynomial::new(vec![rat_i(1), rat_i(0), rat_i(-1)]);
        let affine = RationalPolynomial::new(vec![rat_i(1), rat(3, 5)]);
        let fiber = &affine - &one_minus_z2.scale(&rat(11, 130));
        &one_minus_z2 * &fiber
    }

    #[test]
    fn eval_matches_factored_form_exactly() {
        // Oracle: evaluate each factor separately and multiply, all exact.
        let p = worked_profile();
        for z in [rat(1, 2), rat(-3, 7), rat_i(0), rat(9, 10), rat(-99, 100)] {
            let f1 = rat_i(1) - &z * &z;
            let f2 = rat_i(1) + rat(3, 5) * &z - rat(11, 130) * &f1;
            assert_eq!(p.eval(&z), f1 * f2);
        }
    }

    #[test]
    fn derivative_at_profile_boundary() {
        // F'(1) = -2(1 + x) and F'(-1) = 2(1 - x) for x = 3/5, independent of c.
        let d = worked_profile().derivative();
        assert_eq!(d.eval(&rat_i(1)), rat(-16, 5));
        assert_eq!(d.eval(&rat_i(-1)), rat(4, 5));
    }

    #[test]
    fn higher_derivatives() {
        let p = RationalPolynomial::from_integers(&[0, 0, 0, 0, 1]); // z^4
        assert_eq!(
            p.derivative_n(2),
            RationalPolynomial::from_integers(&[0, 0, 12])
        );
        assert_eq!(p.derivative_n(4), RationalPolynomial::from_integers(&[24]));
        assert!(p.derivative_n(5).is_zero());
    }

    #[test]
    fn div_rem_reconstructs() {
        let a = RationalPolynomial::from_integers(&[2, -3, 0, 5, 1]);
        let b = RationalPolynomial::from_integers(&[1, 2, 3]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.degree() < b.degree());
    }

    #[test]
    fn gcd_and_square_free() {
        // p = (z - 1)^2 (z + 2)
        let f1 = RationalPolynomial::from_integers(&[-1, 1]);
        let f2 = RationalPolynomial::from_integers(&[2, 1]);
        let p = &(&f1 * &f1) * &f2;
        let g = p.gcd(&p.derivative());
        assert_eq!(g, f1); // monic z - 1
        let sf = p.square_free_part();
        assert_eq!(sf, &f1 * &f2);
    }

    #[test]
    fn sturm_counts_open_vs_closed() {
        // 1 - z^2 vanishes exactly at the endpoints of (-1, 1).
        let p = RationalPolynomial::from_integers(&[1, 0, -1]);
        assert_eq!(p.sturm_root_count(&Interval::open(rat_i(-1), rat_i(1))), 0);
        assert_eq!(
            p.sturm_root_count(&Interval::closed(rat_i(-1), rat_i(1))),
            2
        );
        assert_eq!(p.sturm_root_count(&Interval::open(rat_i(-2), rat_i(2))), 2);
    }

    #[test]
    fn sturm_counts_interior_roots() {
        // roots (1 +- sqrt(5))/4: both inside (-1, 1).
        let m = RationalPolynomial::new(vec![rat(-1, 4), rat(-1, 2), rat_i(1)]);
        assert_eq!(m.sturm_root_count(&Interval::open(rat_i(-1), rat_i(1))), 2);
        // Triple product on (0, 1).
        let p = &(&RationalPolynomial::new(vec![rat(-1, 4), rat_i(1)])
            * &RationalPolynomial::new(vec![rat(-1, 2), rat_i(1)]))
            * &RationalPolynomial::new(vec![rat(-3, 4), rat_i(1)]);
        assert_eq!(p.sturm_root_count(&Interval::open(rat_i(0), rat_i(1))), 3);
        // Repeated roots count once.
        let sq = RationalPolynomial::new(vec![rat(1, 9), rat(-2, 3), rat_i(1)]); // (z - 1/3)^2
        assert_eq!(sq.sturm_root_count(&Interval::open(rat_i(-1), rat_i(1))), 1);
    }

    #[test]
    fn whole_line_root_count() {
        // (z^2 + 1)(z - 2): one real root.
        let p = &RationalPolynomial::from_integers(&[1, 0, 1])
            * &RationalPolynomial::from_integers(&[-2, 1]);
        assert_eq!(p.count_real_roots(), 1);
        // z(z-1)(z+1)(z-2)(z+2): five.
        let mut q = RationalPolynomial::from_integers(&[0, 1]);
        for r in [1i64, -1, 2, -2] {
            q = &q * &RationalPolynomial::from_integers(&[-r, 1]);
        }
        assert_eq!(q.count_real_roots(), 5);
    }

    #[test]
    fn certify_strictly_positive() {
        let iv = Interval::open(rat_i(-1), rat_i(1));
        let p = RationalPolynomial::from_integers(&[1, 0, -1]); // 1 - z^2 > 0 inside
        let v = p.certify_positive(&iv);
        assert!(v.is_strictly_positive());
        assert_eq!(v.witness, None);
        let q = RationalPolynomial::from_integers(&[1, 0, 1]); // z^2 + 1
        assert!(q.certify_positive(&iv).is_strictly_positive());
        assert!(RationalPolynomial::constant(rat(1, 7))
            .certify_positive(&iv)
            .is_strictly_positive());
    }

    #[test]
    fn certify_touches_zero() {
        let iv = Interval::open(rat_i(-1), rat_i(1));
        // (z - 1/3)^2 touches at 1/3.
        let sq = RationalPolynomial::new(vec![rat(1, 9), rat(-2, 3), rat_i(1)]);
        let v = sq.certify_positive(&iv);
        assert_eq!(v.status, PositivityStatus::TouchesZero);
        let w = v.witness.unwrap();
        assert!((w - 1.0 / 3.0).abs() < 1e-9, "witness {w}");
        // Closed interval with boundary zeros.
        let p = RationalPolynomial::from_integers(&[1, 0, -1]);
        let v = p.certify_positive(&Interval::closed(rat_i(-1), rat_i(1)));
        assert_eq!(v.status, PositivityStatus::TouchesZero);
        assert_eq!(v.witness, Some(-1.0));
        // Two separate even touches: (z - 1/4)^2 (z + 1/2)^2.
        let a = RationalPolynomial::new(vec![rat(-1, 4), rat_i(1)]);
        let b = RationalPolynomial::new(vec![rat(1, 2), rat_i(1)]);
        let q = &(&a * &a) * &(&b * &b);
        let v = q.certify_positive(&iv);
        assert_eq!(v.status, PositivityStatus::TouchesZero);
        assert!((v.witness.unwrap() + 0.5).abs() < 1e-9);
        // Zero polynomial.
        let v = RationalPolynomial::zero().certify_positive(&iv);
        assert_eq!(v.status, PositivityStatus::TouchesZero);
        assert_eq!(v.witness, Some(0.0));
    }

    #[test]
    fn certify_changes_sign() {
        let iv = Interval::open(rat_i(-1), rat_i(1));
        for p in [
            RationalPolynomial::new(vec![rat(-1, 3), rat_i(1)]), // z - 1/3
            -&RationalPolynomial::new(vec![rat(1, 9), rat(-2, 3), rat_i(1)]), // -(z-1/3)^2
            RationalPolynomial::constant(rat_i(-2)),
            // (z - 1/4)^2 (z - 1/2): odd root at 1/2
            &(&RationalPolynomial::new(vec![rat(-1, 4), rat_i(1)])
                * &RationalPolynomial::new(vec![rat(-1, 4), rat_i(1)]))
                * &RationalPolynomial::new(vec![rat(-1, 2), rat_i(1)]),
        ] {
            let v = p.certify_positive(&iv);
            assert_eq!(v.status, PositivityStatus::ChangesSign, "poly {p:?}");
            let w = v.witness.expect("changes_sign carries a witness");
            assert!(p.eval_f64(w) < 0.0, "witness {w} not negative for {p:?}");
        }
    }

    #[test]
    fn certify_respects_open_endpoints() {
        // Negative only outside the open interval: (1 - z^2) becomes negative
        // beyond +-1, positive strictly inside.
        let p = RationalPolynomial::from_integers(&[1, 0, -1]);
        assert!(p
            .certify_positive(&Interval::open(rat_i(-1), rat_i(1)))
            .is_strictly_positive());
        let v = p.certify_positive(&Interval::open(rat(-3, 2), rat(3, 2)));
        assert_eq!(v.status, PositivityStatus::ChangesSign);
        assert!(p.eval_f64(v.witness.unwrap()) < 0.0);
    }

    #[test]
    #[should_panic(expected = "out of order")]
    fn interval_rejects_empty() {
        let _ = Interval::open(rat_i(1), rat_i(1));
    }

    #[test]
    fn bracketed_root_sqrt2() {
        let r = find_root_bracketed(|z| z * z - 2.0, 1.0, 2.0, 1e-14).unwrap();
        assert!((r - 2.0f64.sqrt()).abs() <= 1e-13);
        // Sign change across [r - tol, r + tol].
        let f = |z: f64| z * z - 2.0;
        assert!(f(r - 1e-14) * f(r + 1e-14) <= 0.0);
    }

    #[test]
    fn bracketed_root_flat_origin() {
        let r = find_root_bracketed(|z| z * z * z, -1.0, 2.0, 1e-14).unwrap();
        assert!(r.abs() < 1e-5, "cubic root at origin, got {r}");
    }

    #[test]
    fn bracketed_root_requires_sign_change() {
        let e = find_root_bracketed(|z| z * z - 2.0, 2.0, 3.0, 1e-12);
        assert!(matches!(e, Err(BracketError::NoSignChange { .. })));
    }

    #[test]
    fn real_polynomial_mirror() {
        let p = worked_profile();
        let rp = p.to_real();
        for z in [-0.9, -0.25, 0.0, 0.5, 0.99] {
            let exact = p.eval(&crate::exact::best_approximation(
                &rat((z * 1000.0) as i64, 1000),
                &num_bigint::BigInt::from(1000),
            ));
            let _ = exact; // evaluated only at the same grid point below
            assert!((rp.eval(z) - p.eval_f64(z)).abs() < 1e-15);
        }
        assert_eq!(rp.derivative().coeffs().len(), rp.coeffs().len() - 1);
    }

    // ---- property tests ----

    fn arb_rat() -> impl Strategy<Value = Rat> {
        (-40i64..40, 1i64..24).prop_map(|(n, d)| rat(n, d))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn horner_matches_naive_power_sum(
            coeffs in proptest::collection::vec((-30i64..30, 1i64..12), 0..7),
            z in arb_rat(),
        ) {
            let p = RationalPolynomial::new(
                coeffs.iter().map(|&(n, d)| rat(n, d)).collect());
            let mut naive = Rat::zero();
            let mut zk = Rat::one();
            for c in p.coeffs() {
                naive = naive + c * &zk;
                zk = zk * &z;
            }
            prop_assert_eq!(p.eval(&z), naive);
        }

        #[test]
        fn sturm_agrees_with_planted_roots(
            raw_roots in proptest::collection::vec(-24i64..24, 1..5),
            window in (-30i64..0, 1i64..30),
        ) {
            // Roots on the grid k/8; interval endpoints on the offset grid
            // (k + 1/2)/8 so they never collide with a root.
            let mut roots: Vec<i64> = raw_roots;
            roots.sort_unstable();
            roots.dedup();
            let mut p = RationalPolynomial::constant(rat_i(1));
            for &r in &roots {
                p = &p * &RationalPolynomial::new(vec![rat(-r, 8), rat_i(1)]);
            }
            let lo = rat(2 * window.0 + 1, 16);
            let hi = rat(2 * (window.0 + window.1) + 1, 16);
            let expected = roots
                .iter()
                .filter(|&&r| rat(r, 8) > lo && rat(r, 8) < hi)
                .count();
            prop_assert_eq!(p.sturm_root_count(&Interval::open(lo, hi)), expected);
        }

        #[test]
        fn certify_classifies_planted_factors(
            even_roots in proptest::collection::vec(-12i64..12, 0..3),
            negate in any::<bool>(),
            shift in 1i64..9,
        ) {
            // q = prod (z - r/8)^2 * (z^2 + shift/8): nonnegative with known
            // zero set; negation must flip the verdict to ChangesSign.
            let mut dedup = even_roots.clone();
            dedup.sort_unstable();
            dedup.dedup();
            let mut q = RationalPolynomial::new(vec![rat(shift, 8), rat_i(0), rat_i(1)]);
            for &r in &dedup {
                let lin = RationalPolynomial::new(vec![rat(-r, 8), rat_i(1)]);
                q = &q * &(&lin * &lin);
            }
            let iv = Interval::open(rat(-31, 16), rat(31, 16));
            let inside: Vec<i64> = dedup
                .iter()
                .copied()
                .filter(|&r| rat(r, 8) > iv.lo && rat(r, 8) < iv.hi)
                .collect();
            let p = if negate { -&q } else { q };
            let v = p.certify_positive(&iv);
            if negate {
                prop_assert_eq!(v.status, PositivityStatus::ChangesSign);
                prop_assert!(p.eval_f64(v.witness.unwrap()) < 0.0);
            } else if inside.is_empty() {
                prop_assert!(v.is_strictly_positive());
            } else {
                prop_assert_eq!(v.status, PositivityStatus::TouchesZero);
            }
        }

        #[test]
        fn bracketed_root_meets_tolerance(a in 1i32..50, b in -40i32..40) {
            // Strictly increasing cubic: unique real root.
            let (af, bf) = (a as f64 / 10.0, b as f64 / 10.0);
            let f = |z: f64| z * z * z + af * z + bf;
            let r = find_root_bracketed(f, -10.0, 10.0, 1e-14).unwrap();
            prop_assert!(f(r - 1e-9) <= 0.0 && f(r + 1e-9) >= 0.0);
        }
    }
}
