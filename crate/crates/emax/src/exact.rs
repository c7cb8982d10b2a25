//! Exact scalar arithmetic: big rationals, rigorous square-root enclosures,
//! and numbers in a quadratic extension field `Q(sqrt(d))`.
//!
//! Every closed-form quantity produced by the solvers has the shape
//! `a + b*sqrt(d)` with `a`, `b`, `d` rational. Keeping that structure
//! explicit lets us report exact values whenever `d` happens to be a perfect
//! square, decide signs without any floating-point step, and hand the
//! positivity certifiers true rational enclosures of irrational data.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Arbitrary-precision rational number, the base scalar of the crate.
pub type Rat = BigRational;

/// Environment variable that controls the width of square-root enclosures.
pub const PRECISION_BITS_VAR: &str = "EMAX_PRECISION_BITS";

/// Default enclosure width exponent: enclosures are at most `2^-128` wide.
pub const DEFAULT_PRECISION_BITS: u32 = 128;

/// Enclosure width exponent, read from `EMAX_PRECISION_BITS` when set.
///
/// Clamped to `[32, 8192]`; values outside that range buy nothing and only
/// risk pathological memory use.
pub fn precision_bits() -> u32 {
    std::env::var(PRECISION_BITS_VAR)
        .ok()
        .and_then(|v| v.trim().parse::<u32>().ok())
        .map(|b| b.clamp(32, 8192))
        .unwrap_or(DEFAULT_PRECISION_BITS)
}

/// `n` as a rational.
pub fn rat_i(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `n/d` as a rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Sign of a rational as -1, 0, or 1.
pub fn rat_sign(r: &Rat) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// Rational to `f64`, correct to about one ulp for operands of any size.
///
/// `BigRational::to_f64` overflows to `NaN`/`inf` once numerator or
/// denominator exceed the `f64` range, which certified enclosures do
/// routinely. This routine rescales by a power of two first so only the
/// 64 leading bits of the quotient ever reach floating point.
pub fn rat_to_f64(r: &Rat) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    let num = r.numer().abs();
    let den = r.denom().abs();
    // Shift so the integer quotient carries ~64 significant bits.
    let shift = 64 + den.bits() as i64 - num.bits() as i64;
    let q = if shift >= 0 {
        (num << shift as u64) / &den
    } else {
        num / (&den << (-shift) as u64)
    };
    let q = q.to_f64().unwrap_or(f64::INFINITY);
    let magnitude = q * exp2i(-shift);
    if r.is_negative() {
        -magnitude
    } else {
        magnitude
    }
}

/// `2^e` as `f64`, flushing to `0.0` / `inf` outside the representable range.
fn exp2i(e: i64) -> f64 {
    if e >= 1024 {
        f64::INFINITY
    } else if e >= -1021 {
        2.0f64.powi(e as i32)
    } else if e >= -2090 {
        // Subnormal territory: split the exponent to keep powi in range.
        2.0f64.powi(-1021) * 2.0f64.powi((e + 1021) as i32)
    } else {
        0.0
    }
}

/// Exact square root of a nonnegative integer, if one exists.
fn int_sqrt_exact(i: &BigInt) -> Option<BigInt> {
    if i.is_negative() {
        return None;
    }
    let s = i.sqrt();
    (&s * &s == *i).then_some(s)
}

/// Exact square root of a nonnegative rational, if one exists.
pub fn exact_sqrt(r: &Rat) -> Option<Rat> {
    if r.is_negative() {
        return None;
    }
    if r.is_zero() {
        return Some(Rat::zero());
    }
    let sn = r.numer().sqrt();
    if &(&sn * &sn) != r.numer() {
        return None;
    }
    let sd = r.denom().sqrt();
    if &(&sd * &sd) != r.denom() {
        return None;
    }
    Some(Rat::new(sn, sd))
}

/// Rational enclosure `[lo, hi]` of `sqrt(r)` with `hi - lo <= 2^-bits`.
///
/// For `r = p/q` in lowest terms the bounds are `s / (q 2^bits)` and
/// `(s+1) / (q 2^bits)` where `s = isqrt(p q 4^bits)`, so both endpoints are
/// certified by integer arithmetic alone. Exact square roots collapse to a
/// zero-width enclosure.
pub fn sqrt_enclosure(r: &Rat, bits: u32) -> (Rat, Rat) {
    assert!(!r.is_negative(), "sqrt_enclosure: negative radicand {r}");
    if let Some(s) = exact_sqrt(r) {
        return (s.clone(), s);
    }
    let scaled: BigInt = (r.numer() * r.denom()) << (2 * bits as u64);
    let s = scaled.sqrt();
    debug_assert!(&s * &s <= scaled && (&s + 1u32) * (&s + 1u32) > scaled);
    let den: BigInt = r.denom() << (bits as u64);
    (Rat::new(s.clone(), den.clone()), Rat::new(s + 1, den))
}

/// Element `rational + coeff * sqrt(radicand)` of a real quadratic field.
///
/// Canonical form: `radicand >= 0`; if `coeff == 0` then `radicand == 0`;
/// if the radicand is a perfect rational square the value is folded into
/// `rational`. Two elements can be combined when either is rational or both
/// carry the same radicand; the constructors enforce this, so panics here
/// indicate a programming error, not bad user input.
#[derive(Clone, PartialEq, Eq)]
pub struct QuadExt {
    rational: Rat,
    coeff: Rat,
    radicand: Rat,
}

impl QuadExt {
    /// Canonical element `rational + coeff * sqrt(radicand)`.
    ///
    /// The radicand is normalized to an integer: with `radicand = n/d` in
    /// lowest terms, `sqrt(n/d)` is rewritten as `sqrt(n)/e` when `d = e^2`,
    /// as `s sqrt(d)/d` when `n = s^2`, and as `sqrt(n d)/d` otherwise.
    /// Representations built from the same fraction therefore coincide;
    /// integer square factors (say `sqrt(8)` versus `2 sqrt(2)`) are *not*
    /// unified, so compare values via differences, not representations,
    /// when they come from unrelated constructions.
    pub fn new(rational: Rat, coeff: Rat, radicand: Rat) -> Self {
        assert!(
            !radicand.is_negative(),
            "QuadExt radicand must be nonnegative, got {radicand}"
        );
        if coeff.is_zero() || radicand.is_zero() {
            return Self::from_rat(rational);
        }
        if let Some(s) = exact_sqrt(&radicand) {
            return Self::from_rat(rational + coeff * s);
        }
        let num = radicand.numer();
        let den = radicand.denom();
        let (coeff, int_radicand) = if let Some(e) = int_sqrt_exact(den) {
            (coeff / Rat::from_integer(e), Rat::from_integer(num.clone()))
        } else if let Some(s) = int_sqrt_exact(num) {
            (
                coeff * Rat::new(s, den.clone()),
                Rat::from_integer(den.clone()),
            )
        } else {
            (
                coeff / Rat::from_integer(den.clone()),
                Rat::from_integer(num * den),
            )
        };
        // num and den are coprime, so the integerized radicand is a perfect
        // square only if the original was, and that case returned above.
        QuadExt {
            rational,
            coeff,
            radicand: int_radicand,
        }
    }

    /// Embed a rational.
    pub fn from_rat(rational: Rat) -> Self {
        QuadExt {
            rational,
            coeff: Rat::zero(),
            radicand: Rat::zero(),
        }
    }

    /// Embed an integer.
    pub fn from_i64(n: i64) -> Self {
        Self::from_rat(rat_i(n))
    }

    /// `sqrt(radicand)` itself.
    pub fn sqrt_of(radicand: Rat) -> Self {
        Self::new(Rat::zero(), Rat::one(), radicand)
    }

    pub fn zero() -> Self {
        Self::from_rat(Rat::zero())
    }

    pub fn one() -> Self {
        Self::from_rat(Rat::one())
    }

    pub fn rational_part(&self) -> &Rat {
        &self.rational
    }

    pub fn radical_coeff(&self) -> &Rat {
        &self.coeff
    }

    pub fn radicand(&self) -> &Rat {
        &self.radicand
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.coeff.is_zero()
    }

    /// True when the value lies in `Q` (irrational part vanished).
    pub fn is_rational(&self) -> bool {
        self.coeff.is_zero()
    }

    /// The value as a rational, when it is one.
    pub fn as_rat(&self) -> Option<Rat> {
        self.is_rational().then(|| self.rational.clone())
    }

    /// Radicand both operands must live over; rationals are compatible with
    /// everything.
    fn join_radicand(&self, other: &Self) -> Rat {
        if self.coeff.is_zero() {
            other.radicand.clone()
        } else if other.coeff.is_zero() {
            self.radicand.clone()
        } else {
            assert_eq!(
                self.radicand, other.radicand,
                "QuadExt arithmetic across different radicands"
            );
            self.radicand.clone()
        }
    }

    /// Exact sign: -1, 0, or 1. No floating point is involved.
    pub fn sign(&self) -> i32 {
        let sa = rat_sign(&self.rational);
        if self.coeff.is_zero() {
            return sa;
        }
        let sb = rat_sign(&self.coeff);
        if self.rational.is_zero() {
            return sb;
        }
        if sa == sb {
            return sa;
        }
        // Opposite-sign parts: |a| vs |b| sqrt(d) reduces to a^2 vs b^2 d.
        let a2 = &self.rational * &self.rational;
        let b2d = &self.coeff * &self.coeff * &self.radicand;
        match a2.cmp(&b2d) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            // a^2 == b^2 d would make sqrt(d) rational, which canonical
            // form rules out.
            Ordering::Equal => 0,
        }
    }

    pub fn is_positive(&self) -> bool {
        self.sign() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.sign() < 0
    }

    /// Compare against a rational exactly.
    pub fn cmp_rat(&self, r: &Rat) -> Ordering {
        let diff = self - &QuadExt::from_rat(r.clone());
        match diff.sign() {
            s if s < 0 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }

    /// Rational enclosure `[lo, hi]` of the value, width at most
    /// `|coeff| 2^-bits`.
    pub fn enclosure(&self, bits: u32) -> (Rat, Rat) {
        if self.coeff.is_zero() {
            return (self.rational.clone(), self.rational.clone());
        }
        let (tlo, thi) = sqrt_enclosure(&self.radicand, bits);
        if self.coeff.is_positive() {
            (
                &self.rational + &self.coeff * tlo,
                &self.rational + &self.coeff * thi,
            )
        } else {
            (
                &self.rational + &self.coeff * thi,
                &self.rational + &self.coeff * tlo,
            )
        }
    }

    /// Nearest-practical `f64` via a 160-bit enclosure midpoint.
    pub fn to_f64(&self) -> f64 {
        if self.coeff.is_zero() {
            return rat_to_f64(&self.rational);
        }
        let (lo, hi) = self.enclosure(160);
        rat_to_f64(&((lo + hi) / rat_i(2)))
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "QuadExt division by zero");
        // 1/(a + b sqrt(d)) = (a - b sqrt(d)) / (a^2 - b^2 d); the norm is
        // nonzero because sqrt(d) is irrational in canonical form.
        let norm = &self.rational * &self.rational - &self.coeff * &self.coeff * &self.radicand;
        QuadExt::new(
            &self.rational / &norm,
            -(&self.coeff) / norm,
            self.radicand.clone(),
        )
    }

    /// Galois conjugate `a - b sqrt(d)`.
    pub fn conjugate(&self) -> Self {
        QuadExt::new(
            self.rational.clone(),
            -self.coeff.clone(),
            self.radicand.clone(),
        )
    }
}

impl fmt::Debug for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeff.is_zero() {
            write!(f, "{}", self.rational)
        } else {
            write!(
                f,
                "{} + {}*sqrt({})",
                self.rational, self.coeff, self.radicand
            )
        }
    }
}

impl Add for &QuadExt {
    type Output = QuadExt;
    fn add(self, rhs: &QuadExt) -> QuadExt {
        let d = self.join_radicand(rhs);
        QuadExt::new(
            &self.rational + &rhs.rational,
            &self.coeff + &rhs.coeff,
            d,
        )
    }
}

impl Sub for &QuadExt {
    type Output = QuadExt;
    fn sub(self, rhs: &QuadExt) -> QuadExt {
        let d = self.join_radicand(rhs);
        QuadExt::new(
            &self.rational - &rhs.rational,
            &self.coeff - &rhs.coeff,
            d,
        )
    }
}

impl Mul for &QuadExt {
    type Output = QuadExt;
    fn mul(self, rhs: &QuadExt) -> QuadExt {
        let d = self.join_radicand(rhs);
        // (a1 + b1 s)(a2 + b2 s) = a1 a2 + b1 b2 d + (a1 b2 + a2 b1) s
        QuadExt::new(
            &self.rational * &rhs.rational + &self.coeff * &rhs.coeff * &d,
            &self.rational * &rhs.coeff + &rhs.rational * &self.coeff,
            d,
        )
    }
}

impl Div for &QuadExt {
    type Output = QuadExt;
    fn div(self, rhs: &QuadExt) -> QuadExt {
        self * &rhs.recip()
    }
}

impl Neg for &QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt::new(
            -self.rational.clone(),
            -self.coeff.clone(),
            self.radicand.clone(),
        )
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for QuadExt {
            type Output = QuadExt;
            fn $method(self, rhs: QuadExt) -> QuadExt {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&QuadExt> for QuadExt {
            type Output = QuadExt;
            fn $method(self, rhs: &QuadExt) -> QuadExt {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);
forward_owned_binop!(Div, div);

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        -&self
    }
}

/// Format a rational as `p/q` (or just `p` for integers).
pub fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// A parsed command-line rational, remembering how it arrived.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedRational {
    /// Exact value being used downstream.
    pub value: Rat,
    /// The original text when it was a decimal literal, for echoing the
    /// conversion back to the user.
    pub decimal_input: Option<String>,
    /// True when a decimal needed rounding to the nearest rational with
    /// denominator at most 10^6.
    pub approximated: bool,
}

/// Error from [`parse_rational`].
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal `{input}`: {reason}")]
pub struct RationalParseError {
    pub input: String,
    pub reason: String,
}

fn parse_err(input: &str, reason: &str) -> RationalParseError {
    RationalParseError {
        input: input.to_string(),
        reason: reason.to_string(),
    }
}

const MAX_DECIMAL_DEN: u64 = 1_000_000;

/// Parse `p/q`, an integer, or a decimal literal into an exact rational.
///
/// Fractions and integers are taken verbatim. Decimals are read exactly
/// (no `f64` round trip) and then, if the reduced denominator exceeds 10^6,
/// replaced by the nearest rational with denominator at most 10^6; the
/// substitution is flagged so front ends can echo it.
pub fn parse_rational(input: &str) -> Result<ParsedRational, RationalParseError> {
    let s = input.trim();
    if s.is_empty() {
        return Err(parse_err(input, "empty string"));
    }
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num
            .trim()
            .parse()
            .map_err(|_| parse_err(input, "numerator is not an integer"))?;
        let d: BigInt = den
            .trim()
            .parse()
            .map_err(|_| parse_err(input, "denominator is not an integer"))?;
        if d.is_zero() {
            return Err(parse_err(input, "denominator is zero"));
        }
        return Ok(ParsedRational {
            value: Rat::new(n, d),
            decimal_input: None,
            approximated: false,
        });
    }
    if !s.contains('.') {
        let n: BigInt = s
            .parse()
            .map_err(|_| parse_err(input, "not an integer, fraction, or decimal"))?;
        return Ok(ParsedRational {
            value: Rat::from_integer(n),
            decimal_input: None,
            approximated: false,
        });
    }
    // Decimal literal: optional sign, digits around a single point.
    let (sign, body) = match s.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, s.strip_prefix('+').unwrap_or(s)),
    };
    let (whole, frac) = body.split_once('.').unwrap();
    if frac.contains('.') {
        return Err(parse_err(input, "multiple decimal points"));
    }
    if whole.is_empty() && frac.is_empty() {
        return Err(parse_err(input, "no digits"));
    }
    if !whole.chars().all(|c| c.is_ascii_digit()) || !frac.chars().all(|c| c.is_ascii_digit()) {
        return Err(parse_err(input, "non-digit in decimal literal"));
    }
    let digits = format!("{whole}{frac}");
    let mantissa: BigInt = if digits.is_empty() {
        BigInt::zero()
    } else {
        digits.parse().unwrap()
    };
    let exact = Rat::new(mantissa * sign, BigInt::from(10u32).pow(frac.len() as u32));
    let max_den = BigInt::from(MAX_DECIMAL_DEN);
    if exact.denom() <= &max_den {
        return Ok(ParsedRational {
            value: exact,
            decimal_input: Some(s.to_string()),
            approximated: false,
        });
    }
    Ok(ParsedRational {
        value: best_approximation(&exact, &max_den),
        decimal_input: Some(s.to_string()),
        approximated: true,
    })
}

/// Best rational approximation to `t` with denominator at most `max_den`,
/// by the continued-fraction convergent/semiconvergent rule. Distances are
/// compared exactly; ties go to the smaller denominator.
pub fn best_approximation(t: &Rat, max_den: &BigInt) -> Rat {
    assert!(max_den >= &BigInt::one());
    if t.denom() <= max_den {
        return t.clone();
    }
    let mut num = t.numer().clone();
    let mut den = t.denom().clone();
    // Convergents p/q of the continued fraction of t.
    let mut p_prev = BigInt::one();
    let mut q_prev = BigInt::zero();
    let mut a = num.div_floor(&den);
    let mut p = a.clone();
    let mut q = BigInt::one();
    loop {
        let rem = &num - &a * &den;
        // t has finite expansion; the loop exits via the denominator bound
        // before rem hits zero because den(t) > max_den.
        debug_assert!(!rem.is_zero());
        num = std::mem::replace(&mut den, rem);
        a = num.div_floor(&den);
        let p_next = &a * &p + &p_prev;
        let q_next = &a * &q + &q_prev;
        if &q_next > max_den {
            // Best semiconvergent allowed by the bound, then compare with
            // the last full convergent.
            let steps = (max_den - &q_prev).div_floor(&q);
            let conv = Rat::new(p.clone(), q.clone());
            if steps.is_zero() {
                return conv;
            }
            let semi = Rat::new(&steps * &p + &p_prev, &steps * &q + &q_prev);
            let d_semi = (&semi - t).abs();
            let d_conv = (&conv - t).abs();
            return match d_semi.cmp(&d_conv) {
                Ordering::Less => semi,
                Ordering::Greater => conv,
                Ordering::Equal => {
                    if semi.denom() < conv.denom() {
                        semi
                    } else {
                        conv
                    }
                }
            };
        }
        p_prev = std::mem::replace(&mut p, p_next);
        q_prev = std::mem::replace(&mut q, q_next);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rat_to_f64_matches_native_in_range() {
        for (n, d) in [(1i64, 3i64), (-7, 2), (355, 113), (1, 1_000_000), (0, 5)] {
            let r = rat(n, d);
            assert_eq!(rat_to_f64(&r), n as f64 / d as f64);
        }
    }

    #[test]
    fn rat_to_f64_survives_huge_components() {
        // 2^4000 / (2^4000 + 1) is ~1 but overflows the naive conversion.
        let big: BigInt = BigInt::one() << 4000u32;
        let r = Rat::new(big.clone(), big + 1);
        let f = rat_to_f64(&r);
        assert!((f - 1.0).abs() < 1e-15, "got {f}");
        // Tiny but nonzero.
        let small = Rat::new(BigInt::one(), BigInt::one() << 4000u32);
        assert_eq!(rat_to_f64(&small), 0.0);
        let moderate = Rat::new(BigInt::one() << 100u32, (BigInt::one() << 200u32) + 7);
        assert!((rat_to_f64(&moderate) - 2.0f64.powi(-100)).abs() < 1e-45);
    }

    #[test]
    fn exact_sqrt_detects_squares() {
        assert_eq!(exact_sqrt(&rat(9, 25)), Some(rat(3, 5)));
        assert_eq!(exact_sqrt(&rat(2, 1)), None);
        assert_eq!(exact_sqrt(&rat(4, 2)), None);
        assert_eq!(exact_sqrt(&rat(0, 1)), Some(Rat::zero()));
        assert_eq!(exact_sqrt(&rat(-4, 1)), None);
    }

    #[test]
    fn sqrt_enclosure_brackets_truth() {
        for (n, d) in [(2i64, 1i64), (3, 4), (5, 7), (1, 3), (99, 100)] {
            let r = rat(n, d);
            for bits in [16u32, 64, 128] {
                let (lo, hi) = sqrt_enclosure(&r, bits);
                assert!(&lo * &lo <= r, "lo^2 > r for {n}/{d}");
                assert!(&hi * &hi >= r, "hi^2 < r for {n}/{d}");
                let width = &hi - &lo;
                let bound = Rat::new(BigInt::one(), BigInt::one() << bits);
                assert!(width <= bound, "width 2^-{bits} exceeded for {n}/{d}");
            }
        }
        // Perfect square: exact, zero width.
        let (lo, hi) = sqrt_enclosure(&rat(49, 64), 8);
        assert_eq!(lo, rat(7, 8));
        assert_eq!(hi, rat(7, 8));
    }

    #[test]
    fn quadext_field_axioms_spot_check() {
        // u = 1 + 2 sqrt(3), v = -2 + (1/2) sqrt(3)
        let u = QuadExt::new(rat_i(1), rat_i(2), rat_i(3));
        let v = QuadExt::new(rat_i(-2), rat(1, 2), rat_i(3));
        let prod = &u * &v;
        // (1)(-2) + (2)(1/2)(3) = 1; cross: (1)(1/2) + (-2)(2) = -7/2
        assert_eq!(prod.rational_part(), &rat_i(1));
        assert_eq!(prod.radical_coeff(), &rat(-7, 2));
        let back = &prod / &v;
        assert!((&back - &u).is_zero());
        let inv = u.recip();
        assert!((&(&u * &inv) - &QuadExt::one()).is_zero());
    }

    #[test]
    fn quadext_folds_perfect_squares() {
        // 1 + 2 sqrt(9/4) = 1 + 3 = 4, a rational.
        let v = QuadExt::new(rat_i(1), rat_i(2), rat(9, 4));
        assert!(v.is_rational());
        assert_eq!(v.as_rat(), Some(rat_i(4)));
    }

    #[test]
    fn quadext_normalizes_fractional_radicands() {
        // 2 + 2 sqrt(3/4) = 2 + sqrt(3).
        let a = QuadExt::new(rat_i(2), rat_i(2), rat(3, 4));
        let b = QuadExt::new(rat_i(2), rat_i(1), rat_i(3));
        assert_eq!(a, b);
        assert!((&a - &b).is_zero());
        // 5 sqrt(4/3) = (10/3) sqrt(3).
        let c = QuadExt::new(Rat::zero(), rat_i(5), rat(4, 3));
        assert_eq!(c.radicand(), &rat_i(3));
        assert_eq!(c.radical_coeff(), &rat(10, 3));
        // Coprime non-squares multiply: sqrt(2/3) = sqrt(6)/3.
        let d = QuadExt::new(Rat::zero(), rat_i(1), rat(2, 3));
        assert_eq!(d.radicand(), &rat_i(6));
        assert_eq!(d.radical_coeff(), &rat(1, 3));
    }

    #[test]
    fn quadext_sign_is_exact() {
        // 7 - 4 sqrt(3) > 0 since 49 > 48.
        let a = QuadExt::new(rat_i(7), rat_i(-4), rat_i(3));
        assert_eq!(a.sign(), 1);
        // 7 - 5 sqrt(2) < 0 since 49 < 50.
        let b = QuadExt::new(rat_i(7), rat_i(-5), rat_i(2));
        assert_eq!(b.sign(), -1);
        // -3 + 2 sqrt(2) < 0 since 9 > 8.
        let c = QuadExt::new(rat_i(-3), rat_i(2), rat_i(2));
        assert_eq!(c.sign(), -1);
        assert_eq!(QuadExt::zero().sign(), 0);
    }

    #[test]
    fn quadext_enclosure_and_f64() {
        let golden = QuadExt::new(rat(1, 2), rat(1, 2), rat_i(5));
        let (lo, hi) = golden.enclosure(96);
        let phi = (1.0 + 5.0f64.sqrt()) / 2.0;
        assert!(rat_to_f64(&lo) <= phi && phi <= rat_to_f64(&hi));
        assert!((golden.to_f64() - phi).abs() < 1e-15);
        // Negative coefficient flips the enclosure.
        let neg = QuadExt::new(rat_i(0), rat_i(-1), rat_i(2));
        let (lo, hi) = neg.enclosure(96);
        assert!(lo < hi);
        assert!(rat_to_f64(&lo) <= -(2.0f64.sqrt()));
    }

    #[test]
    fn parse_fraction_and_integer() {
        let p = parse_rational("3/5").unwrap();
        assert_eq!(p.value, rat(3, 5));
        assert_eq!(p.decimal_input, None);
        assert!(!p.approximated);
        assert_eq!(parse_rational(" -7 / 2 ").unwrap().value, rat(-7, 2));
        assert_eq!(parse_rational("4").unwrap().value, rat_i(4));
        assert!(parse_rational("3/0").is_err());
        assert!(parse_rational("").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("1.2.3").is_err());
    }

    #[test]
    fn parse_decimal_exact_and_rounded() {
        let p = parse_rational("0.6").unwrap();
        assert_eq!(p.value, rat(3, 5));
        assert_eq!(p.decimal_input.as_deref(), Some("0.6"));
        assert!(!p.approximated);
        // 0.8660254037844386 ~ sqrt(3)/2 needs den > 10^6, so it is rounded.
        let p = parse_rational("0.8660254037844386").unwrap();
        assert!(p.approximated);
        assert!(p.value.denom() <= &BigInt::from(1_000_000u32));
        let err = rat_to_f64(&p.value) - 0.866_025_403_784_438_6;
        assert!(err.abs() < 1e-12, "approximation off by {err}");
    }

    #[test]
    fn best_approximation_classics() {
        // pi to many digits; with den <= 113 the best approximation is 355/113.
        let pi = parse_rational("3.14159265358979323846").unwrap();
        let approx = best_approximation(&pi.value, &BigInt::from(113));
        assert_eq!(approx, rat(355, 113));
        let approx = best_approximation(&pi.value, &BigInt::from(10));
        assert_eq!(approx, rat(22, 7));
        // Already-representable values pass through.
        assert_eq!(best_approximation(&rat(3, 5), &BigInt::from(10)), rat(3, 5));
    }

    #[test]
    fn precision_bits_default() {
        // Do not mutate the environment here; parallel tests share it.
        if std::env::var(PRECISION_BITS_VAR).is_err() {
            assert_eq!(precision_bits(), DEFAULT_PRECISION_BITS);
        }
    }
}
