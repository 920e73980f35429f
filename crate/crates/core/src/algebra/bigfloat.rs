//! Arbitrary-precision dyadic floats `mantissa * 2^exp` and the complex
//! pairs built from them.
//!
//! Addition, subtraction, and multiplication are *exact* (mantissas grow);
//! precision only enters through explicit rounding, division, and square
//! roots, each of which either returns a rigorous error bound or rounds in a
//! caller-chosen direction.  That discipline is what makes the ball layer
//! above this one sound.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;

/// A dyadic float.  Invariant: `mantissa` is zero (with `exp == 0`) or odd,
/// so representations are canonical and `Eq` is value equality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BigFloat {
    mantissa: BigInt,
    exp: i64,
}

impl BigFloat {
    fn normalized(mut mantissa: BigInt, mut exp: i64) -> Self {
        if mantissa.is_zero() {
            return BigFloat { mantissa, exp: 0 };
        }
        let tz = mantissa.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            mantissa >>= tz;
            exp += tz as i64;
        }
        BigFloat { mantissa, exp }
    }

    pub fn zero() -> Self {
        BigFloat { mantissa: BigInt::zero(), exp: 0 }
    }

    pub fn one() -> Self {
        BigFloat::from_i64(1)
    }

    pub fn from_i64(n: i64) -> Self {
        BigFloat::normalized(BigInt::from(n), 0)
    }

    pub fn from_bigint(n: BigInt) -> Self {
        BigFloat::normalized(n, 0)
    }

    /// `2^e`.
    pub fn pow2(e: i64) -> Self {
        BigFloat { mantissa: BigInt::from(1), exp: e }
    }

    /// Exact conversion: every finite `f64` is dyadic.  Panics on NaN/inf.
    pub fn from_f64(x: f64) -> Self {
        assert!(x.is_finite(), "BigFloat::from_f64 needs a finite value");
        if x == 0.0 {
            return BigFloat::zero();
        }
        let bits = x.to_bits();
        let sign = if bits >> 63 == 1 { -1 } else { 1 };
        let raw_exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (mant, exp) = if raw_exp == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), raw_exp - 1075)
        };
        BigFloat::normalized(BigInt::from(sign) * BigInt::from(mant), exp)
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mantissa.is_negative()
    }

    /// Mantissa bit length.
    pub fn bits(&self) -> u64 {
        self.mantissa.bits()
    }

    pub fn abs(&self) -> Self {
        BigFloat { mantissa: self.mantissa.abs(), exp: self.exp }
    }

    pub fn neg(&self) -> Self {
        BigFloat { mantissa: -&self.mantissa, exp: self.exp }
    }

    /// Exact scaling by `2^k`.
    pub fn scale_pow2(&self, k: i64) -> Self {
        if self.is_zero() {
            self.clone()
        } else {
            BigFloat { mantissa: self.mantissa.clone(), exp: self.exp + k }
        }
    }

    /// Smallest `e` with `|self| <= 2^e`; `None` for zero.
    pub fn log2_upper(&self) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        let b = self.bits() as i64;
        // |mantissa| <= 2^bits - 1 < 2^bits, and |mantissa| >= 2^(bits-1).
        Some(self.exp + b)
    }

    /// Largest `e` with `2^e <= |self|`; `None` for zero.
    pub fn log2_lower(&self) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        Some(self.exp + self.bits() as i64 - 1)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let (lo, hi) = if self.exp <= rhs.exp { (self, rhs) } else { (rhs, self) };
        let shift = (hi.exp - lo.exp) as u64;
        // Exact alignment; mantissa growth is bounded by callers rounding.
        let aligned = &hi.mantissa << shift;
        BigFloat::normalized(aligned + &lo.mantissa, lo.exp)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return BigFloat::zero();
        }
        BigFloat::normalized(&self.mantissa * &rhs.mantissa, self.exp + rhs.exp)
    }

    pub fn cmp_value(&self, rhs: &Self) -> Ordering {
        let diff = self.sub(rhs);
        if diff.is_zero() {
            Ordering::Equal
        } else if diff.is_negative() {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }

    pub fn max_value(a: &Self, b: &Self) -> Self {
        if a.cmp_value(b) == Ordering::Less { b.clone() } else { a.clone() }
    }

    /// Round to `prec` mantissa bits, toward zero.  Result magnitude never
    /// exceeds the input's.  (`BigInt >>` floors, which for negative values
    /// rounds away from zero, so all three rounders work on magnitudes.)
    pub fn round_down(&self, prec: u32) -> Self {
        let bits = self.bits();
        if bits <= prec as u64 {
            return self.clone();
        }
        let drop = bits - prec as u64;
        let mag = self.mantissa.abs() >> drop;
        let m = if self.mantissa.is_negative() { -mag } else { mag };
        BigFloat::normalized(m, self.exp + drop as i64)
    }

    /// Round to `prec` mantissa bits, away from zero.  Result magnitude is
    /// at least the input's.
    pub fn round_up(&self, prec: u32) -> Self {
        let bits = self.bits();
        if bits <= prec as u64 {
            return self.clone();
        }
        let drop = bits - prec as u64;
        let truncated = self.mantissa.abs() >> drop;
        let lost = self.mantissa.abs() - (&truncated << drop);
        let mag = if lost.is_zero() { truncated } else { truncated + 1 };
        let m = if self.mantissa.is_negative() { -mag } else { mag };
        BigFloat::normalized(m, self.exp + drop as i64)
    }

    /// Round to roughly `prec` mantissa bits (nearest, half away from
    /// zero).  Returns the rounded value and a bound on `|self - rounded|`.
    pub fn round_nearest(&self, prec: u32) -> (Self, Self) {
        let bits = self.bits();
        if bits <= prec as u64 {
            return (self.clone(), BigFloat::zero());
        }
        let drop = bits - prec as u64;
        let truncated = self.mantissa.abs() >> drop;
        let lost = self.mantissa.abs() - (&truncated << drop);
        let half = BigInt::from(1) << (drop - 1);
        let mag = if lost >= half { truncated + 1 } else { truncated };
        let rounded = if self.mantissa.is_negative() { -mag } else { mag };
        let err = BigFloat::pow2(self.exp + drop as i64 - 1);
        (BigFloat::normalized(rounded, self.exp + drop as i64), err)
    }

    /// Upper bound on `a / b` for `a >= 0`, `b > 0`, correct to about
    /// `prec` bits.
    pub fn div_up(a: &Self, b: &Self, prec: u32) -> Self {
        assert!(!b.is_zero(), "division by zero BigFloat");
        assert!(!a.is_negative() && !b.is_negative(), "div_up wants non-negative inputs");
        if a.is_zero() {
            return BigFloat::zero();
        }
        let shift = prec as u64 + 2 + b.bits();
        let num = &a.mantissa << shift;
        let (q, r) = num.div_rem(&b.mantissa);
        let q = if r.is_zero() { q } else { q + 1 };
        BigFloat::normalized(q, a.exp - b.exp - shift as i64)
    }

    /// Lower bound on `a / b` for `a >= 0`, `b > 0`.
    pub fn div_down(a: &Self, b: &Self, prec: u32) -> Self {
        assert!(!b.is_zero(), "division by zero BigFloat");
        assert!(!a.is_negative() && !b.is_negative(), "div_down wants non-negative inputs");
        if a.is_zero() {
            return BigFloat::zero();
        }
        let shift = prec as u64 + 2 + b.bits();
        let num = &a.mantissa << shift;
        let q = num / &b.mantissa;
        BigFloat::normalized(q, a.exp - b.exp - shift as i64)
    }

    /// Signed division with an error bound: `(q, err)` with
    /// `|a/b - q| <= err`.
    pub fn div_nearest(a: &Self, b: &Self, prec: u32) -> (Self, Self) {
        assert!(!b.is_zero(), "division by zero BigFloat");
        if a.is_zero() {
            return (BigFloat::zero(), BigFloat::zero());
        }
        let shift = prec as u64 + 2 + b.bits();
        let num = &a.mantissa << shift;
        let q = num / &b.mantissa; // truncation toward zero
        let exp = a.exp - b.exp - shift as i64;
        (BigFloat::normalized(q, exp), BigFloat::pow2(exp))
    }

    /// Upper bound on `sqrt(a)` for `a >= 0`, correct to about `prec` bits.
    pub fn sqrt_up(a: &Self, prec: u32) -> Self {
        assert!(!a.is_negative(), "sqrt of a negative BigFloat");
        if a.is_zero() {
            return BigFloat::zero();
        }
        let (m, e) = Self::sqrt_aligned(a, prec);
        let s = m.sqrt();
        let s = if &s * &s == m { s } else { s + 1 };
        BigFloat::normalized(s, e)
    }

    /// Lower bound on `sqrt(a)` for `a >= 0`.
    pub fn sqrt_down(a: &Self, prec: u32) -> Self {
        assert!(!a.is_negative(), "sqrt of a negative BigFloat");
        if a.is_zero() {
            return BigFloat::zero();
        }
        let (m, e) = Self::sqrt_aligned(a, prec);
        BigFloat::normalized(m.sqrt(), e)
    }

    /// Shift `a` so its exponent is even and the mantissa has at least
    /// `2*prec + 2` bits; returns `(mantissa, exp/2)`.
    fn sqrt_aligned(a: &Self, prec: u32) -> (BigInt, i64) {
        let want = 2 * prec as u64 + 2;
        let bits = a.bits();
        let mut extra = want.saturating_sub(bits) as i64 + 2;
        if (a.exp - extra) % 2 != 0 {
            extra += 1;
        }
        (&a.mantissa << extra as u64, (a.exp - extra) / 2)
    }

    /// Nearest `f64` (saturating to infinities on overflow).
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.bits();
        let (top, top_exp) = if bits > 64 {
            let drop = bits - 64;
            ((&self.mantissa >> drop).to_i128().unwrap(), self.exp + drop as i64)
        } else {
            (self.mantissa.to_i128().unwrap(), self.exp)
        };
        (top as f64) * (top_exp as f64).exp2()
    }

    /// Convert a rational to a float with an error bound.
    pub fn from_rational(q: &BigRational, prec: u32) -> (Self, Self) {
        let num = BigFloat::from_bigint(q.numer().clone());
        let den = BigFloat::from_bigint(q.denom().clone());
        let (v, e) = BigFloat::div_nearest(&num, &den, prec);
        (v, e)
    }

    /// Exact rational value (for tests and exact cross-checks).
    pub fn to_rational(&self) -> BigRational {
        let base = BigRational::from_integer(self.mantissa.clone());
        if self.exp >= 0 {
            base * BigRational::from_integer(BigInt::from(1) << self.exp as u64)
        } else {
            base / BigRational::from_integer(BigInt::from(1) << (-self.exp) as u64)
        }
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e}", self.to_f64())
    }
}

/// A complex number with exact dyadic parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FloatComplex {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl FloatComplex {
    pub fn new(re: BigFloat, im: BigFloat) -> Self {
        FloatComplex { re, im }
    }

    pub fn zero() -> Self {
        FloatComplex { re: BigFloat::zero(), im: BigFloat::zero() }
    }

    pub fn from_f64(re: f64, im: f64) -> Self {
        FloatComplex { re: BigFloat::from_f64(re), im: BigFloat::from_f64(im) }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        FloatComplex { re: self.re.add(&rhs.re), im: self.im.add(&rhs.im) }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        FloatComplex { re: self.re.sub(&rhs.re), im: self.im.sub(&rhs.im) }
    }

    pub fn neg(&self) -> Self {
        FloatComplex { re: self.re.neg(), im: self.im.neg() }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        FloatComplex {
            re: self.re.mul(&rhs.re).sub(&self.im.mul(&rhs.im)),
            im: self.re.mul(&rhs.im).add(&self.im.mul(&rhs.re)),
        }
    }

    pub fn conj(&self) -> Self {
        FloatComplex { re: self.re.clone(), im: self.im.neg() }
    }

    /// Exact `re^2 + im^2`.
    pub fn norm_sqr(&self) -> BigFloat {
        self.re.mul(&self.re).add(&self.im.mul(&self.im))
    }

    /// Upper bound on the modulus.
    pub fn abs_upper(&self, prec: u32) -> BigFloat {
        BigFloat::sqrt_up(&self.norm_sqr(), prec)
    }

    /// Lower bound on the modulus.
    pub fn abs_lower(&self, prec: u32) -> BigFloat {
        BigFloat::sqrt_down(&self.norm_sqr(), prec)
    }

    /// Round both parts to `prec` bits; returns the rounded value and a
    /// bound on the modulus of the difference.
    pub fn round(&self, prec: u32) -> (Self, BigFloat) {
        let (re, er) = self.re.round_nearest(prec);
        let (im, ei) = self.im.round_nearest(prec);
        (FloatComplex { re, im }, er.add(&ei))
    }

    /// Approximate division with a rigorous error bound on the modulus of
    /// the defect: `(q, err)` with `|self/rhs - q| <= err`.  `rhs` must be
    /// nonzero.
    pub fn div_nearest(&self, rhs: &Self, prec: u32) -> (Self, BigFloat) {
        let n = rhs.norm_sqr();
        assert!(!n.is_zero(), "division by zero FloatComplex");
        let num = self.mul(&rhs.conj());
        let (re, er) = BigFloat::div_nearest(&num.re, &n, prec);
        let (im, ei) = BigFloat::div_nearest(&num.im, &n, prec);
        (FloatComplex { re, im }, er.add(&ei))
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}
