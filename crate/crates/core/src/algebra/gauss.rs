//! The exact field `Q(i)` of Gaussian rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

/// An element `re + im*i` of `Q(i)`, both parts kept reduced by
/// `BigRational`.  Ordering is lexicographic on `(re, im)`; it is the tie
/// order used whenever coefficients must be ranked, not a field order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct GaussianRational {
    re: BigRational,
    im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_rational(re: BigRational) -> Self {
        GaussianRational { re, im: BigRational::zero() }
    }

    /// Small-integer constructor, mostly for tests and literals.
    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// `a/b + (c/d)i` from four machine integers; `b`, `d` must be nonzero.
    pub fn from_parts(a: i64, b: i64, c: i64, d: i64) -> Self {
        GaussianRational {
            re: BigRational::new(BigInt::from(a), BigInt::from(b)),
            im: BigRational::new(BigInt::from(c), BigInt::from(d)),
        }
    }

    pub fn i() -> Self {
        GaussianRational { re: BigRational::zero(), im: BigRational::one() }
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    /// True when the imaginary part vanishes.
    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianRational { re: self.re.clone(), im: -self.im.clone() }
    }

    /// The field norm `re^2 + im^2` (a non-negative rational).
    pub fn norm(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse; panics on zero (callers check first).
    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero in Q(i)");
        let n = self.norm();
        GaussianRational { re: &self.re / &n, im: -&self.im / &n }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = GaussianRational::from_int(1);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// True when both parts are integers (an element of `Z[i]`).
    pub fn is_gaussian_integer(&self) -> bool {
        self.re.is_integer() && self.im.is_integer()
    }

    /// Render without the outer parentheses used inside polynomials:
    /// `3`, `-1/2`, `i`, `2/3 i`, `1/3+2/3 i`, `1/2-i`.
    pub fn to_display_string(&self) -> String {
        fn rat(r: &BigRational) -> String {
            if r.is_integer() {
                r.numer().to_string()
            } else {
                format!("{}/{}", r.numer(), r.denom())
            }
        }
        if self.im.is_zero() {
            return rat(&self.re);
        }
        let im_part = if self.im.is_one() {
            "i".to_string()
        } else if (-&self.im).is_one() {
            "-i".to_string()
        } else {
            format!("{} i", rat(&self.im))
        };
        if self.re.is_zero() {
            return im_part;
        }
        if self.im.is_negative() {
            // im_part already carries the sign.
            if im_part.starts_with('-') {
                format!("{}{}", rat(&self.re), im_part)
            } else {
                format!("{}-{}", rat(&self.re), im_part)
            }
        } else {
            format!("{}+{}", rat(&self.re), im_part)
        }
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_display_string())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: GaussianRational) -> GaussianRational {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: &GaussianRational) -> GaussianRational {
                (&self).$method(rhs)
            }
        }
    };
}

impl Add<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}
forward_binop!(Add, add);

impl Sub<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}
forward_binop!(Sub, sub);

impl Mul<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}
forward_binop!(Mul, mul);

impl Div<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn div(self, rhs: &GaussianRational) -> GaussianRational {
        self * &rhs.inv()
    }
}
forward_binop!(Div, div);

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: -&self.re, im: -&self.im }
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        -&self
    }
}

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: &GaussianRational) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, rhs: &GaussianRational) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&GaussianRational> for GaussianRational {
    fn mul_assign(&mut self, rhs: &GaussianRational) {
        *self = &*self * rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gq(a: i64, b: i64, c: i64, d: i64) -> GaussianRational {
        GaussianRational::from_parts(a, b, c, d)
    }

    #[test]
    fn basic_arithmetic() {
        let one = GaussianRational::from_int(1);
        let i = GaussianRational::i();
        assert_eq!(&i * &i, -&one);
        let z = gq(1, 3, 2, 3);
        let w = &z * &z.inv();
        assert!(w.is_one());
        assert_eq!(z.conj().norm(), z.norm());
    }

    #[test]
    fn display_forms() {
        assert_eq!(gq(3, 1, 0, 1).to_display_string(), "3");
        assert_eq!(gq(-1, 2, 0, 1).to_display_string(), "-1/2");
        assert_eq!(gq(0, 1, 1, 1).to_display_string(), "i");
        assert_eq!(gq(0, 1, 2, 3).to_display_string(), "2/3 i");
        assert_eq!(gq(1, 3, 2, 3).to_display_string(), "1/3+2/3 i");
        assert_eq!(gq(1, 2, -1, 1).to_display_string(), "1/2-i");
        assert_eq!(gq(1, 1, -2, 1).to_display_string(), "1-2 i");
    }

    fn arb_gauss() -> impl Strategy<Value = GaussianRational> {
        (-20i64..20, 1i64..8, -20i64..20, 1i64..8).prop_map(|(a, b, c, d)| gq(a, b, c, d))
    }

    proptest! {
        #[test]
        fn field_axioms(a in arb_gauss(), b in arb_gauss(), c in arb_gauss()) {
            let left = (&a + &b) + &c;
            let right = &a + &(&b + &c);
            prop_assert_eq!(&left, &right);
            let lhs = &a * &(&b + &c);
            let rhs = &(&a * &b) + &(&a * &c);
            prop_assert_eq!(&lhs, &rhs);
            prop_assert_eq!(&(&a * &b), &(&b * &a));
            if !a.is_zero() {
                let q = &(&a * &b) / &a;
                prop_assert_eq!(&q, &b);
            }
        }

        #[test]
        fn norm_multiplicative(a in arb_gauss(), b in arb_gauss()) {
            prop_assert_eq!((&a * &b).norm(), a.norm() * b.norm());
        }
    }
}
