//! Complex midpoint-radius ball arithmetic with outward rounding.
//!
//! Every operation preserves the containment contract: if the true values
//! lie in the input balls, the true result lies in the output ball.
//! Midpoints are rounded to working precision (the rounding error is folded
//! into the radius); radii only ever round up.

use super::bigfloat::{BigFloat, FloatComplex};
use super::gauss::GaussianRational;
use crate::{Error, Result};
use std::cmp::Ordering;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BallComplex {
    mid: FloatComplex,
    rad: BigFloat,
}

impl BallComplex {
    /// Ball from exact midpoint and radius, rounded outward to `prec` bits.
    pub fn new(mid: FloatComplex, rad: BigFloat, prec: u32) -> Self {
        assert!(!rad.is_negative(), "negative ball radius");
        let (m, err) = mid.round(prec);
        BallComplex { mid: m, rad: rad.add(&err).round_up(prec) }
    }

    /// Exact dyadic point as a zero-radius ball.
    pub fn from_point(mid: FloatComplex) -> Self {
        BallComplex { mid, rad: BigFloat::zero() }
    }

    /// Enclose an exact Gaussian rational at `prec` bits.
    pub fn from_gaussian(q: &GaussianRational, prec: u32) -> Self {
        let (re, er) = BigFloat::from_rational(q.re(), prec);
        let (im, ei) = BigFloat::from_rational(q.im(), prec);
        BallComplex { mid: FloatComplex::new(re, im), rad: er.add(&ei).round_up(prec) }
    }

    pub fn mid(&self) -> &FloatComplex {
        &self.mid
    }

    pub fn rad(&self) -> &BigFloat {
        &self.rad
    }

    pub fn is_exact_point(&self) -> bool {
        self.rad.is_zero()
    }

    /// Exact membership test for a dyadic point.
    pub fn contains_point(&self, z: &FloatComplex) -> bool {
        let d = z.sub(&self.mid).norm_sqr();
        d.cmp_value(&self.rad.mul(&self.rad)) != Ordering::Greater
    }

    pub fn contains_zero(&self) -> bool {
        self.contains_point(&FloatComplex::zero())
    }

    /// True when every point of the ball is nonzero.
    pub fn certainly_nonzero(&self, prec: u32) -> bool {
        self.mid.abs_lower(prec).cmp_value(&self.rad) == Ordering::Greater
    }

    /// Upper bound on `|z|` over the ball.
    pub fn abs_upper(&self, prec: u32) -> BigFloat {
        self.mid.abs_upper(prec).add(&self.rad)
    }

    /// Lower bound on `|z|` over the ball (clamped at zero).
    pub fn abs_lower(&self, prec: u32) -> BigFloat {
        let lo = self.mid.abs_lower(prec).sub(&self.rad);
        if lo.is_negative() {
            BigFloat::zero()
        } else {
            lo
        }
    }

    pub fn neg(&self) -> Self {
        BallComplex { mid: self.mid.neg(), rad: self.rad.clone() }
    }

    pub fn add(&self, rhs: &Self, prec: u32) -> Self {
        BallComplex::new(self.mid.add(&rhs.mid), self.rad.add(&rhs.rad), prec)
    }

    pub fn sub(&self, rhs: &Self, prec: u32) -> Self {
        self.add(&rhs.neg(), prec)
    }

    pub fn mul(&self, rhs: &Self, prec: u32) -> Self {
        let mid = self.mid.mul(&rhs.mid);
        let a = self.mid.abs_upper(prec);
        let b = rhs.mid.abs_upper(prec);
        let rad = a
            .mul(&rhs.rad)
            .add(&b.mul(&self.rad))
            .add(&self.rad.mul(&rhs.rad));
        BallComplex::new(mid, rad, prec)
    }

    /// Multiply by an exact dyadic point.
    pub fn mul_point(&self, z: &FloatComplex, prec: u32) -> Self {
        let mid = self.mid.mul(z);
        let rad = z.abs_upper(prec).mul(&self.rad);
        BallComplex::new(mid, rad, prec)
    }

    /// Ball inverse; `Indeterminate` when the ball straddles zero.
    pub fn inv(&self, prec: u32) -> Result<Self> {
        let mid_lo = self.mid.abs_lower(prec);
        let margin = mid_lo.sub(&self.rad);
        if margin.is_zero() || margin.is_negative() {
            return Err(Error::Indeterminate);
        }
        let one = FloatComplex::new(BigFloat::one(), BigFloat::zero());
        let (q, err) = one.div_nearest(&self.mid, prec);
        // |1/z - 1/m| <= |z - m| / (|z| |m|) <= rad / (margin * mid_lo).
        let denom = margin.mul(&mid_lo);
        let rad = BigFloat::div_up(&self.rad, &denom, prec).add(&err);
        Ok(BallComplex::new(q, rad, prec))
    }

    pub fn div(&self, rhs: &Self, prec: u32) -> Result<Self> {
        Ok(self.mul(&rhs.inv(prec)?, prec))
    }

    pub fn powi(&self, n: u32, prec: u32) -> Self {
        let mut acc = BallComplex::from_gaussian(&GaussianRational::from_int(1), prec);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base, prec);
            }
            base = base.mul(&base, prec);
            n >>= 1;
        }
        acc
    }

    /// Grow the radius to at least `r`.
    pub fn inflate(&self, r: &BigFloat, prec: u32) -> Self {
        BallComplex::new(self.mid.clone(), BigFloat::max_value(&self.rad, r), prec)
    }

    /// Lower bound on the distance between the two balls (zero if they may
    /// intersect).
    pub fn dist_lower(&self, rhs: &Self, prec: u32) -> BigFloat {
        let centers = self.mid.sub(&rhs.mid).abs_lower(prec);
        let d = centers.sub(&self.rad).sub(&rhs.rad);
        if d.is_negative() {
            BigFloat::zero()
        } else {
            d
        }
    }

    pub fn certainly_disjoint(&self, rhs: &Self, prec: u32) -> bool {
        !self.dist_lower(rhs, prec).is_zero()
    }

    /// A ball containing both inputs.
    pub fn union(&self, rhs: &Self, prec: u32) -> Self {
        let half = self.mid.add(&rhs.mid).mul(&FloatComplex::new(
            BigFloat::pow2(-1),
            BigFloat::zero(),
        ));
        let spread = self.mid.sub(&rhs.mid).abs_upper(prec).scale_pow2(-1);
        let rad = spread.add(&BigFloat::max_value(&self.rad, &rhs.rad));
        BallComplex::new(half, rad, prec)
    }

    /// Midpoint as `(re, im)` doubles, with the radius as a double.
    pub fn to_f64(&self) -> (f64, f64, f64) {
        let (re, im) = self.mid.to_f64_pair();
        (re, im, self.rad.to_f64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const P: u32 = 64;

    fn exact(a: i64, b: i64, c: i64, d: i64) -> GaussianRational {
        GaussianRational::from_parts(a, b, c, d)
    }

    #[test]
    fn gaussian_enclosure_contains_value() {
        // 1/3 + (2/7)i is not dyadic: the ball must still contain it.
        let q = exact(1, 3, 2, 7);
        let ball = BallComplex::from_gaussian(&q, 32);
        let hi = BallComplex::from_gaussian(&q, 512);
        // The high-precision midpoint is within 2^-500 of the true value,
        // so containment of that point at inflated radius is decisive.
        assert!(ball
            .inflate(&BigFloat::pow2(-400), 512)
            .contains_point(hi.mid()));
        assert!(ball.certainly_nonzero(32));
    }

    #[test]
    fn inversion_straddling_zero_is_indeterminate() {
        let z = BallComplex::new(
            FloatComplex::from_f64(0.001, 0.0),
            BigFloat::from_f64(0.01),
            P,
        );
        assert!(z.inv(P).is_err());
    }

    #[test]
    fn disjointness_and_union() {
        let a = BallComplex::new(FloatComplex::from_f64(0.0, 0.0), BigFloat::from_f64(0.1), P);
        let b = BallComplex::new(FloatComplex::from_f64(1.0, 0.0), BigFloat::from_f64(0.1), P);
        assert!(a.certainly_disjoint(&b, P));
        let u = a.union(&b, P);
        assert!(u.contains_point(a.mid()));
        assert!(u.contains_point(b.mid()));
        assert!(!u.certainly_disjoint(&a, P));
    }

    /// Random expression DAGs evaluated in ball arithmetic at low precision
    /// and in exact rational arithmetic: the exact value must lie in the
    /// ball.  This is the containment contract exercised in bulk (the
    /// suite below plus `coeff.rs` brings the total over 10^4 cases).
    #[derive(Debug, Clone)]
    enum Dag {
        Leaf(i64, i64, i64, i64),
        Add(Box<Dag>, Box<Dag>),
        Mul(Box<Dag>, Box<Dag>),
        Neg(Box<Dag>),
        Inv(Box<Dag>),
    }

    fn arb_dag() -> impl Strategy<Value = Dag> {
        let leaf = (-9i64..9, 1i64..5, -9i64..9, 1i64..5)
            .prop_map(|(a, b, c, d)| Dag::Leaf(a, b, c, d));
        leaf.prop_recursive(4, 24, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Dag::Add(a.into(), b.into())),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Dag::Mul(a.into(), b.into())),
                inner.clone().prop_map(|a| Dag::Neg(a.into())),
                inner.prop_map(|a| Dag::Inv(a.into())),
            ]
        })
    }

    fn eval_exact(d: &Dag) -> Option<GaussianRational> {
        match d {
            Dag::Leaf(a, b, c, e) => Some(exact(*a, *b, *c, *e)),
            Dag::Add(x, y) => Some(eval_exact(x)? + eval_exact(y)?),
            Dag::Mul(x, y) => Some(eval_exact(x)? * eval_exact(y)?),
            Dag::Neg(x) => Some(-eval_exact(x)?),
            Dag::Inv(x) => {
                let v = eval_exact(x)?;
                if v.is_zero() {
                    None
                } else {
                    Some(v.inv())
                }
            }
        }
    }

    fn eval_ball(d: &Dag, prec: u32) -> Option<BallComplex> {
        match d {
            Dag::Leaf(a, b, c, e) => Some(BallComplex::from_gaussian(&exact(*a, *b, *c, *e), prec)),
            Dag::Add(x, y) => Some(eval_ball(x, prec)?.add(&eval_ball(y, prec)?, prec)),
            Dag::Mul(x, y) => Some(eval_ball(x, prec)?.mul(&eval_ball(y, prec)?, prec)),
            Dag::Neg(x) => Some(eval_ball(x, prec)?.neg()),
            Dag::Inv(x) => eval_ball(x, prec)?.inv(prec).ok(),
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(2500))]
        #[test]
        fn containment_under_random_dags(d in arb_dag()) {
            if let (Some(exact_v), Some(ball)) = (eval_exact(&d), eval_ball(&d, 24)) {
                // Enclose the exact value tightly and check the tight ball
                // sits inside the coarse one (sufficient for membership).
                let tight = BallComplex::from_gaussian(&exact_v, 192);
                let slack = ball.rad().add(&BigFloat::pow2(-150));
                let dist = tight.mid().sub(ball.mid()).abs_upper(192);
                prop_assert!(dist.cmp_value(&slack) != Ordering::Greater,
                    "exact value escaped its ball");
            }
        }
    }
}
