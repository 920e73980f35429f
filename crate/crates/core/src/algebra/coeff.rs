//! The pipeline's coefficient type: exact Gaussian rationals, or certified
//! balls optionally backed by algebraic witnesses.
//!
//! Arithmetic stays exact as long as both operands are exact, and stays
//! *witnessed* (hence exactly decidable) as long as both operands are
//! expressions in the same algebraic root.  Otherwise values degrade to
//! plain balls, where zero tests can only certify nonzeroness and equality
//! may come back `Indeterminate`.  Equality of two witnessed values over
//! different roots is still decided exactly, through resultant
//! characteristic polynomials.

use super::algnum::{eval_gpoly_ball, same_root, unique_root_inside, Witness};
use super::ball::BallComplex;
use super::bigfloat::BigFloat;
use super::gauss::GaussianRational;
use super::unipoly::GPoly;
use crate::ctx::Ctx;
use crate::{Error, Result};
use std::cmp::Ordering;
use std::fmt;

/// A coefficient: exact or certified.
#[derive(Debug, Clone)]
pub enum CoeffValue {
    Exact(GaussianRational),
    Certified(Certified),
}

/// A certified value: a rigorous enclosure, plus an optional one-level
/// algebraic witness that restores exact decisions.
#[derive(Debug, Clone)]
pub struct Certified {
    ball: BallComplex,
    witness: Option<Witness>,
}

impl Certified {
    pub fn ball(&self) -> &BallComplex {
        &self.ball
    }

    pub fn witness(&self) -> Option<&Witness> {
        self.witness.as_ref()
    }
}

impl CoeffValue {
    pub fn zero() -> Self {
        CoeffValue::Exact(GaussianRational::default())
    }

    pub fn one() -> Self {
        CoeffValue::Exact(GaussianRational::from_int(1))
    }

    pub fn from_int(n: i64) -> Self {
        CoeffValue::Exact(GaussianRational::from_int(n))
    }

    /// Wrap a ball with no witness.
    pub fn from_ball(ball: BallComplex) -> Self {
        CoeffValue::Certified(Certified { ball, witness: None })
    }

    /// Wrap a witnessed value; collapses to `Exact` when the reduced
    /// expression is constant.
    pub fn from_witness(w: Witness, ball: BallComplex) -> Self {
        match w.as_exact() {
            Some(q) => CoeffValue::Exact(q),
            None => CoeffValue::Certified(Certified { ball, witness: Some(w) }),
        }
    }

    pub fn as_exact(&self) -> Option<&GaussianRational> {
        match self {
            CoeffValue::Exact(q) => Some(q),
            CoeffValue::Certified(_) => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, CoeffValue::Exact(_))
    }

    /// Cheap, context-free zero check: true only when zero is certain.
    pub fn is_provably_zero(&self) -> bool {
        match self {
            CoeffValue::Exact(q) => q.is_zero(),
            CoeffValue::Certified(c) => match &c.witness {
                Some(w) => w.expr().is_zero(),
                None => c.ball.is_exact_point() && c.ball.contains_zero(),
            },
        }
    }

    /// Rigorous enclosure at roughly `2^-prec` radius where refinable.
    /// Plain balls are returned as stored (their radius is what it is).
    pub fn enclosure(&self, prec: u32, ctx: &Ctx) -> Result<BallComplex> {
        match self {
            CoeffValue::Exact(q) => Ok(BallComplex::from_gaussian(q, prec.max(ctx.bits))),
            CoeffValue::Certified(c) => match &c.witness {
                Some(w) => w.enclosure(prec, ctx),
                None => Ok(c.ball.clone()),
            },
        }
    }

    /// Decide `self == 0`.  Exact and witnessed values always decide;
    /// unwitnessed balls decide only nonzeroness.
    pub fn is_zero(&self, ctx: &Ctx) -> Result<bool> {
        match self {
            CoeffValue::Exact(q) => Ok(q.is_zero()),
            CoeffValue::Certified(c) => match &c.witness {
                Some(w) => w.is_zero(ctx),
                None => {
                    if c.ball.certainly_nonzero(ctx.bits) {
                        Ok(false)
                    } else {
                        Err(Error::Indeterminate)
                    }
                }
            },
        }
    }

    fn to_witness_on(&self, other: &Witness) -> Option<Witness> {
        match self {
            CoeffValue::Exact(q) => {
                Some(Witness::new(other.root().clone(), GPoly::constant(q.clone())))
            }
            CoeffValue::Certified(c) => {
                let w = c.witness.as_ref()?;
                if w.shares_root(other) {
                    Some(w.clone())
                } else {
                    None
                }
            }
        }
    }

    fn ball_at(&self, ctx: &Ctx) -> BallComplex {
        match self {
            CoeffValue::Exact(q) => BallComplex::from_gaussian(q, ctx.bits),
            CoeffValue::Certified(c) => c.ball.clone(),
        }
    }

    /// Try to bring both operands onto one root: identical `Arc`s, or
    /// provably the same root of equal minimal polynomials.
    fn aligned_witnesses(&self, rhs: &Self, ctx: &Ctx) -> Option<(Witness, Witness)> {
        let (wa, wb) = match (self, rhs) {
            (CoeffValue::Certified(a), CoeffValue::Certified(b)) => {
                match (&a.witness, &b.witness) {
                    (Some(wa), Some(wb)) => (wa.clone(), wb.clone()),
                    _ => return None,
                }
            }
            (CoeffValue::Exact(_), CoeffValue::Certified(b)) => {
                let wb = b.witness.clone()?;
                let wa = self.to_witness_on(&wb)?;
                return Some((wa, wb));
            }
            (CoeffValue::Certified(a), CoeffValue::Exact(_)) => {
                let wa = a.witness.clone()?;
                let wb = rhs.to_witness_on(&wa)?;
                return Some((wa, wb));
            }
            (CoeffValue::Exact(_), CoeffValue::Exact(_)) => return None,
        };
        if wa.shares_root(&wb) {
            return Some((wa, wb));
        }
        if wa.root().minpoly() == wb.root().minpoly() {
            let q = wa.root().minpoly().clone();
            if let Ok(true) = same_root(&q, wa.root(), wb.root(), ctx) {
                let rebased = Witness::new(wa.root().clone(), wb.expr().clone());
                return Some((wa, rebased));
            }
        }
        None
    }

    pub fn add(&self, rhs: &Self, ctx: &Ctx) -> Result<Self> {
        if let (CoeffValue::Exact(a), CoeffValue::Exact(b)) = (self, rhs) {
            return Ok(CoeffValue::Exact(a + b));
        }
        let ball = self.ball_at(ctx).add(&rhs.ball_at(ctx), ctx.bits);
        if let Some((wa, wb)) = self.aligned_witnesses(rhs, ctx) {
            return Ok(CoeffValue::from_witness(wa.add(&wb), ball));
        }
        Ok(CoeffValue::from_ball(ball))
    }

    pub fn sub(&self, rhs: &Self, ctx: &Ctx) -> Result<Self> {
        self.add(&rhs.neg(), ctx)
    }

    pub fn neg(&self) -> Self {
        match self {
            CoeffValue::Exact(q) => CoeffValue::Exact(-q),
            CoeffValue::Certified(c) => CoeffValue::Certified(Certified {
                ball: c.ball.neg(),
                witness: c.witness.as_ref().map(|w| w.neg()),
            }),
        }
    }

    pub fn mul(&self, rhs: &Self, ctx: &Ctx) -> Result<Self> {
        if let (CoeffValue::Exact(a), CoeffValue::Exact(b)) = (self, rhs) {
            return Ok(CoeffValue::Exact(a * b));
        }
        // Multiplying by an exact zero kills certified values exactly.
        if self.is_provably_zero() || rhs.is_provably_zero() {
            return Ok(CoeffValue::zero());
        }
        let ball = self.ball_at(ctx).mul(&rhs.ball_at(ctx), ctx.bits);
        if let Some((wa, wb)) = self.aligned_witnesses(rhs, ctx) {
            return Ok(CoeffValue::from_witness(wa.mul(&wb), ball));
        }
        Ok(CoeffValue::from_ball(ball))
    }

    pub fn pow(&self, e: u32, ctx: &Ctx) -> Result<Self> {
        let mut acc = CoeffValue::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, ctx)?;
            }
            base = base.mul(&base, ctx)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Division.  Panics on division by a *certified* zero (an internal
    /// invariant violation); returns `Indeterminate` when the divisor is an
    /// unwitnessed ball straddling zero.
    pub fn div(&self, rhs: &Self, ctx: &Ctx) -> Result<Self> {
        match rhs {
            CoeffValue::Exact(q) => {
                assert!(!q.is_zero(), "division by exact zero coefficient");
                self.mul(&CoeffValue::Exact(q.inv()), ctx)
            }
            CoeffValue::Certified(c) => match &c.witness {
                Some(w) => {
                    let inv = w.inverse(ctx)?;
                    // Build a valid enclosure for the inverse from a
                    // refined enclosure of the divisor.
                    let mut prec = ctx.bits;
                    let inv_ball = loop {
                        let e = w.enclosure(prec, ctx)?;
                        match e.inv(prec) {
                            Ok(b) => break b,
                            Err(_) if prec < ctx.cap => prec = (prec * 2).min(ctx.cap),
                            Err(e) => return Err(e),
                        }
                    };
                    let quotient_ball = self.ball_at(ctx).mul(&inv_ball, ctx.bits);
                    let q = CoeffValue::from_witness(inv, inv_ball);
                    self.mul(&q, ctx).map(|v| match v {
                        CoeffValue::Certified(mut c2) => {
                            c2.ball = quotient_ball;
                            CoeffValue::Certified(c2)
                        }
                        exact => exact,
                    })
                }
                None => {
                    let inv = c.ball.inv(ctx.bits)?;
                    self.mul(&CoeffValue::from_ball(inv), ctx)
                }
            },
        }
    }

    /// Decide `self == rhs` exactly where possible.
    pub fn eq_decide(&self, rhs: &Self, ctx: &Ctx) -> Result<bool> {
        let d = self.sub(rhs, ctx)?;
        match d.is_zero(ctx) {
            Ok(b) => return Ok(b),
            Err(Error::Indeterminate) => {}
            Err(e) => return Err(e),
        }
        // The difference degraded to a straddling ball.  If both sides are
        // witnessed, equality is still decidable through characteristic
        // polynomials.
        let (wa, wb) = match (self, rhs) {
            (CoeffValue::Certified(a), CoeffValue::Certified(b)) => {
                match (&a.witness, &b.witness) {
                    (Some(wa), Some(wb)) => (wa.clone(), wb.clone()),
                    _ => return Err(Error::Indeterminate),
                }
            }
            _ => return Err(Error::Indeterminate),
        };
        let pa = wa.char_poly();
        let pb = wb.char_poly();
        let common = pa.gcd(&pb);
        if common.is_constant() {
            return Ok(false);
        }
        if !value_in_factor(&wa, &pa, &common, ctx)? {
            return Ok(false);
        }
        if !value_in_factor(&wb, &pb, &common, ctx)? {
            return Ok(false);
        }
        // Both values are roots of `common`; same root?
        let mut prec = ctx.bits;
        loop {
            let ea = wa.enclosure(prec, ctx)?;
            let eb = wb.enclosure(prec, ctx)?;
            if ea.certainly_disjoint(&eb, prec) {
                return Ok(false);
            }
            let u = ea.union(&eb, prec);
            if unique_root_inside(&common, &u, ctx)? {
                return Ok(true);
            }
            if prec >= ctx.cap {
                return Err(Error::PrecisionExhausted);
            }
            prec = (prec * 2).min(ctx.cap);
        }
    }

    /// Lexicographic `(Re, Im)` comparison for deterministic presentation.
    ///
    /// Exact pairs compare exactly.  Certified values separate numerically;
    /// components that refuse to separate at working precision are treated
    /// as tied, with a final exact equality check backing the `Equal`
    /// verdict where witnesses allow.  The canonical-form *semantics* never
    /// rely on this order (multiset matching does its own exact equality);
    /// it only fixes presentation order.
    pub fn cmp_lex(&self, rhs: &Self, ctx: &Ctx) -> Result<Ordering> {
        if let (CoeffValue::Exact(a), CoeffValue::Exact(b)) = (self, rhs) {
            return Ok(a.cmp(b));
        }
        match self.eq_decide(rhs, ctx) {
            Ok(true) => return Ok(Ordering::Equal),
            Ok(false) | Err(Error::Indeterminate) => {}
            Err(e) => return Err(e),
        }
        let mut prec = ctx.bits;
        loop {
            let ea = self.enclosure(prec, ctx)?;
            let eb = rhs.enclosure(prec, ctx)?;
            let tie = BigFloat::pow2(-(prec as i64) / 2);
            if let Some(ord) = interval_cmp(
                &ea.mid().re,
                ea.rad(),
                &eb.mid().re,
                eb.rad(),
                &tie,
            ) {
                if ord != Ordering::Equal {
                    return Ok(ord);
                }
                if let Some(ord) = interval_cmp(
                    &ea.mid().im,
                    ea.rad(),
                    &eb.mid().im,
                    eb.rad(),
                    &tie,
                ) {
                    return Ok(ord);
                }
            }
            if prec >= ctx.cap {
                return Err(Error::Indeterminate);
            }
            prec = (prec * 2).min(ctx.cap);
        }
    }

    /// Approximate midpoint as `(re, im)` doubles.
    pub fn approx_f64(&self) -> (f64, f64) {
        match self {
            CoeffValue::Exact(q) => {
                let (re, _) = BigFloat::from_rational(q.re(), 64);
                let (im, _) = BigFloat::from_rational(q.im(), 64);
                (re.to_f64(), im.to_f64())
            }
            CoeffValue::Certified(c) => {
                let (re, im) = c.ball.mid().to_f64_pair();
                (re, im)
            }
        }
    }
}

/// Compare two real intervals `a ± ra`, `b ± rb`: `Less`/`Greater` when
/// certainly separated, `Equal` when both are narrower than `tie` and
/// overlapping, `None` when still wide and overlapping.
fn interval_cmp(
    a: &BigFloat,
    ra: &BigFloat,
    b: &BigFloat,
    rb: &BigFloat,
    tie: &BigFloat,
) -> Option<Ordering> {
    let lo_a = a.sub(ra);
    let hi_a = a.add(ra);
    let lo_b = b.sub(rb);
    let hi_b = b.add(rb);
    if hi_a.cmp_value(&lo_b) == Ordering::Less {
        return Some(Ordering::Less);
    }
    if hi_b.cmp_value(&lo_a) == Ordering::Less {
        return Some(Ordering::Greater);
    }
    if ra.cmp_value(tie) != Ordering::Greater && rb.cmp_value(tie) != Ordering::Greater {
        return Some(Ordering::Equal);
    }
    None
}

/// Is the witnessed value a root of `factor` (a divisor of its squarefree
/// characteristic polynomial `own`)?
fn value_in_factor(w: &Witness, own: &GPoly, factor: &GPoly, ctx: &Ctx) -> Result<bool> {
    let g = own.gcd(factor);
    if g.is_constant() {
        return Ok(false);
    }
    let rest = own.exact_div(&g);
    if rest.is_constant() {
        return Ok(true);
    }
    let mut prec = ctx.bits;
    loop {
        let e = w.enclosure(prec, ctx)?;
        if eval_gpoly_ball(&g, &e, prec).certainly_nonzero(prec) {
            return Ok(false);
        }
        if eval_gpoly_ball(&rest, &e, prec).certainly_nonzero(prec) {
            return Ok(true);
        }
        if prec >= ctx.cap {
            return Err(Error::PrecisionExhausted);
        }
        prec = (prec * 2).min(ctx.cap);
    }
}

impl fmt::Display for CoeffValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffValue::Exact(q) => write!(f, "{}", q.to_display_string()),
            CoeffValue::Certified(c) => {
                let (re, im, rad) = c.ball.to_f64();
                let sign = if im < 0.0 { "" } else { "+" };
                write!(f, "~({:.6}{}{:.6} i ± {:.1e})", re, sign, im, rad)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::algnum::AlgebraicRoot;
    use crate::algebra::bigfloat::FloatComplex;
    use std::sync::Arc;

    fn ctx() -> Ctx {
        Ctx::default()
    }

    fn root_of(coeffs: &[i64], re: f64, im: f64) -> Arc<AlgebraicRoot> {
        let q = GPoly::from_ints(coeffs);
        let ball = BallComplex::new(
            FloatComplex::from_f64(re, im),
            BigFloat::from_f64(0.05),
            64,
        );
        Arc::new(AlgebraicRoot::new(q, ball))
    }

    fn witness_value(root: &Arc<AlgebraicRoot>, expr: &[i64]) -> CoeffValue {
        let w = Witness::new(root.clone(), GPoly::from_ints(expr));
        let ball = w.enclosure(64, &ctx()).unwrap();
        CoeffValue::from_witness(w, ball)
    }

    #[test]
    fn exact_stays_exact() {
        let c = ctx();
        let a = CoeffValue::from_int(3);
        let b = CoeffValue::Exact(GaussianRational::from_parts(1, 2, 1, 1));
        let s = a.add(&b, &c).unwrap();
        assert!(s.is_exact());
        assert!(s.eq_decide(
            &CoeffValue::Exact(GaussianRational::from_parts(7, 2, 1, 1)), &c).unwrap());
    }

    #[test]
    fn witness_arithmetic_keeps_exact_decisions() {
        let c = ctx();
        let r = root_of(&[-2, 0, 1], 1.414, 0.0); // sqrt(2)
        let s2 = witness_value(&r, &[0, 1]); // alpha
        // (alpha + 1)(alpha - 1) = alpha^2 - 1 = 1.
        let p = s2.add(&CoeffValue::one(), &c).unwrap();
        let m = s2.sub(&CoeffValue::one(), &c).unwrap();
        let prod = p.mul(&m, &c).unwrap();
        assert!(prod.is_exact());
        assert!(prod.eq_decide(&CoeffValue::one(), &c).unwrap());
        // alpha^2 - 2 = 0, reached through ops.
        let sq = s2.mul(&s2, &c).unwrap();
        let z = sq.sub(&CoeffValue::from_int(2), &c).unwrap();
        assert!(z.is_zero(&c).unwrap());
    }

    #[test]
    fn division_by_witnessed_value() {
        let c = ctx();
        let r = root_of(&[-2, 0, 1], 1.414, 0.0);
        let s2 = witness_value(&r, &[0, 1]);
        // 2 / sqrt2 = sqrt2.
        let q = CoeffValue::from_int(2).div(&s2, &c).unwrap();
        assert!(q.eq_decide(&s2, &c).unwrap());
    }

    #[test]
    fn cross_presentation_equality() {
        let c = ctx();
        // Present sqrt(2) two ways: root of z^2-2, and (root of z^2-8)/2.
        let r1 = root_of(&[-2, 0, 1], 1.414, 0.0);
        let a = witness_value(&r1, &[0, 1]);
        let r2 = root_of(&[-8, 0, 1], 2.828, 0.0);
        let w2 = Witness::new(
            r2,
            GPoly::new(vec![
                GaussianRational::default(),
                GaussianRational::from_parts(1, 2, 0, 1),
            ]),
        );
        let ball = w2.enclosure(64, &ctx()).unwrap();
        let b = CoeffValue::from_witness(w2, ball);
        assert!(a.eq_decide(&b, &c).unwrap());
        // And the negative root is NOT equal.
        let r3 = root_of(&[-2, 0, 1], -1.414, 0.0);
        let neg = witness_value(&r3, &[0, 1]);
        assert!(!a.eq_decide(&neg, &c).unwrap());
    }

    #[test]
    fn lex_ordering_separates_conjugates() {
        let c = ctx();
        // Roots of z^2 + 1 = ±i share Re = 0 exactly.
        let up = witness_value(&root_of(&[1, 0, 1], 0.0, 1.0), &[0, 1]);
        let down = witness_value(&root_of(&[1, 0, 1], 0.0, -1.0), &[0, 1]);
        assert_eq!(down.cmp_lex(&up, &c).unwrap(), Ordering::Less);
    }

    #[test]
    fn plain_ball_zero_test_is_honest() {
        let c = ctx();
        let straddle = CoeffValue::from_ball(BallComplex::new(
            FloatComplex::from_f64(1e-30, 0.0),
            BigFloat::from_f64(1e-20),
            64,
        ));
        assert!(matches!(straddle.is_zero(&c), Err(Error::Indeterminate)));
        let clear = CoeffValue::from_ball(BallComplex::new(
            FloatComplex::from_f64(1.0, 0.0),
            BigFloat::from_f64(1e-3),
            64,
        ));
        assert!(!clear.is_zero(&c).unwrap());
    }
}
