//! One-level algebraic witnesses.
//!
//! A certified value may carry a *witness*: a polynomial expression
//! `expr(alpha)` in a root `alpha` of an exact squarefree polynomial over
//! `Q(i)`.  Witnessed values admit exact zero tests (gcd splitting plus
//! certified ball refinement picks the factor `alpha` belongs to), exact
//! inversion, and decidable equality even across different presentations
//! (through resultant characteristic polynomials).  This deliberately stops
//! at one level: expressions in a single root, never towers of extensions.

use super::ball::BallComplex;
use super::bigfloat::BigFloat;
use super::gauss::GaussianRational;
use super::unipoly::{resultant_poly_coeffs, GPoly};
use crate::ctx::Ctx;
use crate::{Error, Result};
use std::sync::{Arc, Mutex};

/// A root of an exact squarefree polynomial, located by a refinable
/// isolating ball.  The ball always contains the root and contains no other
/// root of `minpoly`; refinement preserves both properties.
#[derive(Debug)]
pub struct AlgebraicRoot {
    minpoly: GPoly,
    ball: Mutex<BallComplex>,
}

/// Evaluate an exact polynomial over a complex ball (Horner).
pub(crate) fn eval_gpoly_ball(p: &GPoly, z: &BallComplex, prec: u32) -> BallComplex {
    let mut acc = BallComplex::from_gaussian(&GaussianRational::default(), prec);
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(z, prec).add(&BallComplex::from_gaussian(c, prec), prec);
    }
    acc
}

/// One complex interval-Newton step.  If the input ball contains a root of
/// `q` and `q'` is certainly nonzero over it, the returned ball also
/// contains that root.
fn newton_step(q: &GPoly, dq: &GPoly, b: &BallComplex, prec: u32) -> Option<BallComplex> {
    let deriv = eval_gpoly_ball(dq, b, prec);
    if !deriv.certainly_nonzero(prec) {
        return None;
    }
    let mid = BallComplex::from_point(b.mid().clone());
    let at_mid = eval_gpoly_ball(q, &mid, prec);
    let step = at_mid.div(&deriv, prec).ok()?;
    Some(mid.sub(&step, prec))
}

impl AlgebraicRoot {
    /// `minpoly` must be squarefree of degree at least 2 and `ball` must
    /// isolate exactly one of its roots.
    pub fn new(minpoly: GPoly, ball: BallComplex) -> Self {
        debug_assert!(minpoly.degree().map_or(false, |d| d >= 2));
        AlgebraicRoot { minpoly, ball: Mutex::new(ball) }
    }

    pub fn minpoly(&self) -> &GPoly {
        &self.minpoly
    }

    pub fn ball(&self) -> BallComplex {
        self.ball.lock().unwrap().clone()
    }

    /// Shrink the isolating ball until its radius is at most `target`.
    /// Interval Newton contracts quadratically once it bites; precision
    /// escalates within the context cap when it does not.
    pub fn refine(&self, target: &BigFloat, ctx: &Ctx) -> Result<BallComplex> {
        let mut guard = self.ball.lock().unwrap();
        let dq = self.minpoly.derivative();
        let mut prec = ctx.bits;
        let mut stall = 0u32;
        while guard.rad().cmp_value(target) == std::cmp::Ordering::Greater {
            let improved = match newton_step(&self.minpoly, &dq, &guard, prec) {
                Some(n)
                    if n.rad().cmp_value(guard.rad()) == std::cmp::Ordering::Less
                        && contained_in(&n, &guard, prec) =>
                {
                    Some(n)
                }
                _ => None,
            };
            match improved {
                Some(n) => {
                    *guard = n;
                    stall = 0;
                }
                None => {
                    stall += 1;
                    if prec >= ctx.cap && stall > 2 {
                        return Err(Error::PrecisionExhausted);
                    }
                    prec = prec.saturating_mul(2).min(ctx.cap.max(ctx.bits));
                }
            }
        }
        Ok(guard.clone())
    }
}

/// Rigorous disk containment `inner ⊆ outer`.
fn contained_in(inner: &BallComplex, outer: &BallComplex, prec: u32) -> bool {
    let d = inner.mid().sub(outer.mid()).abs_upper(prec).add(inner.rad());
    d.cmp_value(outer.rad()) != std::cmp::Ordering::Greater
}

/// Extended gcd over `Q(i)[z]`: returns `(g, s, t)` with `s a + t b = g`,
/// `g` monic (or zero).
fn extended_gcd(a: &GPoly, b: &GPoly) -> (GPoly, GPoly, GPoly) {
    let mut r0 = a.clone();
    let mut r1 = b.clone();
    let mut s0 = GPoly::one();
    let mut s1 = GPoly::zero();
    let mut t0 = GPoly::zero();
    let mut t1 = GPoly::one();
    while !r1.is_zero() {
        let (q, r) = r0.divrem(&r1);
        let s = s0.sub(&q.mul(&s1));
        let t = t0.sub(&q.mul(&t1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
        t0 = t1;
        t1 = t;
    }
    match r0.leading() {
        None => (r0, s0, t0),
        Some(l) => {
            let inv = l.inv();
            (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
        }
    }
}

/// A value `expr(alpha)` for a shared algebraic root `alpha`.
#[derive(Debug, Clone)]
pub struct Witness {
    root: Arc<AlgebraicRoot>,
    expr: GPoly,
}

impl Witness {
    pub fn new(root: Arc<AlgebraicRoot>, expr: GPoly) -> Self {
        let expr = expr.divrem(root.minpoly()).1;
        Witness { root, expr }
    }

    /// The root itself, as a value.
    pub fn identity(root: Arc<AlgebraicRoot>) -> Self {
        Witness::new(root, GPoly::monomial(GaussianRational::from_int(1), 1))
    }

    pub fn root(&self) -> &Arc<AlgebraicRoot> {
        &self.root
    }

    pub fn expr(&self) -> &GPoly {
        &self.expr
    }

    /// Do two witnesses talk about the same root object?
    pub fn shares_root(&self, other: &Witness) -> bool {
        Arc::ptr_eq(&self.root, &other.root)
    }

    pub fn add(&self, other: &Witness) -> Witness {
        debug_assert!(self.shares_root(other));
        Witness::new(self.root.clone(), self.expr.add(&other.expr))
    }

    pub fn sub(&self, other: &Witness) -> Witness {
        debug_assert!(self.shares_root(other));
        Witness::new(self.root.clone(), self.expr.sub(&other.expr))
    }

    pub fn mul(&self, other: &Witness) -> Witness {
        debug_assert!(self.shares_root(other));
        Witness::new(self.root.clone(), self.expr.mul(&other.expr))
    }

    pub fn add_exact(&self, c: &GaussianRational) -> Witness {
        Witness::new(self.root.clone(), self.expr.add(&GPoly::constant(c.clone())))
    }

    pub fn mul_exact(&self, c: &GaussianRational) -> Witness {
        Witness::new(self.root.clone(), self.expr.scale(c))
    }

    pub fn neg(&self) -> Witness {
        Witness::new(self.root.clone(), self.expr.neg())
    }

    pub fn pow(&self, e: u32) -> Witness {
        let mut acc = Witness::new(self.root.clone(), GPoly::one());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// If the reduced expression is a constant, the value is exact.
    pub fn as_exact(&self) -> Option<GaussianRational> {
        if self.expr.is_zero() {
            return Some(GaussianRational::default());
        }
        if self.expr.is_constant() {
            return Some(self.expr.coeff(0));
        }
        None
    }

    /// Exact zero test by gcd splitting: `expr(alpha) = 0` iff `alpha` is a
    /// root of `gcd(expr, minpoly)`, which ball refinement decides.
    pub fn is_zero(&self, ctx: &Ctx) -> Result<bool> {
        if self.expr.is_zero() {
            return Ok(true);
        }
        let q = self.root.minpoly();
        let g = self.expr.gcd(q);
        if g.is_constant() {
            return Ok(false);
        }
        let h = q.exact_div(&g);
        if h.is_constant() {
            // expr is divisible by the full minimal polynomial.
            return Ok(true);
        }
        // alpha is a root of exactly one of g, h.
        let mut target = self.root.ball().rad().clone();
        let mut prec = ctx.bits;
        loop {
            let ball = self.root.refine(&target, ctx)?;
            let gv = eval_gpoly_ball(&g, &ball, prec);
            if gv.certainly_nonzero(prec) {
                return Ok(false); // alpha not a root of g => value nonzero
            }
            let hv = eval_gpoly_ball(&h, &ball, prec);
            if hv.certainly_nonzero(prec) {
                return Ok(true); // alpha is a root of g => value zero
            }
            if prec >= ctx.cap && target.log2_upper().map_or(false, |e| e < -(ctx.cap as i64)) {
                return Err(Error::PrecisionExhausted);
            }
            target = target.scale_pow2(-8);
            prec = prec.saturating_mul(2).min(ctx.cap);
        }
    }

    /// Exact inverse.  Panics if the value is provably zero (callers divide
    /// only by values already certified nonzero).
    pub fn inverse(&self, ctx: &Ctx) -> Result<Witness> {
        let mut w = self.clone();
        // Shrink the root's minimal polynomial until expr is invertible
        // modulo it; each pass strictly reduces the degree, so this ends.
        loop {
            let q = w.root.minpoly().clone();
            let g = w.expr.gcd(&q);
            if g.is_constant() {
                break;
            }
            let zero = w.is_zero(ctx)?;
            assert!(!zero, "inverse of a certified-zero witness value");
            // Value nonzero, so alpha is a root of h = q/g.
            let h = q.exact_div(&g);
            if h.degree() == Some(1) {
                // alpha is exact after all: -c0/c1.
                let root_val = -&(&h.coeff(0) / &h.coeff(1));
                let v = w.expr.eval(&root_val);
                let root = w.root.clone();
                return Ok(Witness::new(root, GPoly::constant(v.inv())));
            }
            let ball = w.root.ball();
            let new_root = Arc::new(AlgebraicRoot::new(h, ball));
            w = Witness::new(new_root, w.expr.clone());
        }
        let q = w.root.minpoly();
        let (g, s, _) = extended_gcd(&w.expr, q);
        debug_assert!(g.is_constant() && !g.is_zero());
        let inv = s.scale(&g.coeff(0).inv());
        Ok(Witness::new(w.root.clone(), inv))
    }

    /// A certified enclosure of the value with radius at most `2^-prec`.
    pub fn enclosure(&self, prec: u32, ctx: &Ctx) -> Result<BallComplex> {
        let goal = BigFloat::pow2(-(prec as i64));
        let mut target = {
            let ball = self.root.ball();
            let r = ball.rad();
            if r.is_zero() {
                BigFloat::pow2(-(prec as i64))
            } else {
                r.clone()
            }
        };
        let eval_prec = ctx.bits.max(prec + 32);
        loop {
            let ball = self.root.refine(&target, ctx)?;
            let v = eval_gpoly_ball(&self.expr, &ball, eval_prec);
            if v.rad().cmp_value(&goal) != std::cmp::Ordering::Greater {
                return Ok(v);
            }
            if target.log2_upper().map_or(false, |e| e < -(4 * ctx.cap as i64)) {
                return Err(Error::PrecisionExhausted);
            }
            target = target.scale_pow2(-8);
        }
    }

    /// An exact polynomial over `Q(i)` vanishing at the value: the
    /// squarefree part of `Res_z(minpoly(z), w - expr(z))`.
    pub fn char_poly(&self) -> GPoly {
        let q = self.root.minpoly();
        let p_coeffs: Vec<GPoly> = q.coeffs().iter().map(|c| GPoly::constant(c.clone())).collect();
        let mut e_coeffs: Vec<GPoly> = self
            .expr
            .coeffs()
            .iter()
            .map(|c| GPoly::constant(-c))
            .collect();
        if e_coeffs.is_empty() {
            e_coeffs.push(GPoly::zero());
        }
        // constant term in z picks up the free variable w.
        e_coeffs[0] = e_coeffs[0].add(&GPoly::monomial(GaussianRational::from_int(1), 1));
        let res = resultant_poly_coeffs(&p_coeffs, &e_coeffs);
        res.squarefree_part().monic()
    }
}

/// Decide whether a squarefree polynomial has exactly one root inside the
/// given ball, by Newton contraction `N(B) ⊆ B`.
pub(crate) fn unique_root_inside(q: &GPoly, b: &BallComplex, ctx: &Ctx) -> Result<bool> {
    let dq = q.derivative();
    let mut prec = ctx.bits;
    loop {
        if let Some(n) = newton_step(q, &dq, b, prec) {
            if contained_in(&n, b, prec) {
                return Ok(true);
            }
            // Contraction failed decisively at high precision: either more
            // than one root or none inside.
            if prec >= ctx.cap {
                return Ok(false);
            }
        } else if prec >= ctx.cap {
            return Err(Error::Indeterminate);
        }
        prec = prec.saturating_mul(2).min(ctx.cap);
    }
}

/// Decide whether two isolated roots of the *same* squarefree polynomial
/// are the same root.
pub(crate) fn same_root(
    q: &GPoly,
    a: &Arc<AlgebraicRoot>,
    b: &Arc<AlgebraicRoot>,
    ctx: &Ctx,
) -> Result<bool> {
    if Arc::ptr_eq(a, b) {
        return Ok(true);
    }
    let prec = ctx.bits;
    let mut target = BigFloat::pow2(-(ctx.bits as i64 / 4));
    loop {
        let ba = a.refine(&target, ctx)?;
        let bb = b.refine(&target, ctx)?;
        if ba.certainly_disjoint(&bb, prec) {
            return Ok(false);
        }
        let u = ba.union(&bb, prec);
        if unique_root_inside(q, &u, ctx)? {
            return Ok(true);
        }
        if target.log2_upper().map_or(false, |e| e < -(2 * ctx.cap as i64)) {
            return Err(Error::PrecisionExhausted);
        }
        target = target.scale_pow2(-16);
    }
}
