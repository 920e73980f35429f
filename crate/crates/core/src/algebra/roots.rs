//! Certified univariate root finding over `Q(i)`.
//!
//! Strategy: Yun squarefree decomposition first, so multiplicities are
//! exact.  For each squarefree part, Durand-Kerner iteration produces
//! approximations; each approximation gets a rigorous inclusion disk
//! (`deg * |p(z)| / |p'(z)|`, or a coarse norm bound when the derivative
//! cannot be bounded away from zero).  Pairwise-disjoint disks, one per
//! root, certify that every root is localized.  Rational candidates are
//! recovered by snapping `root * lc` to the nearest Gaussian integer and
//! verifying *exactly*; the rest become witnessed algebraic values over the
//! exactly deflated cofactor.

use super::algnum::{eval_gpoly_ball, AlgebraicRoot, Witness};
use super::ball::BallComplex;
use super::bigfloat::{BigFloat, FloatComplex};
use super::coeff::CoeffValue;
use super::gauss::GaussianRational;
use super::unipoly::{CPoly, GPoly};
use crate::ctx::Ctx;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use std::cmp::Ordering;
use std::sync::Arc;

/// One root of a polynomial, with multiplicity.
#[derive(Debug, Clone)]
pub struct RootEstimate {
    pub value: CoeffValue,
    pub multiplicity: usize,
}

/// All complex roots of a nonzero polynomial over `Q(i)`, with exact
/// multiplicities.  Rational roots come back `Exact`; irrational ones are
/// certified balls carrying algebraic witnesses over the exactly deflated
/// squarefree cofactor.
pub fn uni_roots(p: &GPoly, ctx: &Ctx) -> Result<Vec<RootEstimate>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut out = Vec::new();
    for (part, mult) in p.squarefree_decomposition() {
        for value in roots_of_squarefree(&part, ctx)? {
            out.push(RootEstimate { value, multiplicity: mult });
        }
    }
    sort_estimates(&mut out);
    Ok(out)
}

/// Roots of a polynomial with `CoeffValue` coefficients.  Exact inputs go
/// through [`uni_roots`] and keep witnesses; anything carrying certified
/// coefficients falls back to ball clustering, whose multiplicities are
/// best-effort and must be validated by the caller's conservation checks.
pub fn uni_roots_coeff(p: &CPoly, ctx: &Ctx) -> Result<Vec<RootEstimate>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if let Some(g) = p.to_exact() {
        return uni_roots(&g, ctx);
    }
    let balls: Vec<BallComplex> = p
        .coeffs()
        .iter()
        .map(|c| c.enclosure(ctx.bits, ctx))
        .collect::<Result<_>>()?;
    let clusters = cluster_roots_ball(&balls, ctx)?;
    let mut out: Vec<RootEstimate> = clusters
        .into_iter()
        .map(|(ball, count)| RootEstimate {
            value: CoeffValue::from_ball(ball),
            multiplicity: count,
        })
        .collect();
    sort_estimates(&mut out);
    Ok(out)
}

fn sort_estimates(out: &mut [RootEstimate]) {
    out.sort_by(|a, b| {
        let (ar, ai) = a.value.approx_f64();
        let (br, bi) = b.value.approx_f64();
        ar.partial_cmp(&br)
            .unwrap_or(Ordering::Equal)
            .then(ai.partial_cmp(&bi).unwrap_or(Ordering::Equal))
            .then(a.multiplicity.cmp(&b.multiplicity))
    });
}

/// Roots of a squarefree polynomial, each exactly once.
fn roots_of_squarefree(f: &GPoly, ctx: &Ctx) -> Result<Vec<CoeffValue>> {
    let deg = match f.degree() {
        None | Some(0) => return Ok(Vec::new()),
        Some(d) => d,
    };
    if deg == 1 {
        let root = -&(&f.coeff(0) / &f.coeff(1));
        return Ok(vec![CoeffValue::Exact(root)]);
    }
    let (exact, cofactor) = exact_roots_and_cofactor(f, ctx)?;
    let mut out: Vec<CoeffValue> = exact.into_iter().map(CoeffValue::Exact).collect();
    if cofactor.degree().map_or(false, |d| d >= 1) {
        if cofactor.degree() == Some(1) {
            // Can't happen for honest inputs (a degree-1 factor has a
            // rational root), but keep the exact path anyway.
            let root = -&(&cofactor.coeff(0) / &cofactor.coeff(1));
            out.push(CoeffValue::Exact(root));
        } else {
            let minpoly = cofactor.monic();
            let balls = isolate_squarefree(&minpoly, ctx)?;
            for ball in balls {
                let root = Arc::new(AlgebraicRoot::new(minpoly.clone(), ball.clone()));
                let w = Witness::identity(root);
                out.push(CoeffValue::from_witness(w, ball));
            }
        }
    }
    Ok(out)
}

/// Find every Gaussian-rational root of a squarefree `f` (exact
/// verification, completeness certified by isolation) and deflate them out.
fn exact_roots_and_cofactor(f: &GPoly, ctx: &Ctx) -> Result<(Vec<GaussianRational>, GPoly)> {
    let g = f.clear_denominators();
    let lc = g.leading().expect("nonzero by construction").clone();
    let lc_ball = BallComplex::from_gaussian(&lc, 64);
    let lc_abs = lc_ball.abs_upper(64);

    let mut prec = ctx.bits.max(64);
    let quarter = BigFloat::pow2(-2);
    let (approx, _balls) = loop {
        let approx = dk_roots(&g.to_float_coeffs(prec), prec);
        if let Some(balls) = certify_isolated(&g, &approx, prec) {
            // Tight enough that every rational root snaps unambiguously?
            let wide = balls
                .iter()
                .any(|b| b.rad().mul(&lc_abs).cmp_value(&quarter) != Ordering::Less);
            if !wide {
                break (approx, balls);
            }
        }
        prec = match escalate_prec(prec, ctx) {
            Some(p) => p,
            None => return Err(Error::PrecisionExhausted),
        };
    };

    let mut found: Vec<GaussianRational> = Vec::new();
    for z in &approx {
        let u = scale_by_gaussian(z, &lc, prec);
        let candidate = GaussianRational::new(
            BigRational::from_integer(round_to_int(&u.re)),
            BigRational::from_integer(round_to_int(&u.im)),
        );
        let root = &candidate / &lc;
        if g.eval(&root).is_zero() && !found.contains(&root) {
            found.push(root);
        }
    }
    found.sort();

    let mut cofactor = f.monic();
    for r in &found {
        let linear = GPoly::new(vec![-r, GaussianRational::from_int(1)]);
        cofactor = cofactor.exact_div(&linear);
    }
    Ok((found, cofactor))
}

/// Isolating balls for every root of a squarefree polynomial: one disjoint
/// certified disk per root.
pub(crate) fn isolate_squarefree(f: &GPoly, ctx: &Ctx) -> Result<Vec<BallComplex>> {
    let mut prec = ctx.bits.max(64);
    loop {
        let approx = dk_roots(&f.to_float_coeffs(prec), prec);
        if let Some(balls) = certify_isolated(f, &approx, prec) {
            return Ok(balls);
        }
        prec = match escalate_prec(prec, ctx) {
            Some(p) => p,
            None => return Err(Error::PrecisionExhausted),
        };
    }
}

fn escalate_prec(prec: u32, ctx: &Ctx) -> Option<u32> {
    if prec >= ctx.cap {
        None
    } else {
        Some(prec.saturating_mul(2).min(ctx.cap))
    }
}

/// Try to certify that the `deg f` approximations isolate all roots:
/// rigorous inclusion disks, pairwise disjoint.
fn certify_isolated(f: &GPoly, approx: &[FloatComplex], prec: u32) -> Option<Vec<BallComplex>> {
    let deg = f.degree()?;
    if approx.len() != deg {
        return None;
    }
    let df = f.derivative();
    let mut balls = Vec::with_capacity(deg);
    for z in approx {
        balls.push(inclusion_ball(f, &df, z, prec)?);
    }
    for i in 0..balls.len() {
        for j in i + 1..balls.len() {
            if !balls[i].certainly_disjoint(&balls[j], prec) {
                return None;
            }
        }
    }
    Some(balls)
}

/// A disk around `z` certain to contain at least one root of `f`:
/// `deg * |f(z)| / |f'(z)|` when the derivative admits a positive lower
/// bound, else the norm bound `(deg * |f(z)| / |lc|)^(1/deg)` (coarse but
/// always valid).
fn inclusion_ball(f: &GPoly, df: &GPoly, z: &FloatComplex, prec: u32) -> Option<BallComplex> {
    let deg = f.degree()? as i64;
    let point = BallComplex::from_point(z.clone());
    let fz = eval_gpoly_ball(f, &point, prec).abs_upper(prec);
    if fz.is_zero() {
        return Some(BallComplex::from_point(z.clone()));
    }
    let dfz = eval_gpoly_ball(df, &point, prec).abs_lower(prec);
    let rad = if dfz.is_zero() {
        let lc = BallComplex::from_gaussian(f.leading().unwrap(), prec).abs_lower(prec);
        if lc.is_zero() {
            return None;
        }
        let ratio = BigFloat::div_up(&fz.mul(&BigFloat::from_i64(deg)), &lc, prec);
        let e = ratio.log2_upper().unwrap_or(-(prec as i64));
        BigFloat::pow2(e.div_euclid(deg) + 1)
    } else {
        BigFloat::div_up(&fz.mul(&BigFloat::from_i64(deg)), &dfz, prec)
    };
    Some(BallComplex::new(z.clone(), rad, prec))
}

/// Durand-Kerner iteration at `prec` bits (heuristic; certification happens
/// separately).  Returns `deg` approximations.
fn dk_roots(coeffs: &[FloatComplex], prec: u32) -> Vec<FloatComplex> {
    let deg = coeffs.len().saturating_sub(1);
    if deg == 0 {
        return Vec::new();
    }
    let work = prec + 16;
    // Monic-ize approximately.
    let lead = coeffs.last().unwrap();
    let monic: Vec<FloatComplex> = coeffs
        .iter()
        .map(|c| {
            let (q, _) = c.div_nearest(lead, work);
            q
        })
        .collect();
    // Cauchy-style initial radius.
    let mut bound = 1.0f64;
    for c in &monic[..deg] {
        let m = {
            let (re, im) = c.to_f64_pair();
            re.hypot(im)
        };
        if 1.0 + m > bound {
            bound = 1.0 + m;
        }
    }
    let seed = FloatComplex::from_f64(0.4, 0.9);
    let scale = FloatComplex::from_f64(bound, 0.0);
    let mut z: Vec<FloatComplex> = Vec::with_capacity(deg);
    let mut acc = seed.clone();
    for _ in 0..deg {
        z.push(scale.mul(&acc).round(work).0);
        acc = acc.mul(&seed).round(work).0;
    }

    let eval = |p: &[FloatComplex], at: &FloatComplex| -> FloatComplex {
        let mut v = FloatComplex::zero();
        for c in p.iter().rev() {
            v = v.mul(at).add(c).round(work).0;
        }
        v
    };

    let tol = BigFloat::pow2(-(prec as i64));
    let max_iter = 160 + 40 * deg;
    for _ in 0..max_iter {
        let mut biggest = BigFloat::zero();
        for k in 0..deg {
            let mut denom = FloatComplex::from_f64(1.0, 0.0);
            for j in 0..deg {
                if j != k {
                    denom = denom.mul(&z[k].sub(&z[j])).round(work).0;
                }
            }
            if denom.is_zero() {
                // Perturb coincident guesses and continue.
                let jitter = FloatComplex::from_f64(1e-3 * (k as f64 + 1.0), 1e-3);
                z[k] = z[k].add(&jitter);
                continue;
            }
            let val = eval(&monic, &z[k]);
            let (step, _) = val.div_nearest(&denom, work);
            z[k] = z[k].sub(&step).round(work).0;
            let moved = step.abs_upper(work);
            let rel_scale = z[k].abs_upper(work).add(&BigFloat::one());
            let rel = BigFloat::div_up(&moved, &rel_scale, 64);
            if rel.cmp_value(&biggest) == Ordering::Greater {
                biggest = rel;
            }
        }
        if biggest.cmp_value(&tol) != Ordering::Greater {
            break;
        }
    }
    z
}

/// Scale a dyadic point by an exact Gaussian rational (rounded to `prec`).
fn scale_by_gaussian(z: &FloatComplex, c: &GaussianRational, prec: u32) -> FloatComplex {
    let (re, _) = BigFloat::from_rational(c.re(), prec);
    let (im, _) = BigFloat::from_rational(c.im(), prec);
    z.mul(&FloatComplex::new(re, im)).round(prec).0
}

/// Nearest integer to a dyadic float.
fn round_to_int(x: &BigFloat) -> BigInt {
    // x = m * 2^e; for e >= 0 the value is m << e, else round m / 2^-e.
    let r = x.to_rational();
    let (num, den) = (r.numer().clone(), r.denom().clone());
    let two_num = BigInt::from(2) * &num;
    let q = &two_num / &den; // floor(2x) for positive; adjust via signs
    // round(x) = floor((2x + 1) / 2) handles both signs adequately here.
    let adj = (&q + BigInt::from(if q.is_negative() { -1 } else { 1 })) / BigInt::from(2);
    // Verify by distance; fall back to floor/ceil scan.
    let mut best = adj.clone();
    let mut best_d: Option<BigRational> = None;
    for delta in [-1i32, 0, 1] {
        let cand = &adj + BigInt::from(delta);
        let d = (&r - BigRational::from_integer(cand.clone())).abs();
        if best_d.as_ref().map_or(true, |b| &d < b) {
            best_d = Some(d);
            best = cand;
        }
    }
    best
}

/// The `m`-th roots of an exact value `v`: the roots of `z^m - v`.
pub(crate) fn nth_roots_exact(v: &GaussianRational, m: u32, ctx: &Ctx) -> Result<Vec<CoeffValue>> {
    let mut coeffs = vec![-v; 1];
    coeffs.extend(std::iter::repeat(GaussianRational::default()).take(m as usize - 1));
    coeffs.push(GaussianRational::from_int(1));
    let p = GPoly::new(coeffs);
    Ok(uni_roots(&p, ctx)?.into_iter().map(|r| r.value).collect())
}

/// Cluster roots of a polynomial whose coefficients are only known as
/// balls.  Returns `(enclosure, count)` pairs; counts are best-effort
/// (downstream conservation checks catch misassignment).  Leading
/// coefficient ball must exclude zero.
pub(crate) fn cluster_roots_ball(
    coeffs: &[BallComplex],
    ctx: &Ctx,
) -> Result<Vec<(BallComplex, usize)>> {
    let deg = coeffs.len().saturating_sub(1);
    if deg == 0 {
        return Ok(Vec::new());
    }
    let prec = ctx.bits;
    if !coeffs[deg].certainly_nonzero(prec) {
        return Err(Error::Indeterminate);
    }
    let mids: Vec<FloatComplex> = coeffs.iter().map(|b| b.mid().clone()).collect();
    let approx = dk_roots(&mids, prec.min(256));

    // Inclusion radius per approximation, with coefficient uncertainty
    // folded in through ball evaluation.
    let eval_ball = |at: &BallComplex| -> BallComplex {
        let mut v = BallComplex::from_point(FloatComplex::zero());
        for c in coeffs.iter().rev() {
            v = v.mul(at, prec).add(c, prec);
        }
        v
    };
    let dcoeffs: Vec<BallComplex> = (1..coeffs.len())
        .map(|k| {
            coeffs[k].mul_point(&FloatComplex::from_f64(k as f64, 0.0), prec)
        })
        .collect();
    let eval_dball = |at: &BallComplex| -> BallComplex {
        let mut v = BallComplex::from_point(FloatComplex::zero());
        for c in dcoeffs.iter().rev() {
            v = v.mul(at, prec).add(c, prec);
        }
        v
    };

    let mut balls: Vec<BallComplex> = Vec::with_capacity(approx.len());
    for z in &approx {
        let pt = BallComplex::from_point(z.clone());
        let fz = eval_ball(&pt).abs_upper(prec);
        let dfz = eval_dball(&pt).abs_lower(prec);
        let rad = if dfz.is_zero() {
            let lc = coeffs[deg].abs_lower(prec);
            let ratio = BigFloat::div_up(&fz.mul(&BigFloat::from_i64(deg as i64)), &lc, prec);
            let e = ratio.log2_upper().unwrap_or(-(prec as i64));
            BigFloat::pow2(e.div_euclid(deg as i64) + 1)
        } else {
            BigFloat::div_up(&fz.mul(&BigFloat::from_i64(deg as i64)), &dfz, prec)
        };
        balls.push(BallComplex::new(z.clone(), rad, prec));
    }

    // Greedy clustering of overlapping disks.
    let mut used = vec![false; balls.len()];
    let mut out = Vec::new();
    for i in 0..balls.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        let mut envelope = balls[i].clone();
        let mut count = 1usize;
        let mut grew = true;
        while grew {
            grew = false;
            for (j, bj) in balls.iter().enumerate() {
                if !used[j] && !envelope.certainly_disjoint(bj, prec) {
                    used[j] = true;
                    envelope = envelope.union(bj, prec);
                    count += 1;
                    grew = true;
                }
            }
        }
        out.push((envelope, count));
    }
    Ok(out)
}
