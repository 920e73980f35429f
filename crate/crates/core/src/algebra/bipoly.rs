//! Exact bivariate polynomials over the Gaussian rationals.
//!
//! `BivariatePoly` is a sparse map from `(x_degree, y_degree)` to nonzero
//! coefficients.  Everything here is exact: ring operations, derivatives,
//! gcds (primitive pseudo-remainder sequences in `x`), squarefree
//! decomposition, and linear changes of coordinates.  The module also hosts
//! the two independent routines that substitute a Puiseux arc into a
//! polynomial (`substitute_arc` / `shift_expand`), which bridge exact input
//! polynomials with certified series coefficients.

use super::coeff::CoeffValue;
use super::gauss::GaussianRational;
use super::series::{PuiseuxSeries, Trunc};
use super::unipoly::GPoly;
use crate::ctx::Ctx;
use crate::Result;
use num_bigint::BigInt;
use num_rational::BigRational;
use std::collections::BTreeMap;

/// A polynomial in `x` and `y` with `GaussianRational` coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BivariatePoly {
    /// `(i, j) -> c` for the monomial `c * x^i * y^j`; no zero values.
    terms: BTreeMap<(u32, u32), GaussianRational>,
}

impl BivariatePoly {
    pub fn zero() -> Self {
        BivariatePoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(GaussianRational::from_int(1))
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn monomial(i: u32, j: u32, c: GaussianRational) -> Self {
        let mut p = Self::zero();
        p.insert(i, j, c);
        p
    }

    pub fn x() -> Self {
        Self::monomial(1, 0, GaussianRational::from_int(1))
    }

    pub fn y() -> Self {
        Self::monomial(0, 1, GaussianRational::from_int(1))
    }

    pub fn from_terms(terms: Vec<(u32, u32, GaussianRational)>) -> Self {
        let mut p = Self::zero();
        for (i, j, c) in terms {
            p.insert(i, j, c);
        }
        p
    }

    fn insert(&mut self, i: u32, j: u32, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&(i, j)) {
            None => {
                self.terms.insert((i, j), c);
            }
            Some(old) => {
                let s = &old + &c;
                if !s.is_zero() {
                    self.terms.insert((i, j), s);
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms.contains_key(&(0, 0))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, i: u32, j: u32) -> GaussianRational {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &GaussianRational)> {
        self.terms.iter()
    }

    pub fn degree_x(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, _)| i).max()
    }

    pub fn degree_y(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, j)| j).max()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| i + j).max()
    }

    /// Multiplicity at the origin: least total degree of a term.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| i + j).min()
    }

    pub fn ord_x(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, _)| i).min()
    }

    pub fn ord_y(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, j)| j).min()
    }

    /// Coefficient of `x^i` as a polynomial in `y`.
    pub fn x_coefficient(&self, i: u32) -> GPoly {
        let mut coeffs: Vec<GaussianRational> = Vec::new();
        for (&(ti, tj), c) in &self.terms {
            if ti == i {
                if coeffs.len() <= tj as usize {
                    coeffs.resize(tj as usize + 1, GaussianRational::zero());
                }
                coeffs[tj as usize] = c.clone();
            }
        }
        GPoly::new(coeffs)
    }

    /// `x`-major view: entry `i` is the coefficient of `x^i` in `y`.
    pub fn to_xpoly(&self) -> Vec<GPoly> {
        let dx = match self.degree_x() {
            None => return Vec::new(),
            Some(d) => d,
        };
        (0..=dx).map(|i| self.x_coefficient(i)).collect()
    }

    pub fn from_xpoly(xp: &[GPoly]) -> Self {
        let mut p = Self::zero();
        for (i, a) in xp.iter().enumerate() {
            for (j, c) in a.coeffs().iter().enumerate() {
                p.insert(i as u32, j as u32, c.clone());
            }
        }
        p
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.insert(i, j, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        BivariatePoly { terms: self.terms.iter().map(|(&k, c)| (k, -c)).collect() }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for (&(ia, ja), ca) in &self.terms {
            for (&(ib, jb), cb) in &rhs.terms {
                out.insert(ia + ib, ja + jb, ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        BivariatePoly { terms: self.terms.iter().map(|(&k, v)| (k, v * c)).collect() }
    }

    pub fn mul_monomial(&self, di: u32, dj: u32) -> Self {
        BivariatePoly {
            terms: self.terms.iter().map(|(&(i, j), c)| ((i + di, j + dj), c.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
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

    pub fn derivative_x(&self) -> Self {
        let mut out = Self::zero();
        for (&(i, j), c) in &self.terms {
            if i > 0 {
                out.insert(i - 1, j, c * &GaussianRational::from_int(i as i64));
            }
        }
        out
    }

    pub fn derivative_y(&self) -> Self {
        let mut out = Self::zero();
        for (&(i, j), c) in &self.terms {
            if j > 0 {
                out.insert(i, j - 1, c * &GaussianRational::from_int(j as i64));
            }
        }
        out
    }

    pub fn eval(&self, x: &GaussianRational, y: &GaussianRational) -> GaussianRational {
        let mut acc = GaussianRational::zero();
        for (&(i, j), c) in &self.terms {
            acc = &acc + &(c * &(&x.pow(i) * &y.pow(j)));
        }
        acc
    }

    /// Terms of total degree exactly `k`.
    pub fn homogeneous_part(&self, k: u32) -> Self {
        BivariatePoly {
            terms: self
                .terms
                .iter()
                .filter(|(&(i, j), _)| i + j == k)
                .map(|(&k2, c)| (k2, c.clone()))
                .collect(),
        }
    }

    /// The degree-`k` homogeneous part as a univariate polynomial in
    /// `z = x/y`: coefficient of `z^i` is the coefficient of `x^i y^(k-i)`.
    pub fn homogeneous_to_univariate(&self, k: u32) -> GPoly {
        let mut coeffs = vec![GaussianRational::zero(); k as usize + 1];
        for (&(i, j), c) in &self.terms {
            if i + j == k {
                coeffs[i as usize] = c.clone();
            }
        }
        GPoly::new(coeffs)
    }

    /// Substitute `y -> y^q`.
    pub fn stretch_y(&self, q: u32) -> Self {
        debug_assert!(q >= 1);
        BivariatePoly {
            terms: self.terms.iter().map(|(&(i, j), c)| ((i, j * q), c.clone())).collect(),
        }
    }

    /// Divide by `y^v` exactly.
    pub fn divide_y_pow(&self, v: u32) -> Self {
        BivariatePoly {
            terms: self
                .terms
                .iter()
                .map(|(&(i, j), c)| {
                    debug_assert!(j >= v, "not divisible by y^{}", v);
                    ((i, j - v), c.clone())
                })
                .collect(),
        }
    }

    /// Divide by `x^v` exactly.
    pub fn divide_x_pow(&self, v: u32) -> Self {
        BivariatePoly {
            terms: self
                .terms
                .iter()
                .map(|(&(i, j), c)| {
                    debug_assert!(i >= v, "not divisible by x^{}", v);
                    ((i - v, j), c.clone())
                })
                .collect(),
        }
    }

    /// `f(a*x + b*y, c*x + d*y)`.
    pub fn compose_linear(
        &self,
        a: &GaussianRational,
        b: &GaussianRational,
        c: &GaussianRational,
        d: &GaussianRational,
    ) -> Self {
        let lx = Self::from_terms(vec![(1, 0, a.clone()), (0, 1, b.clone())]);
        let ly = Self::from_terms(vec![(1, 0, c.clone()), (0, 1, d.clone())]);
        let dx = self.degree_x().unwrap_or(0) as usize;
        let dy = self.degree_y().unwrap_or(0) as usize;
        let mut px = Vec::with_capacity(dx + 1);
        let mut py = Vec::with_capacity(dy + 1);
        px.push(Self::one());
        for i in 1..=dx {
            let next = px[i - 1].mul(&lx);
            px.push(next);
        }
        py.push(Self::one());
        for j in 1..=dy {
            let next = py[j - 1].mul(&ly);
            py.push(next);
        }
        let mut out = Self::zero();
        for (&(i, j), coef) in &self.terms {
            let term = px[i as usize].mul(&py[j as usize]).scale(coef);
            out = out.add(&term);
        }
        out
    }

    /// Shear `(x, y) -> (x, y + s*x)`.
    pub fn shear(&self, s: &GaussianRational) -> Self {
        self.compose_linear(
            &GaussianRational::from_int(1),
            &GaussianRational::zero(),
            s,
            &GaussianRational::from_int(1),
        )
    }

    /// Gcd in `y` of all `x`-coefficients (monic), the pure-`y` content.
    pub fn content_x(&self) -> GPoly {
        let mut g = GPoly::zero();
        for a in self.to_xpoly() {
            if a.is_zero() {
                continue;
            }
            g = if g.is_zero() { a.monic() } else { g.gcd(&a) };
            if g.degree() == Some(0) {
                break;
            }
        }
        g
    }

    /// Multiply by a pure-`y` polynomial.
    pub fn mul_ypoly(&self, p: &GPoly) -> Self {
        let q = Self::from_xpoly(std::slice::from_ref(p));
        // from_xpoly with one entry treats it as the x^0 coefficient.
        self.mul(&q)
    }

    /// Exact division; panics if `rhs` does not divide `self` (internal
    /// misuse, not a data error).
    pub fn exact_div(&self, rhs: &Self) -> Self {
        self.try_exact_div(rhs).expect("exact_div: not divisible")
    }

    /// Exact division in `x`-major long division; `None` when not divisible.
    pub fn try_exact_div(&self, rhs: &Self) -> Option<Self> {
        assert!(!rhs.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(Self::zero());
        }
        let mut rem = self.to_xpoly();
        let den = rhs.to_xpoly();
        let dg = den.len() - 1;
        let lg = den.last().unwrap();
        let mut quot: Vec<GPoly> = Vec::new();
        while !xp_is_zero(&rem) {
            let dr = rem.len() - 1;
            if dr < dg {
                return None;
            }
            let (q, r) = rem[dr].divrem(lg);
            if !r.is_zero() {
                return None;
            }
            if quot.len() <= dr - dg {
                quot.resize(dr - dg + 1, GPoly::zero());
            }
            quot[dr - dg] = q.clone();
            for (k, d) in den.iter().enumerate() {
                let sub = q.mul(d);
                rem[dr - dg + k] = rem[dr - dg + k].sub(&sub);
            }
            xp_trim(&mut rem);
        }
        Some(Self::from_xpoly(&quot))
    }

    pub fn divides(&self, other: &Self) -> bool {
        !self.is_zero() && other.try_exact_div(self).is_some()
    }

    /// Primitive part with respect to `x` (content in `y` removed).
    pub fn primitive_part_x(&self) -> Self {
        let c = self.content_x();
        if c.degree() == Some(0) {
            // Normalize the scalar content too.
            return self.scale(&c.coeff(0).inv());
        }
        let cb = Self::from_xpoly(std::slice::from_ref(&c));
        self.exact_div(&cb)
    }

    /// Exact gcd over the Gaussian rationals, normalized so the leading
    /// `x`-coefficient is monic in `y`.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.normalized();
        }
        if other.is_zero() {
            return self.normalized();
        }
        let ca = self.content_x();
        let cb = other.content_x();
        let cont = ca.gcd(&cb);
        let f = self.primitive_part_x().to_xpoly();
        let g = other.primitive_part_x().to_xpoly();
        // Specialization shortcut: at any `y0` keeping both leading
        // coefficients nonzero, the specialized gcd degree bounds the true
        // `x`-degree of the gcd from above.  A coprime specialization
        // therefore proves the primitive parts coprime without running the
        // remainder sequence — by far the most common outcome.
        if f.len() > 1 && g.len() > 1 && xp_coprime_at_probe(&f, &g) {
            return Self::from_xpoly(std::slice::from_ref(&cont)).normalized();
        }
        let (mut f, mut g) = (f, g);
        if f.len() < g.len() {
            std::mem::swap(&mut f, &mut g);
        }
        while !xp_is_zero(&g) {
            let r = prem_x(&f, &g);
            f = g;
            g = xp_primitive(r);
        }
        let pp = Self::from_xpoly(&xp_primitive(f));
        pp.mul_ypoly(&cont).normalized()
    }

    /// Scale so the leading `x`-coefficient is monic in `y`.
    fn normalized(&self) -> Self {
        match self.degree_x() {
            None => Self::zero(),
            Some(d) => {
                let lc = self.x_coefficient(d);
                let l = lc.leading().expect("nonzero leading coefficient").clone();
                self.scale(&l.inv())
            }
        }
    }

    /// Squarefree decomposition: pairwise-coprime squarefree `g` with
    /// multiplicities `m`, so that the product of `g^m` recovers the input
    /// up to a nonzero constant.  Only nonunit factors are returned.
    pub fn squarefree_decomposition(&self) -> Vec<(u32, BivariatePoly)> {
        assert!(!self.is_zero());
        let cont = self.content_x();
        let pp = self.primitive_part_x();
        let mut parts: BTreeMap<u32, BivariatePoly> = BTreeMap::new();
        // Pure-y content decomposes univariately.
        for (g, m) in cont.squarefree_decomposition() {
            if g.degree().map_or(false, |d| d > 0) {
                parts
                    .entry(m as u32)
                    .and_modify(|e| *e = e.mul_ypoly(&g))
                    .or_insert_with(|| Self::from_xpoly(std::slice::from_ref(&g)));
            }
        }
        // Yun's algorithm on the primitive part, differentiating in x.
        if pp.degree_x().map_or(false, |d| d > 0) {
            let fp = pp.derivative_x();
            let u = pp.gcd(&fp);
            let mut b = pp.exact_div(&u);
            let c0 = fp.exact_div(&u);
            let mut d = c0.sub(&b.derivative_x());
            let mut m = 1u32;
            while !b.is_unit() {
                let g = b.gcd(&d);
                if !g.is_unit() {
                    parts
                        .entry(m)
                        .and_modify(|e| *e = e.mul(&g))
                        .or_insert_with(|| g.clone());
                }
                b = b.exact_div(&g);
                let c = d.exact_div(&g);
                d = c.sub(&b.derivative_x());
                m += 1;
            }
        }
        parts.into_iter().map(|(m, g)| (m, g)).collect()
    }

    pub fn squarefree_part(&self) -> Self {
        let mut out = Self::one();
        for (_, g) in self.squarefree_decomposition() {
            out = out.mul(&g);
        }
        out.normalized()
    }
}

fn xp_is_zero(xp: &[GPoly]) -> bool {
    xp.iter().all(|p| p.is_zero())
}

fn xp_trim(xp: &mut Vec<GPoly>) {
    while xp.last().map_or(false, |p| p.is_zero()) {
        xp.pop();
    }
}

/// Pseudo-remainder of `f` by `g` in `x` (coefficients in `Q(i)[y]`).
/// Whether the two `x`-polynomials are provably coprime by specialization
/// at one integer `y0` avoiding both leading-coefficient roots.  `false`
/// means "unknown" — the caller must fall back to the exact sequence.
fn xp_coprime_at_probe(f: &[GPoly], g: &[GPoly]) -> bool {
    let lf = f.last().unwrap();
    let lg = g.last().unwrap();
    let max_deg = lf.degree().unwrap_or(0) + lg.degree().unwrap_or(0);
    let mut y0 = GaussianRational::from_int(1);
    for k in 1..=(max_deg as i64 + 2) {
        y0 = GaussianRational::from_int(k);
        if !lf.eval(&y0).is_zero() && !lg.eval(&y0).is_zero() {
            break;
        }
    }
    let fe = GPoly::new(f.iter().map(|c| c.eval(&y0)).collect());
    let ge = GPoly::new(g.iter().map(|c| c.eval(&y0)).collect());
    fe.gcd(&ge).degree() == Some(0)
}

fn prem_x(f: &[GPoly], g: &[GPoly]) -> Vec<GPoly> {
    let mut r = f.to_vec();
    xp_trim(&mut r);
    let dg = g.len() - 1;
    let lg = g.last().unwrap();
    while !xp_is_zero(&r) && r.len() - 1 >= dg {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        // r := lg*r - lr*x^(dr-dg)*g
        for p in r.iter_mut() {
            *p = p.mul(lg);
        }
        for (k, gc) in g.iter().enumerate() {
            let sub = lr.mul(gc);
            r[dr - dg + k] = r[dr - dg + k].sub(&sub);
        }
        xp_trim(&mut r);
    }
    r
}

/// Remove the `y`-content from every coefficient.
fn xp_primitive(xp: Vec<GPoly>) -> Vec<GPoly> {
    let mut xp = xp;
    xp_trim(&mut xp);
    if xp_is_zero(&xp) {
        return Vec::new();
    }
    let mut c = GPoly::zero();
    for p in &xp {
        if p.is_zero() {
            continue;
        }
        c = if c.is_zero() { p.monic() } else { c.gcd(p) };
        if c.degree() == Some(0) {
            break;
        }
    }
    if c.degree() == Some(0) {
        let inv = c.coeff(0).inv();
        return xp.into_iter().map(|p| p.scale(&inv)).collect();
    }
    xp.into_iter()
        .map(|p| {
            if p.is_zero() {
                p
            } else {
                let (q, r) = p.divrem(&c);
                debug_assert!(r.is_zero());
                q
            }
        })
        .collect()
}

/// View a polynomial in `y` as a Puiseux series with exact coefficients.
pub fn gpoly_to_series(p: &GPoly) -> PuiseuxSeries {
    let terms = p
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(j, c)| {
            (BigRational::from(BigInt::from(j)), CoeffValue::Exact(c.clone()))
        })
        .collect();
    PuiseuxSeries::from_terms(terms, Trunc::Infinite)
}

/// Evaluate `f(arc(y), y)` by Horner's rule in `x`.
pub fn substitute_arc(f: &BivariatePoly, arc: &PuiseuxSeries, ctx: &Ctx) -> Result<PuiseuxSeries> {
    let xp = f.to_xpoly();
    if xp.is_empty() {
        return Ok(PuiseuxSeries::exact_zero());
    }
    let mut acc = gpoly_to_series(xp.last().unwrap());
    for a in xp.iter().rev().skip(1) {
        acc = acc.mul(arc, ctx)?.add(&gpoly_to_series(a), ctx)?;
    }
    Ok(acc)
}

/// Expand `F(X, y) = f(arc(y) + X, y)` as a polynomial in `X`; entry `m`
/// of the result is the coefficient series of `X^m`.  Computed by binomial
/// accumulation, deliberately independent of `substitute_arc` (entry 0
/// must agree with it).
pub fn shift_expand(
    f: &BivariatePoly,
    arc: &PuiseuxSeries,
    ctx: &Ctx,
) -> Result<Vec<PuiseuxSeries>> {
    let xp = f.to_xpoly();
    if xp.is_empty() {
        return Ok(vec![PuiseuxSeries::exact_zero()]);
    }
    let dx = xp.len() - 1;
    let mut pows = Vec::with_capacity(dx + 1);
    pows.push(PuiseuxSeries::constant(CoeffValue::one()));
    for p in 1..=dx {
        let next = pows[p - 1].mul(arc, ctx)?;
        pows.push(next);
    }
    let mut out = vec![PuiseuxSeries::exact_zero(); dx + 1];
    for (i, a) in xp.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let s = gpoly_to_series(a);
        for m in 0..=i {
            let binom = num_integer::binomial(BigInt::from(i), BigInt::from(m));
            let scaled = s.scale(
                &CoeffValue::Exact(GaussianRational::from_rational(BigRational::from(binom))),
                ctx,
            )?;
            let term = scaled.mul(&pows[i - m], ctx)?;
            out[m] = out[m].add(&term, ctx)?;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gr(n: i64) -> GaussianRational {
        GaussianRational::from_int(n)
    }

    fn xpy() -> BivariatePoly {
        // x + y
        BivariatePoly::from_terms(vec![(1, 0, gr(1)), (0, 1, gr(1))])
    }

    fn xmy() -> BivariatePoly {
        // x - y
        BivariatePoly::from_terms(vec![(1, 0, gr(1)), (0, 1, gr(-1))])
    }

    #[test]
    fn ring_basics() {
        let p = xpy().mul(&xmy());
        // x^2 - y^2
        assert_eq!(p.coeff(2, 0), gr(1));
        assert_eq!(p.coeff(0, 2), gr(-1));
        assert_eq!(p.coeff(1, 1), gr(0));
        assert_eq!(p.total_degree(), Some(2));
        assert_eq!(p.order(), Some(2));
        let dx = p.derivative_x();
        assert_eq!(dx.coeff(1, 0), gr(2));
        assert_eq!(dx.num_terms(), 1);
        assert_eq!(p.eval(&gr(3), &gr(2)), gr(5));
    }

    #[test]
    fn gcd_picks_common_factor() {
        let a = xpy().mul(&xmy());
        let b = xpy().mul(&BivariatePoly::from_terms(vec![(1, 0, gr(1)), (0, 1, gr(2))]));
        let g = a.gcd(&b);
        assert_eq!(g, xpy());
        // Coprime pair.
        let g2 = xmy().gcd(&BivariatePoly::from_terms(vec![(1, 0, gr(1)), (0, 1, gr(2))]));
        assert!(g2.is_unit());
    }

    #[test]
    fn gcd_handles_pure_y_content() {
        // a = y^2 (x+y), b = y (x-y): gcd = y.
        let ypoly = BivariatePoly::y();
        let a = ypoly.pow(2).mul(&xpy());
        let b = ypoly.mul(&xmy());
        let g = a.gcd(&b);
        assert_eq!(g, ypoly);
    }

    #[test]
    fn exact_division_roundtrip() {
        let a = xpy().pow(2).mul(&xmy());
        let q = a.exact_div(&xpy());
        assert_eq!(q, xpy().mul(&xmy()));
        assert!(xpy().divides(&a));
        assert!(!BivariatePoly::from_terms(vec![(1, 0, gr(1)), (0, 1, gr(5))]).divides(&a));
    }

    #[test]
    fn squarefree_decomposition_multiplicities() {
        // y * (x+y)^2 * (x-y)^3
        let f = BivariatePoly::y().mul(&xpy().pow(2)).mul(&xmy().pow(3));
        let parts = f.squarefree_decomposition();
        assert_eq!(parts.len(), 3);
        assert_eq!(parts[0].0, 1);
        assert_eq!(parts[0].1, BivariatePoly::y());
        assert_eq!(parts[1].0, 2);
        assert_eq!(parts[1].1.normalized(), xpy());
        assert_eq!(parts[2].0, 3);
        assert_eq!(parts[2].1.normalized(), xmy());
        // Reconstruction up to a constant.
        let mut back = BivariatePoly::one();
        for (m, g) in &parts {
            back = back.mul(&g.pow(*m));
        }
        assert_eq!(back.normalized(), f.normalized());
    }

    #[test]
    fn shear_moves_tangent_cone() {
        // f = y^3 + x^5 is not x-regular of order 3; after (x,y)->(x,y+sx)
        // the x^3 coefficient becomes s^3 != 0.
        let f = BivariatePoly::from_terms(vec![(0, 3, gr(1)), (5, 0, gr(1))]);
        let g = f.shear(&gr(2));
        assert_eq!(g.coeff(3, 0), gr(8));
        assert_eq!(g.order(), Some(3));
        // Shearing by 0 is the identity.
        assert_eq!(f.shear(&gr(0)), f);
    }

    #[test]
    fn homogeneous_part_and_cone_polynomial() {
        // f = x^2 y + x y^2 + y^5: H_3 = x^2 y + x y^2 -> z^2 + z.
        let f = BivariatePoly::from_terms(vec![(2, 1, gr(1)), (1, 2, gr(1)), (0, 5, gr(1))]);
        assert_eq!(f.order(), Some(3));
        let h = f.homogeneous_to_univariate(3);
        assert_eq!(h.coeffs(), &[gr(0), gr(1), gr(1)]);
    }

    #[test]
    fn arc_substitution_kills_branch() {
        let c = Ctx::default();
        // f = x^2 - y^3, arc x = y^(3/2): f(arc, y) = 0 exactly.
        let f = BivariatePoly::from_terms(vec![(2, 0, gr(1)), (0, 3, gr(-1))]);
        let arc = PuiseuxSeries::monomial(
            BigRational::new(3.into(), 2.into()),
            CoeffValue::one(),
        );
        let v = substitute_arc(&f, &arc, &c).unwrap();
        assert!(v.is_exact_zero());
        let fx = shift_expand(&f, &arc, &c).unwrap();
        assert!(fx[0].is_exact_zero());
        // dF/dX at the arc is 2*y^(3/2).
        assert_eq!(fx[1].min_exponent().unwrap(), &BigRational::new(3.into(), 2.into()));
    }

    #[test]
    fn stretch_and_divide() {
        let f = BivariatePoly::from_terms(vec![(2, 1, gr(1)), (0, 3, gr(4))]);
        let g = f.stretch_y(2);
        assert_eq!(g.coeff(2, 2), gr(1));
        assert_eq!(g.coeff(0, 6), gr(4));
        let h = g.divide_y_pow(2);
        assert_eq!(h.coeff(2, 0), gr(1));
        assert_eq!(h.coeff(0, 4), gr(4));
    }

    fn arb_poly() -> impl Strategy<Value = BivariatePoly> {
        proptest::collection::vec(
            ((0u32..4, 0u32..4), -4i64..5),
            1..6,
        )
        .prop_map(|terms| {
            BivariatePoly::from_terms(
                terms.into_iter().map(|((i, j), c)| (i, j, gr(c))).collect(),
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn prop_gcd_divides_both(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!a.is_zero() && !b.is_zero());
            let g = a.gcd(&b);
            prop_assert!(g.divides(&a));
            prop_assert!(g.divides(&b));
        }

        #[test]
        fn prop_gcd_sees_planted_factor(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!a.is_zero() && !b.is_zero());
            let f = xpy();
            let g = a.mul(&f).gcd(&b.mul(&f));
            prop_assert!(f.divides(&g));
        }

        #[test]
        fn prop_substitution_paths_agree(a in arb_poly()) {
            let c = Ctx::default();
            // Arc with a rational coefficient and ramification 2.
            let arc = PuiseuxSeries::from_terms(vec![
                (BigRational::from(BigInt::from(1)), CoeffValue::from_int(2)),
                (BigRational::new(3.into(), 2.into()), CoeffValue::from_int(-1)),
            ], Trunc::Infinite);
            let direct = substitute_arc(&a, &arc, &c).unwrap();
            let expanded = shift_expand(&a, &arc, &c).unwrap();
            let diff = direct.sub(&expanded[0], &c).unwrap();
            prop_assert!(diff.is_exact_zero());
        }
    }
}
