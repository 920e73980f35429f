//! Newton-Puiseux expansion of plane curve branches.
//!
//! Given a curve `g(x, y) = 0` that is mini-regular in `x` of order `m`,
//! the classical algorithm produces the `m` fractional power series roots
//! `x = gamma(y)` through the origin: build the Newton polygon of the
//! support, read off one characteristic polynomial per edge of positive
//! slope, and recurse on each root after the substitution
//! `x -> y^(p/q) * (c + x)`.  Fractional slopes are handled by stretching
//! `y -> y^q` first, so every working polynomial stays a genuine polynomial;
//! accumulated stretches are divided back out of the exponents at the end.
//!
//! Conventions baked in here:
//!
//! * Characteristic polynomials are taken at full horizontal extent (gaps
//!   between lattice points filled with zeros), so conjugate branches show
//!   up as separate roots and every Puiseux root yields its own arc.  The
//!   sum of arc multiplicities is exactly `m`.
//! * An `x`-power dividing the working polynomial is the arc that
//!   terminates exactly at the collected prefix (for the input curve
//!   itself, the branch `x = 0`).  The polygon reports it as a vertical
//!   pseudo-edge with `slope: None`.
//! * Expansion stops once the next exponent would reach the requested
//!   truncation order; the unexplored tail is recorded in the series
//!   truncation marker and in the arc multiplicity (a bundle of branches
//!   that still agree below the truncation stays one arc).
//! * Coefficients start exact and stay exact or witnessed while edge roots
//!   are rational or appear at the first level; a repeated irrational root
//!   in an already-extended field downgrades the affected subtree to
//!   certified balls, and zero tests that balls cannot decide surface as
//!   precision escalation rather than unsound output.

use crate::algebra::{uni_roots_coeff, BivariatePoly, CPoly, CoeffValue, PuiseuxSeries, Trunc};
use crate::ctx::Ctx;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// One edge of a Newton polygon, with the data needed to branch on it.
#[derive(Debug, Clone)]
pub struct NewtonPolygonEdge {
    /// Exponent increment `p/q` carried by this edge; `None` marks the
    /// vertical pseudo-edge recording that `x` divides the polynomial (the
    /// exactly terminating branch).
    pub slope: Option<BigRational>,
    /// Support points `(i, ord_y a_i)` lying on the edge.
    pub support: Vec<(u32, BigRational)>,
    /// Characteristic polynomial; its degree is the horizontal extent of
    /// the edge and its roots are the leading coefficients of the branches
    /// the edge carries.
    pub char_poly: CPoly,
}

/// One branch (or still-agreeing bundle of branches) of a curve, as a
/// truncated Puiseux series `x = gamma(y)`.
#[derive(Debug, Clone)]
pub struct PuiseuxArc {
    /// The collected series.  Its truncation marker is `Infinite` when the
    /// branch terminated exactly.
    pub series: PuiseuxSeries,
    /// Number of Puiseux roots of the defining curve sharing this prefix.
    pub multiplicity: usize,
    /// Coefficient of `y^1`, i.e. the slope `a` of the tangent line
    /// `x = a*y` (zero when the leading exponent exceeds 1).  Only
    /// meaningful when the series is resolved past exponent 1.
    pub tangent: CoeffValue,
    /// Largest exponent at which the prefix is pinned down; substituting
    /// the arc back into its curve must give a series of order strictly
    /// beyond this.
    pub residual_floor: BigRational,
}

/// Working polynomial for the recursion: sparse in `(x_deg, y_deg)` with
/// coefficients that may leave the exact field once irrational edge roots
/// get substituted in.
#[derive(Debug, Clone)]
struct WPoly {
    terms: BTreeMap<(u32, u32), CoeffValue>,
}

impl WPoly {
    fn from_exact(g: &BivariatePoly) -> Self {
        let terms = g
            .terms()
            .map(|(&k, c)| (k, CoeffValue::Exact(c.clone())))
            .collect();
        WPoly { terms }
    }

    fn accumulate(&mut self, key: (u32, u32), v: CoeffValue, ctx: &Ctx) -> Result<()> {
        let merged = match self.terms.remove(&key) {
            Some(old) => old.add(&v, ctx)?,
            None => v,
        };
        if !merged.is_provably_zero() {
            self.terms.insert(key, merged);
        }
        Ok(())
    }

    /// True `y`-order of every `x`-column, removing stored coefficients
    /// that prove to be zero.  Columns that vanish entirely disappear from
    /// the result; a ball coefficient that cannot be decided surfaces as
    /// `Indeterminate` for the caller's escalation loop.
    fn resolve_columns(&mut self, ctx: &Ctx) -> Result<BTreeMap<u32, u32>> {
        let cols: Vec<u32> = {
            let mut cs: Vec<u32> = self.terms.keys().map(|k| k.0).collect();
            cs.dedup();
            cs
        };
        let mut orders = BTreeMap::new();
        for i in cols {
            let js: Vec<u32> = self
                .terms
                .range((i, 0)..=(i, u32::MAX))
                .map(|(k, _)| k.1)
                .collect();
            for j in js {
                if self.terms[&(i, j)].is_zero(ctx)? {
                    self.terms.remove(&(i, j));
                } else {
                    orders.insert(i, j);
                    break;
                }
            }
        }
        Ok(orders)
    }

    fn stretch_y(&self, q: u32) -> Result<Self> {
        let mut terms = BTreeMap::new();
        for (&(i, j), c) in &self.terms {
            let jq = j.checked_mul(q).ok_or(Error::PrecisionExhausted)?;
            terms.insert((i, jq), c.clone());
        }
        Ok(WPoly { terms })
    }

    /// Substitute `x -> y^p * (c + x)` and divide out the content power of
    /// `y`.  (Dividing by a trailing unit power of `y` does not change the
    /// `x`-roots; it only keeps exponents small.)
    fn substitute(&self, p: u32, c: &CoeffValue, ctx: &Ctx) -> Result<Self> {
        let max_i = self.terms.keys().map(|k| k.0).max().unwrap_or(0);
        let mut cpow = vec![CoeffValue::one()];
        for e in 1..=max_i as usize {
            cpow.push(cpow[e - 1].mul(c, ctx)?);
        }
        let mut out = WPoly { terms: BTreeMap::new() };
        for (&(i, j), a) in &self.terms {
            let base = i
                .checked_mul(p)
                .and_then(|ip| ip.checked_add(j))
                .ok_or(Error::PrecisionExhausted)?;
            for s in 0..=i {
                let bin = num_integer::binomial(BigInt::from(i), BigInt::from(s));
                let mut v = a.mul(&cpow[(i - s) as usize], ctx)?;
                if !bin.is_one() {
                    v = v.mul(&coeff_from_bigint(bin), ctx)?;
                }
                out.accumulate((s, base), v, ctx)?;
            }
        }
        if let Some(&shift) = out.terms.keys().map(|(_, j)| j).min() {
            if shift > 0 {
                out.terms = out
                    .terms
                    .into_iter()
                    .map(|((i, j), c)| ((i, j - shift), c))
                    .collect();
            }
        }
        Ok(out)
    }
}

fn coeff_from_bigint(n: BigInt) -> CoeffValue {
    CoeffValue::Exact(crate::algebra::GaussianRational::from_rational(
        BigRational::from_integer(n),
    ))
}

/// Edge of the resolved polygon, in raw integer data: slope `p/q` in
/// lowest terms, endpoints `(i0, j0)`-`(i1, j1)`.
#[derive(Debug, Clone)]
struct EdgeInfo {
    p: i64,
    q: i64,
    i0: i64,
    j0: i64,
    i1: i64,
}

/// Lower convex hull of support points sorted by `i`; edges of strictly
/// positive slope are the ones carrying branches through the origin.
fn positive_edges(orders: &BTreeMap<u32, u32>) -> Vec<EdgeInfo> {
    let pts: Vec<(i64, i64)> = orders.iter().map(|(&i, &j)| (i as i64, j as i64)).collect();
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for &p in &pts {
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            let cross = (b.0 - a.0) * (p.1 - a.1) - (b.1 - a.1) * (p.0 - a.0);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    let mut edges = Vec::new();
    for pair in hull.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        if a.1 <= b.1 {
            continue;
        }
        let g = (a.1 - b.1).gcd(&(b.0 - a.0));
        edges.push(EdgeInfo {
            p: (a.1 - b.1) / g,
            q: (b.0 - a.0) / g,
            i0: a.0,
            j0: a.1,
            i1: b.0,
        });
    }
    edges
}

/// Characteristic polynomial of an edge at full horizontal extent: the
/// coefficient of `z^k` is the support entry at `(i0 + k, j0 - (p/q) k)`,
/// zero where that exponent is fractional or absent.
fn edge_char_poly(g: &WPoly, e: &EdgeInfo) -> CPoly {
    let extent = (e.i1 - e.i0) as usize;
    let mut coeffs = vec![CoeffValue::zero(); extent + 1];
    for (k, slot) in coeffs.iter_mut().enumerate() {
        let k = k as i64;
        if k % e.q != 0 {
            continue;
        }
        let j = e.j0 - e.p * (k / e.q);
        if j < 0 {
            continue;
        }
        if let Some(v) = g.terms.get(&((e.i0 + k) as u32, j as u32)) {
            *slot = v.clone();
        }
    }
    CPoly::new(coeffs)
}

/// Newton polygon of an exact curve: the edges of strictly positive slope
/// (descending), preceded by the vertical pseudo-edge when `x` divides.
pub fn newton_polygon(g: &BivariatePoly) -> Result<Vec<NewtonPolygonEdge>> {
    if g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let ctx = Ctx::default();
    let mut w = WPoly::from_exact(g);
    let orders = w.resolve_columns(&ctx)?;
    let mut out = Vec::new();
    let (&content, &jc) = orders.iter().next().expect("nonzero polynomial has support");
    if content > 0 {
        let lead = w.terms[&(content, jc)].clone();
        let mut coeffs = vec![CoeffValue::zero(); content as usize + 1];
        coeffs[content as usize] = lead;
        out.push(NewtonPolygonEdge {
            slope: None,
            support: vec![(content, BigRational::from_integer(BigInt::from(jc)))],
            char_poly: CPoly::new(coeffs),
        });
    }
    for e in positive_edges(&orders) {
        let char_poly = edge_char_poly(&w, &e);
        let support = orders
            .iter()
            .filter(|(&i, &j)| {
                let (i, j) = (i as i64, j as i64);
                i >= e.i0 && i <= e.i1 && (j - e.j0) * e.q == -e.p * (i - e.i0)
            })
            .map(|(&i, &j)| (i, BigRational::from_integer(BigInt::from(j))))
            .collect();
        out.push(NewtonPolygonEdge {
            slope: Some(BigRational::new(BigInt::from(e.p), BigInt::from(e.q))),
            support,
            char_poly,
        });
    }
    Ok(out)
}

fn make_arc(
    prefix: &[(BigRational, CoeffValue)],
    trunc: Trunc,
    multiplicity: usize,
) -> PuiseuxArc {
    let series = PuiseuxSeries::from_terms(prefix.to_vec(), trunc);
    let one = BigRational::one();
    let tangent = if series.trunc().allows(&one) {
        series.coeff_at(&one)
    } else {
        CoeffValue::zero()
    };
    let residual_floor = prefix
        .last()
        .map(|(e, _)| e.clone())
        .unwrap_or_else(BigRational::zero);
    PuiseuxArc { series, multiplicity, tangent, residual_floor }
}

#[allow(clippy::too_many_arguments)]
fn recurse(
    mut g: WPoly,
    q_total: i64,
    abs_off: i64,
    prefix: &[(BigRational, CoeffValue)],
    t: &BigRational,
    ctx: &Ctx,
    budget: &mut usize,
    out: &mut Vec<PuiseuxArc>,
) -> Result<()> {
    if *budget == 0 {
        return Err(Error::PrecisionExhausted);
    }
    *budget -= 1;
    let orders = g.resolve_columns(ctx)?;
    let Some(&content) = orders.keys().next() else {
        return Err(Error::ZeroPolynomial);
    };
    if content > 0 {
        out.push(make_arc(prefix, Trunc::Infinite, content as usize));
    }
    for edge in positive_edges(&orders) {
        let char_poly = edge_char_poly(&g, &edge);
        let roots = if char_poly.degree() == Some(1) {
            // Linear edge: one root by exact division in whatever field the
            // coefficients currently live in.
            let value = char_poly.coeff(0).neg().div(&char_poly.coeff(1), ctx)?;
            vec![crate::algebra::RootEstimate { value, multiplicity: 1 }]
        } else {
            uni_roots_coeff(&char_poly, ctx)?
        };
        let next_q = q_total.checked_mul(edge.q).ok_or(Error::PrecisionExhausted)?;
        let next_off = abs_off
            .checked_mul(edge.q)
            .and_then(|v| v.checked_add(edge.p))
            .ok_or(Error::PrecisionExhausted)?;
        let next_exp = BigRational::new(BigInt::from(next_off), BigInt::from(next_q));
        if next_exp >= *t {
            // The next term already reaches the requested order: leave each
            // root as a truncated bundle.
            for r in roots {
                out.push(make_arc(prefix, Trunc::At(next_exp.clone()), r.multiplicity));
            }
            continue;
        }
        let stretched = g.stretch_y(edge.q as u32)?;
        for r in roots {
            let g1 = stretched.substitute(edge.p as u32, &r.value, ctx)?;
            let mut pfx = prefix.to_vec();
            pfx.push((next_exp.clone(), r.value));
            recurse(g1, next_q, next_off, &pfx, t, ctx, budget, out)?;
        }
    }
    Ok(())
}

/// All Puiseux roots of `g` through the origin, each truncated no earlier
/// than order `t`.  Requires `g` nonzero and mini-regular in `x`; the arc
/// multiplicities sum to `ord g`.
pub fn expand_branches(g: &BivariatePoly, t: &BigRational, ctx: &Ctx) -> Result<Vec<PuiseuxArc>> {
    let m = g.order().ok_or(Error::ZeroPolynomial)?;
    if g.coeff(m, 0).is_zero() {
        return Err(Error::NotMiniRegular);
    }
    ctx.with_escalation(|c| {
        let mut out = Vec::new();
        let mut budget = 200_000usize;
        recurse(WPoly::from_exact(g), 1, 0, &[], t, c, &mut budget, &mut out)?;
        Ok(out)
    })
}

/// Whether two series agree on every exponent below both truncation
/// markers.
fn series_agree(a: &PuiseuxSeries, b: &PuiseuxSeries, ctx: &Ctx) -> Result<bool> {
    let bound = a.trunc().min(b.trunc());
    let mut exps: Vec<BigRational> = a
        .terms()
        .chain(b.terms())
        .map(|(e, _)| e.clone())
        .filter(|e| bound.allows(e))
        .collect();
    exps.sort();
    exps.dedup();
    for e in exps {
        if !a.coeff_at(&e).eq_decide(&b.coeff_at(&e), ctx)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Re-expand `g` to the higher order `t_new` and return the continuation
/// of `arc`.  If the bundle split in the meantime, the sub-branch that
/// stayed thickest (ties broken by expansion order) represents it.
pub fn refine_arc(
    g: &BivariatePoly,
    arc: &PuiseuxArc,
    t_new: &BigRational,
    ctx: &Ctx,
) -> Result<PuiseuxArc> {
    let mut best: Option<PuiseuxArc> = None;
    for cand in expand_branches(g, t_new, ctx)? {
        if series_agree(&arc.series, &cand.series, ctx)? {
            match &best {
                Some(b) if cand.multiplicity <= b.multiplicity => {}
                _ => best = Some(cand),
            }
        }
    }
    best.ok_or(Error::Indeterminate)
}
