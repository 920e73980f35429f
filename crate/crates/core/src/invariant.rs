//! The invariant: leading values of a germ along its tangential polar
//! branches, grouped by singular tangent-cone line and reduced modulo
//! rescaling.
//!
//! For a prepared germ `f` of order `k`, every branch `x = gamma(y)` of
//! the polar curve `df/dx = 0` carries the pair `(h_0, c_0)` with
//! `f(gamma(y), y) = c_0 y^{h_0} + ...`.  Branches with `h_0 > k` are the
//! *tangential* ones; each is tangent to a singular line of the tangent
//! cone (a repeated factor of the initial form), and the multiset of
//! formal terms `c_0 y^{h_0}` collected over one line `l` is its class
//! `I(l)`.  Rescaling `y` by a unit `w` multiplies each `c_j` by
//! `w^{m_j}`, `m_j = N h_j` with `N` the common denominator, so `I(l)` is
//! only well-defined modulo that action; the invariant of `f` is the
//! multiset of classes over all singular lines.
//!
//! Canonicalization picks the representative reachable by the finitely
//! many unit actions that normalize some term to 1 and is smallest in the
//! term-list order.  The reachable set is the same from any starting point
//! of an orbit, which makes the minimum both orbit-canonical and a fixed
//! point of the procedure, so germ comparison reduces to multiset equality
//! of canonical forms.

use crate::algebra::{
    uni_roots, uni_roots_coeff, BivariatePoly, CPoly, CoeffValue, GPoly, GaussianRational,
};
use crate::asymptotics::{certified_expansion, ArcLocalData};
use crate::ctx::Ctx;
use crate::germ::{analyze_germ, singular_cone_lines, GermProfile};
use crate::newton_puiseux::PuiseuxArc;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use std::cmp::Ordering;

/// One polar branch with its leading data.
#[derive(Debug, Clone)]
pub struct PolarArcInfo {
    pub arc: PuiseuxArc,
    pub data: ArcLocalData,
    /// Whether `h_0 > k`, i.e. the branch contributes to the invariant.
    pub tangential: bool,
}

/// The class `I(l)` of one singular tangent-cone line.
#[derive(Debug, Clone)]
pub struct LineClass {
    /// Slope of the line `x = a*y` (presentation only; classes are
    /// compared across germs without pairing lines).
    pub line: CoeffValue,
    /// Terms `(h_0, c_0)` as computed, one per tangential arc.
    pub raw: Vec<(BigRational, CoeffValue)>,
    /// Canonical representative of the orbit of `raw` under rescaling.
    pub canonical: Vec<(BigRational, CoeffValue)>,
}

/// Everything the pipeline knows about one germ.
#[derive(Debug, Clone)]
pub struct GermInvariant {
    pub profile: GermProfile,
    /// All polar branches, tangential or not (the non-tangential ones are
    /// reported and cross-checked but do not enter the invariant).
    pub arcs: Vec<PolarArcInfo>,
    /// Canonicalized classes, in a deterministic order.
    pub classes: Vec<LineClass>,
}

/// Comparison verdict for two germs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    InvariantsEqual,
    Distinct(DistinctReason),
    /// The precision budget ran out before every comparison was decided.
    Indeterminate,
}

/// Why two germs are distinct.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DistinctReason {
    /// Different multiplicity at the origin.
    MultiplicityMismatch,
    /// Same multiplicity, different canonical invariants.
    InvariantMismatch,
}

/// All polar branches of the prepared germ, with certified leading data.
///
/// The polar curve is decomposed into squarefree factors first (expansion
/// needs squarefree inputs), but every returned multiplicity counts roots
/// of the polar itself: an arc bundling `r` roots of a factor appearing
/// with exponent `b` carries multiplicity `b * r`.  Keeping the polar
/// count intact matters — a coordinate change can turn one doubled root
/// into a pair of distinct ones, and the invariant must see two terms in
/// both presentations.
pub fn polar_arcs(prof: &GermProfile, ctx: &Ctx) -> Result<Vec<(PuiseuxArc, ArcLocalData)>> {
    let k = prof.order;
    let polar = prof.f.derivative_x();
    let t0 = BigRational::from_integer(BigInt::from(u64::from(k) + 1 + u64::from(ctx.guard)));
    let mut out = Vec::new();
    let mut weighted_total = 0usize;
    for (b, factor) in polar.squarefree_decomposition() {
        if factor.order() != Some(0) {
            let pairs = match certified_expansion(&prof.f, &factor, &t0, ctx) {
                Err(Error::ArcInZeroSet) => return Err(Error::SharedComponent),
                other => other?,
            };
            for (mut arc, data) in pairs {
                arc.multiplicity *= b as usize;
                weighted_total += arc.multiplicity;
                out.push((arc, data));
            }
        }
    }
    if weighted_total != (k - 1) as usize {
        // A miscounted ball cluster; retrying at higher precision is the
        // only sound continuation.
        return Err(Error::Indeterminate);
    }
    Ok(out)
}

/// Polar branches tagged by tangentiality (`h_0 > k`).
pub fn classify_polar_arcs(prof: &GermProfile, ctx: &Ctx) -> Result<Vec<PolarArcInfo>> {
    let k = BigRational::from_integer(BigInt::from(prof.order));
    Ok(polar_arcs(prof, ctx)?
        .into_iter()
        .map(|(arc, data)| {
            let tangential = data.h0 > k;
            PolarArcInfo { arc, data, tangential }
        })
        .collect())
}

fn term_cmp(
    a: &(BigRational, CoeffValue),
    b: &(BigRational, CoeffValue),
    ctx: &Ctx,
) -> Result<Ordering> {
    match a.0.cmp(&b.0) {
        Ordering::Equal => a.1.cmp_lex(&b.1, ctx),
        other => Ok(other),
    }
}

fn sort_terms(v: &mut [(BigRational, CoeffValue)], ctx: &Ctx) -> Result<()> {
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && term_cmp(&v[j - 1], &v[j], ctx)? == Ordering::Greater {
            v.swap(j - 1, j);
            j -= 1;
        }
    }
    Ok(())
}

fn term_lists_cmp(
    a: &[(BigRational, CoeffValue)],
    b: &[(BigRational, CoeffValue)],
    ctx: &Ctx,
) -> Result<Ordering> {
    for (x, y) in a.iter().zip(b.iter()) {
        match term_cmp(x, y, ctx)? {
            Ordering::Equal => continue,
            other => return Ok(other),
        }
    }
    Ok(a.len().cmp(&b.len()))
}

/// Rescaling exponents `m_j = N h_j` for a term multiset.
fn action_exponents(terms: &[(BigRational, CoeffValue)]) -> Result<(BigInt, Vec<u32>)> {
    let n = terms
        .iter()
        .fold(BigInt::one(), |acc, (h, _)| acc.lcm(h.denom()));
    let ms = terms
        .iter()
        .map(|(h, _)| {
            (h * BigRational::from_integer(n.clone()))
                .to_integer()
                .to_u32()
                .ok_or(Error::PrecisionExhausted)
        })
        .collect::<Result<Vec<u32>>>()?;
    Ok((n, ms))
}

fn apply_action(
    terms: &[(BigRational, CoeffValue)],
    ms: &[u32],
    w: &CoeffValue,
    ctx: &Ctx,
) -> Result<Vec<(BigRational, CoeffValue)>> {
    terms
        .iter()
        .zip(ms.iter())
        .map(|((h, c), &m)| Ok((h.clone(), c.mul(&w.pow(m, ctx)?, ctx)?)))
        .collect()
}

/// Units normalizing term `j` to 1: the roots of `c_j z^{m_j} - 1`.
fn normalizing_units(c: &CoeffValue, m: u32, ctx: &Ctx) -> Result<Vec<CoeffValue>> {
    if let Some(q) = c.as_exact() {
        let mut coeffs = vec![GaussianRational::from_int(-1)];
        coeffs.extend(std::iter::repeat(GaussianRational::default()).take(m as usize - 1));
        coeffs.push(q.clone());
        let p = GPoly::new(coeffs);
        return Ok(uni_roots(&p, ctx)?.into_iter().map(|r| r.value).collect());
    }
    let mut coeffs = vec![CoeffValue::from_int(-1)];
    coeffs.extend(std::iter::repeat(CoeffValue::zero()).take(m as usize - 1));
    coeffs.push(c.clone());
    let p = CPoly::new(coeffs);
    Ok(uni_roots_coeff(&p, ctx)?.into_iter().map(|r| r.value).collect())
}

/// Canonical representative of the orbit of `terms` under `y`-rescaling:
/// the smallest multiset (sorted by exponent, then coefficient order)
/// reachable by a unit that rescales some term to 1.  The reachable set is
/// orbit-intrinsic, so the result is a fixed point of the procedure and
/// independent of the input's presentation.
pub fn canonicalize(
    terms: &[(BigRational, CoeffValue)],
    ctx: &Ctx,
) -> Result<Vec<(BigRational, CoeffValue)>> {
    if terms.is_empty() {
        return Ok(Vec::new());
    }
    let (_, ms) = action_exponents(terms)?;
    let mut best: Option<Vec<(BigRational, CoeffValue)>> = None;
    let uniform = ms.iter().all(|&m| m == ms[0]);
    for (j, (_, c)) in terms.iter().enumerate() {
        let candidates = if uniform {
            // With a single exponent the m_j-th roots all act identically,
            // directly by 1/c_j.
            vec![CoeffValue::one().div(c, ctx)?]
        } else {
            normalizing_units(c, ms[j], ctx)?
        };
        for w in candidates {
            let mut scaled = if uniform {
                terms
                    .iter()
                    .map(|(h, cc)| Ok((h.clone(), cc.mul(&w, ctx)?)))
                    .collect::<Result<Vec<_>>>()?
            } else {
                apply_action(terms, &ms, &w, ctx)?
            };
            sort_terms(&mut scaled, ctx)?;
            match &best {
                Some(b) if term_lists_cmp(&scaled, b, ctx)? != Ordering::Less => {}
                _ => best = Some(scaled),
            }
        }
    }
    Ok(best.expect("nonempty term list yields at least one candidate"))
}

/// Compute the invariant of a raw input polynomial: validate, prepare,
/// expand, classify, and canonicalize.
pub fn invariant(f: &BivariatePoly, ctx: &Ctx) -> Result<GermInvariant> {
    let prof = analyze_germ(f)?;
    ctx.with_escalation(|c| {
        let arcs = classify_polar_arcs(&prof, c)?;
        let lines = singular_cone_lines(&prof, c)?;
        let mut classes = Vec::with_capacity(lines.len());
        let mut claimed = vec![false; arcs.len()];
        for line in &lines {
            let mut raw = Vec::new();
            for (idx, info) in arcs.iter().enumerate() {
                if !info.tangential {
                    continue;
                }
                if info.arc.tangent.eq_decide(&line.slope, c)? {
                    claimed[idx] = true;
                    for _ in 0..info.arc.multiplicity {
                        raw.push((info.data.h0.clone(), info.data.c0.clone()));
                    }
                }
            }
            sort_terms(&mut raw, c)?;
            let canonical = canonicalize(&raw, c)?;
            classes.push(LineClass { line: line.slope.clone(), raw, canonical });
        }
        // Every tangential arc must lie on a singular cone line.
        for (idx, info) in arcs.iter().enumerate() {
            if info.tangential && !claimed[idx] {
                return Err(Error::ConeConsistencyViolation);
            }
        }
        // Deterministic class order: by canonical term list.
        for i in 1..classes.len() {
            let mut j = i;
            while j > 0
                && term_lists_cmp(&classes[j - 1].canonical, &classes[j].canonical, c)?
                    == Ordering::Greater
            {
                classes.swap(j - 1, j);
                j -= 1;
            }
        }
        Ok(GermInvariant { profile: prof.clone(), arcs, classes })
    })
}

/// Decide whether two germs have equal invariants.
///
/// The order gate comes first (the multiplicity is itself invariant);
/// germs of equal order are compared by matching canonical classes as
/// multisets.  A run out of precision becomes an honest
/// [`Verdict::Indeterminate`].
pub fn compare(f: &BivariatePoly, g: &BivariatePoly, ctx: &Ctx) -> Result<Verdict> {
    let prof_f = analyze_germ(f)?;
    let prof_g = analyze_germ(g)?;
    if prof_f.order != prof_g.order {
        return Ok(Verdict::Distinct(DistinctReason::MultiplicityMismatch));
    }
    let inv_f = match invariant(f, ctx) {
        Ok(v) => v,
        Err(Error::PrecisionExhausted) => return Ok(Verdict::Indeterminate),
        Err(e) => return Err(e),
    };
    let inv_g = match invariant(g, ctx) {
        Ok(v) => v,
        Err(Error::PrecisionExhausted) => return Ok(Verdict::Indeterminate),
        Err(e) => return Err(e),
    };
    match invariants_equal(&inv_f, &inv_g, ctx) {
        Ok(true) => Ok(Verdict::InvariantsEqual),
        Ok(false) => Ok(Verdict::Distinct(DistinctReason::InvariantMismatch)),
        Err(e) if e.is_indeterminate() => Ok(Verdict::Indeterminate),
        Err(e) => Err(e),
    }
}

/// Multiset equality of canonical classes (lines are not paired).
pub fn invariants_equal(a: &GermInvariant, b: &GermInvariant, ctx: &Ctx) -> Result<bool> {
    if a.classes.len() != b.classes.len() {
        return Ok(false);
    }
    // Both class lists are already sorted by canonical form, so multiset
    // equality is positionwise equality.
    for (ca, cb) in a.classes.iter().zip(b.classes.iter()) {
        if term_lists_cmp(&ca.canonical, &cb.canonical, ctx)? != Ordering::Equal {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Direct search for a unit matching two raw multisets — the definition
/// of the equivalence, without canonicalization.  Quadratic and only used
/// to cross-check the canonical path in tests.
pub fn raw_orbits_match(
    a: &[(BigRational, CoeffValue)],
    b: &[(BigRational, CoeffValue)],
    ctx: &Ctx,
) -> Result<bool> {
    if a.len() != b.len() {
        return Ok(false);
    }
    if a.is_empty() {
        return Ok(true);
    }
    let (_, ms_a) = action_exponents(a)?;
    let (n_b, _) = action_exponents(b)?;
    if action_exponents(a)?.0 != n_b {
        // Different exponent denominators: the h-multisets differ.
        return Ok(false);
    }
    // The first term of `a` must map onto some term of `b` with the same
    // exponent; enumerate the finitely many units realizing that.
    for (h, cb) in b {
        if *h != a[0].0 {
            continue;
        }
        let target = cb.div(&a[0].1, ctx)?;
        for w in nth_roots_of(&target, ms_a[0], ctx)? {
            let mut scaled = apply_action(a, &ms_a, &w, ctx)?;
            sort_terms(&mut scaled, ctx)?;
            let mut sorted_b = b.to_vec();
            sort_terms(&mut sorted_b, ctx)?;
            if term_lists_cmp(&scaled, &sorted_b, ctx)? == Ordering::Equal {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

fn nth_roots_of(v: &CoeffValue, m: u32, ctx: &Ctx) -> Result<Vec<CoeffValue>> {
    if m == 0 {
        return Ok(vec![CoeffValue::one()]);
    }
    if let Some(q) = v.as_exact() {
        return crate::algebra::nth_roots_exact(q, m, ctx);
    }
    let mut coeffs = vec![v.neg()];
    coeffs.extend(std::iter::repeat(CoeffValue::zero()).take(m as usize - 1));
    coeffs.push(CoeffValue::one());
    Ok(uni_roots_coeff(&CPoly::new(coeffs), ctx)?
        .into_iter()
        .map(|r| r.value)
        .collect())
}
