//! Floating-point cross-check of the symbolic pipeline.
//!
//! Entirely independent of the certified machinery: the polar curve
//! `df/dx = 0` is solved numerically in `x` at a decreasing sequence of
//! real radii `y = r`, the roots are continued from radius to radius by
//! nearest-neighbour matching, and `f` is evaluated along each track.  A
//! least-squares fit of `log|f|` against `log r` then estimates the
//! leading exponent `h_0` and the modulus `|c_0|` of each branch, which
//! are compared against the exact values.
//!
//! The root finder is a plain double-precision simultaneous iteration
//! with one extended-precision retry per radius when a root cluster looks
//! ambiguous.  The phase of `c_0` is deliberately not fitted (it depends
//! on the branch of `y^{h_0}` along the ray); only `|c_0|` is checked.
//! None of this is certified — the oracle can only flag disagreement, it
//! never overrides the symbolic result.  Its documented blind spot is a
//! pair of branches whose separation is far below the clustering
//! tolerance at every reachable radius; such a pair is reported as a
//! collision or a track-count mismatch rather than silently merged.

use crate::algebra::{BigFloat, BivariatePoly, FloatComplex};
use crate::ctx::Ctx;
use crate::invariant::{invariant, PolarArcInfo};
use crate::{Error, Result};
use num_complex::Complex64;
use num_traits::ToPrimitive;

/// One numerically continued polar branch.
#[derive(Debug, Clone)]
pub struct BranchTrack {
    /// Strictly decreasing radii.
    pub radii: Vec<f64>,
    /// The continued root of `df/dx(·, r)` at each radius.
    pub points: Vec<Complex64>,
    /// `f` evaluated at `(point, r)`.
    pub values: Vec<Complex64>,
}

/// Comparison of one symbolic arc with its matched track.
#[derive(Debug, Clone)]
pub struct OracleRow {
    /// Text form of the truncated symbolic arc.
    pub arc: String,
    pub h0_sym: f64,
    pub h0_est: f64,
    pub c0_mod_sym: f64,
    pub c0_mod_est: f64,
    pub pass: bool,
}

/// The full cross-check report for one germ.
#[derive(Debug, Clone)]
pub struct OracleReport {
    /// Final starting radius (after any automatic reduction).
    pub r_start: f64,
    pub rows: Vec<OracleRow>,
    /// Human-readable remarks: collisions, count mismatches, retries.
    pub notes: Vec<String>,
    pub pass: bool,
}

/// Relative tolerance on the fitted exponent.
pub const H0_REL_TOL: f64 = 1e-3;
/// Relative tolerance on the fitted coefficient modulus.
pub const C0_MOD_REL_TOL: f64 = 1e-2;

fn rat_f64(q: &num_rational::BigRational) -> f64 {
    q.numer().to_f64().unwrap_or(f64::NAN) / q.denom().to_f64().unwrap_or(f64::NAN)
}

/// Coefficients of `p(x, y0)` as a complex polynomial in `x`, ascending.
fn x_poly_at(f: &BivariatePoly, y0: f64) -> Vec<Complex64> {
    let deg = f.degree_x().unwrap_or(0);
    let mut out = vec![Complex64::new(0.0, 0.0); deg as usize + 1];
    for ((i, j), c) in f.terms() {
        let w = y0.powi(*j as i32);
        out[*i as usize] += Complex64::new(rat_f64(c.re()), rat_f64(c.im())) * w;
    }
    out
}

fn eval_poly(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for c in coeffs.iter().rev() {
        acc = acc * z + c;
    }
    acc
}

/// `f(x0, y0)` in doubles.
fn eval_f(f: &BivariatePoly, x0: Complex64, y0: f64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for ((i, j), c) in f.terms() {
        let w = x0.powi(*i as i32) * y0.powi(*j as i32);
        acc += Complex64::new(rat_f64(c.re()), rat_f64(c.im())) * w;
    }
    acc
}

/// Simultaneous (Weierstrass) iteration on a monic-normalized polynomial.
/// Runs a fixed budget; multiple roots converge linearly and end up far
/// below the clustering tolerance.
fn weierstrass_f64(coeffs: &[Complex64]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    let lead = coeffs[n];
    let monic: Vec<Complex64> = coeffs.iter().map(|c| c / lead).collect();
    let bound = 1.0 + monic[..n].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..n)
        .map(|j| {
            seed * bound
                * Complex64::from_polar(0.5, 2.0 * std::f64::consts::PI * j as f64 / n as f64)
        })
        .collect();
    for _ in 0..400 {
        // Convergence is judged per iterate, relative to its own size:
        // roots far below the coefficient bound (e.g. x ~ r^e at tiny
        // radii) are still descending when the absolute steps look small.
        let mut rel_moved: f64 = 0.0;
        for j in 0..n {
            let mut denom = Complex64::new(1.0, 0.0);
            for l in 0..n {
                if l != j {
                    denom *= z[j] - z[l];
                }
            }
            if denom.norm() == 0.0 {
                // Coincident iterates: nudge apart and continue.
                z[j] += Complex64::new(1e-12 * bound, 1e-12 * bound);
                continue;
            }
            let step = eval_poly(&monic, z[j]) / denom;
            z[j] -= step;
            rel_moved = rel_moved.max(step.norm() / (z[j].norm() + 1e-300));
        }
        if rel_moved <= 1e-15 {
            break;
        }
    }
    z
}

/// Coefficients of `p(x, y0)` rebuilt from the exact rationals in
/// software floats — double-rounded coefficients lose ~√ε of root
/// separation to cancellation, so the extended retry must not reuse them.
fn x_poly_at_extended(f: &BivariatePoly, y0: f64, prec: u32) -> Vec<FloatComplex> {
    let deg = f.degree_x().unwrap_or(0) as usize;
    let degy = f.terms().map(|((_, j), _)| *j).max().unwrap_or(0) as usize;
    let rfc = FloatComplex::from_f64(y0, 0.0);
    let mut powers = vec![FloatComplex::from_f64(1.0, 0.0)];
    for j in 1..=degy {
        powers.push(powers[j - 1].mul(&rfc).round(prec).0);
    }
    let mut out = vec![FloatComplex::zero(); deg + 1];
    for ((i, j), c) in f.terms() {
        let re = BigFloat::from_rational(c.re(), prec).0;
        let im = BigFloat::from_rational(c.im(), prec).0;
        let term = FloatComplex::new(re, im).mul(&powers[*j as usize]).round(prec).0;
        out[*i as usize] = out[*i as usize].add(&term).round(prec).0;
    }
    out
}

/// The same simultaneous iteration in software floats at `prec` bits: the
/// one extended-precision retry used when double precision cannot
/// separate nearby roots.  Returns the refined roots in doubles together
/// with their minimal pairwise separation *before* the final rounding.
fn weierstrass_extended(
    f: &BivariatePoly,
    y0: f64,
    prec: u32,
    iters: usize,
) -> (Vec<Complex64>, f64) {
    let coeffs = x_poly_at_extended(f, y0, prec);
    let n = coeffs.len() - 1;
    if n == 0 {
        return (Vec::new(), f64::INFINITY);
    }
    let lead = coeffs[n].clone();
    let monic: Vec<FloatComplex> = coeffs
        .iter()
        .map(|c| c.div_nearest(&lead, prec).0)
        .collect();
    let bound = 1.0
        + monic[..n]
            .iter()
            .map(|c| {
                let (re, im) = c.to_f64_pair();
                Complex64::new(re, im).norm()
            })
            .fold(0.0, f64::max);
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<FloatComplex> = (0..n)
        .map(|j| {
            let s = seed
                * bound
                * Complex64::from_polar(0.5, 2.0 * std::f64::consts::PI * j as f64 / n as f64);
            FloatComplex::from_f64(s.re, s.im)
        })
        .collect();
    for _ in 0..iters {
        for j in 0..n {
            let mut denom = FloatComplex::from_f64(1.0, 0.0);
            for l in 0..n {
                if l != j {
                    denom = denom.mul(&z[j].sub(&z[l])).round(prec).0;
                }
            }
            if denom.is_zero() {
                continue;
            }
            let mut val = FloatComplex::zero();
            for c in monic.iter().rev() {
                val = val.mul(&z[j]).round(prec).0.add(c);
            }
            let step = val.div_nearest(&denom, prec).0;
            z[j] = z[j].sub(&step).round(prec).0;
        }
    }
    let mut sep = f64::INFINITY;
    for a in 0..n {
        for b in a + 1..n {
            let d = z[a].sub(&z[b]);
            let (dre, dim) = d.to_f64_pair();
            sep = sep.min(Complex64::new(dre, dim).norm());
        }
    }
    let out = z
        .iter()
        .map(|w| {
            let (re, im) = w.to_f64_pair();
            Complex64::new(re, im)
        })
        .collect();
    (out, sep)
}

fn min_pairwise(roots: &[Complex64]) -> f64 {
    let mut best = f64::INFINITY;
    for a in 0..roots.len() {
        for b in a + 1..roots.len() {
            best = best.min((roots[a] - roots[b]).norm());
        }
    }
    best
}

/// Roots of the (squarefree) polar in `x` at one radius.
///
/// Multiplicity is removed exactly beforehand, so every root here is
/// simple and "counted without multiplicity" never has to be decided
/// numerically.  When two simple roots sit below double-precision
/// resolution, the radius is re-solved once with software floats; only a
/// pair that stays unresolved even then is a collision.
fn polar_roots_at(polar_sf: &BivariatePoly, r: f64) -> Result<Vec<Complex64>> {
    let coeffs = x_poly_at(polar_sf, r);
    let roots = weierstrass_f64(&coeffs);
    if roots.len() <= 1 {
        return Ok(roots);
    }
    let scale = roots.iter().map(|z| z.norm()).fold(1e-280, f64::max);
    // Near-coincident simple roots sit on a ~sqrt(eps) noise floor in
    // doubles, so anything below 1e-3 of scale is suspect.
    if min_pairwise(&roots) > 1e-3 * scale {
        return Ok(roots);
    }
    let (refined, sep) = weierstrass_extended(polar_sf, r, 160, 200);
    let scale2 = refined.iter().map(|z| z.norm()).fold(1e-280, f64::max);
    // The refined roots must stay distinct as doubles to be trackable.
    if sep > 1e-15 * scale2 {
        return Ok(refined);
    }
    Err(Error::RootCollision)
}

/// Track the distinct polar roots from `r_start` down `steps` geometric
/// radii (ratio 1/2), continuing each track to the nearest root at the
/// next radius.
pub fn track_polar(f: &BivariatePoly, r_start: f64, steps: usize) -> Result<Vec<BranchTrack>> {
    assert!(steps >= 8, "too few radii for a stable fit");
    assert!(r_start > 0.0);
    let polar = f.derivative_x();
    if polar.degree_x().unwrap_or(0) == 0 {
        return Ok(Vec::new());
    }
    // Remove multiplicity exactly (plain rational gcd, no certification)
    // so every numeric root is simple and "distinct roots" never has to
    // be decided by clustering floats.
    let polar = polar.squarefree_part();
    let radii: Vec<f64> = (0..steps).map(|s| r_start * 0.5f64.powi(s as i32)).collect();
    let first = polar_roots_at(&polar, radii[0])?;
    let mut tracks: Vec<BranchTrack> = first
        .into_iter()
        .map(|p| BranchTrack {
            radii: vec![radii[0]],
            points: vec![p],
            values: vec![eval_f(f, p, radii[0])],
        })
        .collect();
    for &r in &radii[1..] {
        let roots = polar_roots_at(&polar, r)?;
        if roots.len() != tracks.len() {
            // A root genuinely appeared or vanished between radii: two
            // branches merged below resolution.
            return Err(Error::RootCollision);
        }
        // Globally greedy assignment: nearest pairs first.  Per-track
        // nearest-claiming double-books when the inter-branch gap is far
        // smaller than the radius-to-radius movement.
        let mut pairs = Vec::with_capacity(roots.len() * tracks.len());
        for (ti, t) in tracks.iter().enumerate() {
            let prev = *t.points.last().expect("nonempty track");
            for (ri, z) in roots.iter().enumerate() {
                pairs.push(((z - prev).norm(), ti, ri));
            }
        }
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut track_used = vec![false; tracks.len()];
        let mut root_used = vec![false; roots.len()];
        for (_, ti, ri) in pairs {
            if track_used[ti] || root_used[ri] {
                continue;
            }
            track_used[ti] = true;
            root_used[ri] = true;
            let t = &mut tracks[ti];
            t.radii.push(r);
            t.points.push(roots[ri]);
            t.values.push(eval_f(f, roots[ri], r));
        }
    }
    Ok(tracks)
}

/// Least-squares fit of `log|f|` against `log r` over the smallest-radius
/// half of a track: the slope estimates `h_0`, the intercept `|c_0|`.
pub fn fit_leading(track: &BranchTrack) -> Result<(f64, f64)> {
    let n = track.radii.len();
    if n < 8 {
        return Err(Error::DegenerateFit);
    }
    let lo = n / 2;
    let mut sx = 0.0;
    let mut sy = 0.0;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    let m = (n - lo) as f64;
    for idx in lo..n {
        let v = track.values[idx].norm();
        if !(v.is_finite() && v > 1e-290) {
            return Err(Error::DegenerateFit);
        }
        let x = track.radii[idx].ln();
        let y = v.ln();
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    let det = m * sxx - sx * sx;
    if det.abs() < 1e-12 {
        return Err(Error::DegenerateFit);
    }
    let slope = (m * sxy - sx * sy) / det;
    let intercept = (sy - slope * sx) / m;
    Ok((slope, intercept.exp()))
}

fn try_report(
    f: &BivariatePoly,
    arcs: &[PolarArcInfo],
    r_start: f64,
    steps: usize,
    notes: &mut Vec<String>,
) -> Result<Option<OracleReport>> {
    let tracks = match track_polar(f, r_start, steps) {
        Ok(t) => t,
        Err(Error::RootCollision) => {
            notes.push(format!("root collision at r_start = {r_start:e}"));
            return Ok(None);
        }
        Err(e) => return Err(e),
    };
    if tracks.len() != arcs.len() {
        notes.push(format!(
            "track count {} does not match arc count {} at r_start = {r_start:e}",
            tracks.len(),
            arcs.len()
        ));
        return Ok(None);
    }
    // Match tracks to arcs by position at the smallest radius.
    let r_min = r_start * 0.5f64.powi(steps as i32 - 1);
    let mut claimed = vec![false; arcs.len()];
    let mut rows = Vec::with_capacity(tracks.len());
    let mut all_pass = true;
    for t in &tracks {
        let p = *t.points.last().expect("nonempty track");
        let mut best: Option<(usize, f64)> = None;
        for (idx, info) in arcs.iter().enumerate() {
            if claimed[idx] {
                continue;
            }
            let (re, im) = info.arc.series.approx_eval_f64(r_min);
            let d = (p - Complex64::new(re, im)).norm();
            if best.map_or(true, |(_, bd)| d < bd) {
                best = Some((idx, d));
            }
        }
        let (idx, _) = best.expect("arc counts match");
        claimed[idx] = true;
        let info = &arcs[idx];
        let h0_sym = rat_f64(&info.data.h0);
        let (cr, ci) = info.data.c0.approx_f64();
        let c0_mod_sym = Complex64::new(cr, ci).norm();
        let (h0_est, c0_mod_est) = match fit_leading(t) {
            Ok(v) => v,
            Err(Error::DegenerateFit) => {
                notes.push(format!("degenerate fit at r_start = {r_start:e}"));
                return Ok(None);
            }
            Err(e) => return Err(e),
        };
        let pass = (h0_est - h0_sym).abs() <= H0_REL_TOL * h0_sym
            && (c0_mod_est - c0_mod_sym).abs() <= C0_MOD_REL_TOL * c0_mod_sym;
        all_pass &= pass;
        rows.push(OracleRow {
            arc: info.arc.series.to_text(),
            h0_sym,
            h0_est,
            c0_mod_sym,
            c0_mod_est,
            pass,
        });
    }
    Ok(Some(OracleReport {
        r_start,
        rows,
        notes: notes.clone(),
        pass: all_pass,
    }))
}

/// Run the full numeric cross-check against the symbolic pipeline.
///
/// The starting radius is reduced automatically (twice) after a collision,
/// a count mismatch, or an out-of-tolerance fit; the last report is
/// returned with its notes when every attempt fails.
pub fn cross_check(f: &BivariatePoly, ctx: &Ctx) -> Result<OracleReport> {
    cross_check_with(f, ctx, 1e-2, 24)
}

/// [`cross_check`] with an explicit starting radius and step count.
pub fn cross_check_with(
    f: &BivariatePoly,
    ctx: &Ctx,
    r_start: f64,
    steps: usize,
) -> Result<OracleReport> {
    let gi = invariant(f, ctx)?;
    // Track the prepared germ: arcs live in the sheared coordinates.
    let prepared = &gi.profile.f;
    let mut notes = Vec::new();
    let mut last: Option<OracleReport> = None;
    for attempt in 0..3 {
        let r = r_start * 0.1f64.powi(attempt);
        if let Some(report) = try_report(prepared, &gi.arcs, r, steps, &mut notes)? {
            if report.pass {
                return Ok(report);
            }
            last = Some(report);
        }
    }
    Ok(last.unwrap_or(OracleReport {
        r_start: r_start * 1e-2,
        rows: Vec::new(),
        notes,
        pass: false,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_poly;

    fn check(src: &str) -> OracleReport {
        cross_check(&parse_poly(src).unwrap(), &Ctx::default()).unwrap()
    }

    #[test]
    fn tracks_cubic_family_pair() {
        let f = parse_poly("x^3 - 3*x*y^4 + y^6").unwrap();
        let tracks = track_polar(&f, 1e-2, 24).unwrap();
        assert_eq!(tracks.len(), 2);
        // The two tracks follow x = ±r²: check the largest radius.
        let mut firsts: Vec<f64> = tracks.iter().map(|t| t.points[0].re).collect();
        firsts.sort_by(f64::total_cmp);
        assert!((firsts[0] + 1e-4).abs() < 1e-6);
        assert!((firsts[1] - 1e-4).abs() < 1e-6);
    }

    #[test]
    fn fits_cusp_exponent() {
        let f = parse_poly("x^2 - y^3").unwrap();
        let tracks = track_polar(&f, 1e-2, 24).unwrap();
        assert_eq!(tracks.len(), 1);
        let (h0, c0) = fit_leading(&tracks[0]).unwrap();
        assert!((h0 - 3.0).abs() < 1e-3 * 3.0, "h0 fit {h0}");
        assert!((c0 - 1.0).abs() < 1e-2, "c0 fit {c0}");
    }

    #[test]
    fn fits_transverse_pair_exponent() {
        let f = parse_poly("x^2 - y^2").unwrap();
        let tracks = track_polar(&f, 1e-2, 24).unwrap();
        assert_eq!(tracks.len(), 1);
        let (h0, _) = fit_leading(&tracks[0]).unwrap();
        assert!((h0 - 2.0).abs() < 1e-3 * 2.0, "h0 fit {h0}");
    }

    #[test]
    fn double_polar_root_is_one_track() {
        // df/dx = 3x²: a genuinely multiple root must collapse to a single
        // track rather than trip the collision detector.
        let f = parse_poly("x^3 - y^4").unwrap();
        let tracks = track_polar(&f, 1e-2, 24).unwrap();
        assert_eq!(tracks.len(), 1);
        let report = check("x^3 - y^4");
        assert!(report.pass, "notes: {:?}", report.notes);
    }

    #[test]
    fn extended_retry_separates_close_branches() {
        // Polar roots y and (1 + 10⁻¹²)y: far below the ~sqrt(eps) noise
        // floor of double-precision roots, so only the extended-precision
        // retry (with exactly rebuilt coefficients) positions them.
        let f = parse_poly(
            "2000000000000*x^3 - 6000000000003*x^2*y + 6000000000006*x*y^2 + y^7",
        )
        .unwrap();
        let tracks = track_polar(&f, 1e-2, 12).unwrap();
        assert_eq!(tracks.len(), 2);
        // The two continued roots differ by 1e-12 relatively throughout.
        for (a, b) in tracks[0].points.iter().zip(tracks[1].points.iter()) {
            let gap = (a - b).norm() / a.norm().max(b.norm());
            assert!((gap - 1e-12).abs() < 1e-13, "relative gap {gap}");
        }
    }

    #[test]
    fn cross_check_passes_on_reference_germs() {
        for src in ["x^2 - y^3", "x^2 - y^5", "x^3 - 3*x*y^4 + y^6"] {
            let report = check(src);
            assert!(report.pass, "{src}: rows {:?}", report.rows);
            assert!(!report.rows.is_empty());
        }
    }
}
