//! Germ validation and tangent cone analysis.
//!
//! Everything downstream works on a *prepared* germ: a reduced polynomial
//! vanishing at the origin, made mini-regular in `x` (the coefficient of
//! `x^k` in its initial form is nonzero, `k` the order) by the least shear
//! `(x, y) -> (x, y + s*x)` that moves the tangent cone off the line at
//! infinity.  The shear is an allowed coordinate change, so it loses
//! nothing; recording it keeps reports traceable back to the input.
//!
//! The tangent cone itself — the zero set of the initial form `H_k` —
//! factors over `C` into `k` lines `x = a*y` counted with multiplicity.
//! The lines of multiplicity at least two are where all the interesting
//! local structure concentrates, and later stages group polar branches by
//! exactly these lines.

use crate::algebra::{uni_roots, BivariatePoly, CoeffValue, GaussianRational};
use crate::ctx::Ctx;
use crate::parser::format_poly;
use crate::{Error, Result};

/// A validated germ, sheared to mini-regularity.
#[derive(Debug, Clone)]
pub struct GermProfile {
    /// The prepared polynomial: reduced, `f(0,0) = 0`, mini-regular in `x`.
    pub f: BivariatePoly,
    /// The input polynomial, before any shear.
    pub original: BivariatePoly,
    /// Order `k` of the germ at the origin.
    pub order: u32,
    /// Initial form `H_k` of the prepared polynomial.
    pub initial: BivariatePoly,
    /// Shear parameter `s` applied as `(x, y) -> (x, y + s*x)`; zero when
    /// the input was already mini-regular.
    pub shear: i64,
    /// Reducedness, re-checked during analysis.  Always true for a profile
    /// that analysis returned.
    pub reduced: bool,
}

/// One line `x = a*y` of the tangent cone, with its multiplicity as a
/// factor of the initial form.
#[derive(Debug, Clone)]
pub struct TangentLine {
    /// Slope `a` of the line `x = a*y`.
    pub slope: CoeffValue,
    /// Multiplicity of the corresponding linear factor of `H_k`.
    pub multiplicity: usize,
}

/// Validate a germ and prepare it for expansion.
///
/// Rejects the zero polynomial (`ZeroGerm`), units at the origin
/// (`NonvanishingAtOrigin`), and non-reduced germs (`NotReduced`, naming
/// the repeated factor).  On success the returned profile is mini-regular
/// in `x`.
pub fn analyze_germ(f: &BivariatePoly) -> Result<GermProfile> {
    if f.is_zero() {
        return Err(Error::ZeroGerm);
    }
    if !f.coeff(0, 0).is_zero() {
        return Err(Error::NonvanishingAtOrigin);
    }
    let repeated = f.gcd(&f.derivative_x()).gcd(&f.derivative_y());
    if !repeated.is_unit() {
        return Err(Error::NotReduced {
            factor: format_poly(&repeated.squarefree_part()),
        });
    }
    let k = f.order().expect("nonzero polynomial has an order");
    let initial = f.homogeneous_part(k);
    let mut shear = 0i64;
    let mut prepared = f.clone();
    if f.coeff(k, 0).is_zero() {
        // H_k has at most k roots, so one of s = 1, ..., k+1 works.
        let one = GaussianRational::from_int(1);
        shear = (1..=i64::from(k) + 1)
            .find(|&s| !initial.eval(&one, &GaussianRational::from_int(s)).is_zero())
            .expect("a square-free avoiding shear exists");
        prepared = f.shear(&GaussianRational::from_int(shear));
        debug_assert!(!prepared.coeff(k, 0).is_zero());
    }
    let initial = prepared.homogeneous_part(k);
    Ok(GermProfile {
        f: prepared,
        original: f.clone(),
        order: k,
        initial,
        shear,
        reduced: true,
    })
}

/// The lines of the tangent cone, as roots of `H_k(z, 1)` with exact
/// multiplicities.  Mini-regularity keeps the degree at `k`, so the
/// multiplicities always sum to the order.
pub fn tangent_cone_lines(prof: &GermProfile, ctx: &Ctx) -> Result<Vec<TangentLine>> {
    let cone = prof.initial.homogeneous_to_univariate(prof.order);
    let lines = uni_roots(&cone, ctx)?
        .into_iter()
        .map(|r| TangentLine { slope: r.value, multiplicity: r.multiplicity })
        .collect();
    Ok(lines)
}

/// The tangent cone lines of multiplicity at least two.
pub fn singular_cone_lines(prof: &GermProfile, ctx: &Ctx) -> Result<Vec<TangentLine>> {
    let mut lines = tangent_cone_lines(prof, ctx)?;
    lines.retain(|l| l.multiplicity >= 2);
    Ok(lines)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_poly;
    use proptest::prelude::*;

    fn analyze(src: &str) -> Result<GermProfile> {
        analyze_germ(&parse_poly(src).unwrap())
    }

    #[test]
    fn rejects_invalid_germs() {
        assert_eq!(analyze("x - x").unwrap_err(), Error::ZeroGerm);
        assert_eq!(analyze("1 + x").unwrap_err(), Error::NonvanishingAtOrigin);
        assert_eq!(
            analyze("(x - y)^2").unwrap_err(),
            Error::NotReduced { factor: "x - y".into() }
        );
        assert_eq!(
            analyze("x^2*y").unwrap_err(),
            Error::NotReduced { factor: "x".into() }
        );
    }

    #[test]
    fn shears_cone_concentrated_on_y_axis() {
        // Cone y^3: the least shear s = 1 turns the initial form into
        // (y + x)^3, which has a nonzero x^3 coefficient.
        let prof = analyze("y^3 + x^4").unwrap();
        assert_eq!(prof.order, 3);
        assert_eq!(prof.shear, 1);
        assert!(!prof.f.coeff(3, 0).is_zero());
        assert_eq!(prof.initial, parse_poly("(y + x)^3").unwrap());
        // The bare cone polynomial itself is a repeated line, hence not a
        // reduced germ.
        assert_eq!(
            analyze("y^3").unwrap_err(),
            Error::NotReduced { factor: "y".into() }
        );
    }

    #[test]
    fn keeps_mini_regular_input_unsheared() {
        let prof = analyze("x^3 - 3*x*y^4 + y^6").unwrap();
        assert_eq!(prof.order, 3);
        assert_eq!(prof.shear, 0);
        assert_eq!(prof.initial, parse_poly("x^3").unwrap());
    }

    #[test]
    fn cone_of_triple_line() {
        let prof = analyze("x^3 - 3*x*y^4 + y^6").unwrap();
        let ctx = Ctx::default();
        let lines = tangent_cone_lines(&prof, &ctx).unwrap();
        assert_eq!(lines.len(), 1);
        assert_eq!(lines[0].multiplicity, 3);
        assert!(lines[0].slope.is_provably_zero());
        assert_eq!(singular_cone_lines(&prof, &ctx).unwrap().len(), 1);
    }

    #[test]
    fn cone_of_transverse_pair() {
        let prof = analyze("x^2 - y^2").unwrap();
        let ctx = Ctx::default();
        let lines = tangent_cone_lines(&prof, &ctx).unwrap();
        assert_eq!(lines.len(), 2);
        let total: usize = lines.iter().map(|l| l.multiplicity).sum();
        assert_eq!(total, 2);
        assert!(singular_cone_lines(&prof, &ctx).unwrap().is_empty());
    }

    #[test]
    fn sheared_cone_keeps_multiplicities() {
        // y * (x^2 + y^3): cone x^2 * y needs a shear; the double line must
        // survive with multiplicity 2 in the new coordinates.
        let prof = analyze("x^2*y + y^4 + x^5").unwrap();
        assert!(prof.shear >= 1);
        let ctx = Ctx::default();
        let sing = singular_cone_lines(&prof, &ctx).unwrap();
        assert_eq!(sing.len(), 1);
        assert_eq!(sing[0].multiplicity, 2);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        /// The order is invariant under invertible linear substitutions.
        #[test]
        fn order_is_linearly_invariant(
            terms in proptest::collection::vec((0u32..4, 0u32..4, -3i64..4), 1..7),
            (a, b, c, d) in (-2i64..3, -2i64..3, -2i64..3, -2i64..3),
        ) {
            prop_assume!(a * d - b * c != 0);
            let mut f = BivariatePoly::zero();
            for (i, j, v) in terms {
                if (i, j) == (0, 0) {
                    continue;
                }
                f = f.add(&BivariatePoly::monomial(
                    i, j, GaussianRational::from_int(v)));
            }
            prop_assume!(!f.is_zero());
            let g = f.compose_linear(
                &GaussianRational::from_int(a),
                &GaussianRational::from_int(b),
                &GaussianRational::from_int(c),
                &GaussianRational::from_int(d),
            );
            prop_assert_eq!(f.order(), g.order());
        }

        /// No singular cone lines exactly when the initial form is
        /// squarefree.
        #[test]
        fn singular_lines_match_squarefree_initial(
            terms in proptest::collection::vec((0u32..4, 0u32..4, -3i64..4), 1..7),
        ) {
            let mut f = BivariatePoly::zero();
            for (i, j, v) in terms {
                if (i, j) == (0, 0) {
                    continue;
                }
                f = f.add(&BivariatePoly::monomial(
                    i, j, GaussianRational::from_int(v)));
            }
            let Ok(prof) = analyze_germ(&f) else { return Ok(()); };
            let ctx = Ctx::default();
            let sing = singular_cone_lines(&prof, &ctx).unwrap();
            let cone = prof.initial.homogeneous_to_univariate(prof.order);
            prop_assert_eq!(sing.is_empty(), cone.is_squarefree());
        }
    }
}
