//! Leading asymptotics of a function along a truncated arc.
//!
//! Writing `f(gamma(y) + X, y) = sum_m F_m(y) X^m`, the series `F_0` holds
//! the value of `f` along the arc and the higher components control how
//! fast that value can move when the arc's tail is still unknown.  With
//! `h_m = ord F_m` and `h_0` finite, the critical exponent
//!
//! ```text
//! xi = max { (h_0 - h_m) / m :  m >= 1,  h_m < h_0 }        (0 if empty)
//! ```
//!
//! bounds the influence of the tail: an arc known past `xi` pins down both
//! the order `h_0` and the leading coefficient `c_0` of `f` along every
//! branch it represents.  That is the truncation certificate everything
//! downstream relies on.  The components achieving the maximum assemble
//! into the weighted-initial polynomial `Q` and its dehomogenization
//! `R(z) = Q(z, 1)`, with `R(0) = c_0`; retargeting the arc by `a*y^xi`
//! shifts `R` by `a`, which is the self-test used here.
//!
//! Orders of still-truncated components are only known as lower bounds, so
//! `xi` is computed conservatively from those bounds.  When a bound is too
//! weak to separate a component from the maximum, the data comes back
//! [`LocalData::Undetermined`] and the caller re-expands the arc further
//! out instead of trusting a possibly unsound `xi`.

use crate::algebra::{
    shift_expand, BivariatePoly, CPoly, CoeffValue, PuiseuxSeries, Trunc,
};
use crate::ctx::Ctx;
use crate::newton_puiseux::{expand_branches, PuiseuxArc};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

/// What is known about the order of one component `F_m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrderBound {
    /// Leading exponent resolved exactly.
    Known(BigRational),
    /// No nonzero term below this bound; the true order may be anything
    /// from here up (the component is truncated).
    AtLeast(BigRational),
    /// The component is exactly zero.
    Infinite,
}

/// Resolved leading asymptotics of `f` along one arc.
#[derive(Debug, Clone)]
pub struct ArcLocalData {
    /// Components `F_m`, leading coefficients resolved.
    pub components: Vec<PuiseuxSeries>,
    /// Order information per component, indexed by `m`.
    pub orders: Vec<OrderBound>,
    /// Order of `f` along the arc.
    pub h0: BigRational,
    /// Leading coefficient of `f` along the arc.
    pub c0: CoeffValue,
    /// Critical exponent bounding tail influence.
    pub xi: BigRational,
    /// Dehomogenized weighted-initial polynomial `R(z) = Q(z, 1)`; the
    /// coefficient of `z^m` is the leading coefficient of `F_m` when that
    /// component achieves the weighted minimum, zero otherwise.
    pub r_poly: CPoly,
}

/// Outcome of data extraction along a truncated arc.
#[derive(Debug, Clone)]
pub enum LocalData {
    Resolved(ArcLocalData),
    /// The truncation order was too small to resolve `h_0`, or to separate
    /// a truncated component from the critical maximum.  Re-expand the arc
    /// past `grow_past` and retry.
    Undetermined { grow_past: BigRational },
}

/// Expand `f` along `arc` and resolve the leading asymptotics.
///
/// Fails with [`Error::ArcInZeroSet`] when `f` vanishes identically along
/// the (exactly terminated) arc.
pub fn arc_local_data(
    f: &BivariatePoly,
    arc: &PuiseuxArc,
    ctx: &Ctx,
) -> Result<LocalData> {
    let mut components = shift_expand(f, &arc.series, ctx)?;
    let mut orders = Vec::with_capacity(components.len());
    for comp in &mut components {
        let bound = match comp.resolve_leading(ctx)? {
            Some((e, _)) => OrderBound::Known(e),
            None => match comp.trunc() {
                Trunc::Infinite => OrderBound::Infinite,
                Trunc::At(b) => OrderBound::AtLeast(b.clone()),
            },
        };
        orders.push(bound);
    }
    let (h0, c0) = match &orders[0] {
        OrderBound::Known(e) => (e.clone(), {
            let c = components[0].coeff_at(e);
            debug_assert!(!c.is_provably_zero());
            c
        }),
        OrderBound::Infinite => return Err(Error::ArcInZeroSet),
        OrderBound::AtLeast(b) => {
            return Ok(LocalData::Undetermined { grow_past: b.clone() })
        }
    };

    // Conservative critical exponent: truncated components contribute
    // through their lower bounds.
    let mut xi = BigRational::zero();
    for (m, bound) in orders.iter().enumerate().skip(1) {
        let floor = match bound {
            OrderBound::Known(e) => e,
            OrderBound::AtLeast(b) => b,
            OrderBound::Infinite => continue,
        };
        if *floor >= h0 {
            continue;
        }
        let slope = (&h0 - floor) / BigRational::from_integer(BigInt::from(m));
        if slope > xi {
            xi = slope;
        }
    }
    // The maximum is only trustworthy if every component that could reach
    // it is fully resolved; a truncated component whose bound does not
    // stay strictly below the maximum needs more expansion first.
    for (m, bound) in orders.iter().enumerate().skip(1) {
        if let OrderBound::AtLeast(b) = bound {
            let critical = &h0 - &xi * BigRational::from_integer(BigInt::from(m));
            if *b <= critical {
                return Ok(LocalData::Undetermined { grow_past: b.clone() });
            }
        }
    }

    let mut r_coeffs = vec![CoeffValue::zero(); components.len()];
    r_coeffs[0] = c0.clone();
    for (m, bound) in orders.iter().enumerate().skip(1) {
        if let OrderBound::Known(e) = bound {
            let critical = &h0 - &xi * BigRational::from_integer(BigInt::from(m));
            if *e == critical {
                r_coeffs[m] = components[m].coeff_at(e);
            }
        }
    }
    Ok(LocalData::Resolved(ArcLocalData {
        components,
        orders,
        h0,
        c0,
        xi,
        r_poly: CPoly::new(r_coeffs),
    }))
}

/// The certificate that a truncation order `t` pins down `(h_0, c_0)`:
/// strictly past the critical exponent.
pub fn truncation_certificate(data: &ArcLocalData, t: &Trunc) -> bool {
    match t {
        Trunc::Infinite => true,
        Trunc::At(e) => *e > data.xi,
    }
}

/// `R(z + a)`: the weighted-initial polynomial after retargeting the arc
/// by `a * y^xi`.
pub fn shifted_r(data: &ArcLocalData, a: &CoeffValue, ctx: &Ctx) -> Result<CPoly> {
    data.r_poly.taylor_shift(a, ctx)
}

/// Expand the branches of `g` far enough that the asymptotics of `f`
/// along every arc carry a passing truncation certificate.
///
/// Starts at truncation order `t0`, grows the order as the data demands,
/// and gives up (with [`Error::PrecisionExhausted`]) after 32 rounds.
pub fn certified_expansion(
    f: &BivariatePoly,
    g: &BivariatePoly,
    t0: &BigRational,
    ctx: &Ctx,
) -> Result<Vec<(PuiseuxArc, ArcLocalData)>> {
    let guard = BigRational::from_integer(BigInt::from(ctx.guard));
    let one = BigRational::from_integer(BigInt::from(1));
    let mut t = t0.clone();
    for _ in 0..32 {
        let arcs = expand_branches(g, &t, ctx)?;
        let mut out = Vec::with_capacity(arcs.len());
        let mut need: Option<BigRational> = None;
        let bump = |need: &mut Option<BigRational>, req: BigRational| {
            if need.as_ref().map_or(true, |cur| req > *cur) {
                *need = Some(req);
            }
        };
        for arc in arcs {
            match arc_local_data(f, &arc, ctx)? {
                LocalData::Resolved(data) => {
                    if truncation_certificate(&data, arc.series.trunc()) {
                        out.push((arc, data));
                    } else {
                        bump(&mut need, &data.xi + &guard + &one);
                    }
                }
                LocalData::Undetermined { grow_past } => {
                    bump(&mut need, grow_past + &guard + &one);
                }
            }
        }
        match need {
            None => return Ok(out),
            Some(n) => t = n.max(&t + &one),
        }
    }
    Err(Error::PrecisionExhausted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::GaussianRational;
    use crate::parser::parse_poly;
    use proptest::prelude::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn monomial_arc(exp: BigRational, coeff: i64) -> PuiseuxArc {
        let series = PuiseuxSeries::monomial(exp.clone(), CoeffValue::from_int(coeff));
        PuiseuxArc {
            series,
            multiplicity: 1,
            tangent: CoeffValue::zero(),
            residual_floor: exp,
        }
    }

    fn resolved(f: &BivariatePoly, arc: &PuiseuxArc) -> ArcLocalData {
        match arc_local_data(f, arc, &Ctx::default()).unwrap() {
            LocalData::Resolved(d) => d,
            LocalData::Undetermined { .. } => panic!("expected resolved data"),
        }
    }

    #[test]
    fn cubic_family_along_polar_arc() {
        let f = parse_poly("x^3 - 3*x*y^4 + y^6").unwrap();
        let data = resolved(&f, &monomial_arc(rat(2, 1), 1));
        assert_eq!(data.h0, rat(6, 1));
        assert_eq!(data.c0.as_exact().unwrap(), &GaussianRational::from_int(-1));
        assert_eq!(data.xi, rat(2, 1));
        assert_eq!(
            data.orders,
            vec![
                OrderBound::Known(rat(6, 1)),
                OrderBound::Infinite,
                OrderBound::Known(rat(2, 1)),
                OrderBound::Known(rat(0, 1)),
            ]
        );
        let r = data.r_poly.to_exact().unwrap();
        assert_eq!(r, crate::algebra::GPoly::from_ints(&[-1, 0, 3, 1]));

        // Retargeting by -2 y^2 lands on the other polar arc's value.
        let shifted = shifted_r(&data, &CoeffValue::from_int(-2), &Ctx::default())
            .unwrap()
            .to_exact()
            .unwrap();
        assert_eq!(shifted, crate::algebra::GPoly::from_ints(&[3, 0, -3, 1]));
        let other = resolved(&f, &monomial_arc(rat(2, 1), -1));
        assert_eq!(other.c0.as_exact().unwrap(), &GaussianRational::from_int(3));
    }

    #[test]
    fn cusp_along_zero_arc() {
        let f = parse_poly("x^2 - y^3").unwrap();
        let arc = PuiseuxArc {
            series: PuiseuxSeries::exact_zero(),
            multiplicity: 1,
            tangent: CoeffValue::zero(),
            residual_floor: rat(0, 1),
        };
        let data = resolved(&f, &arc);
        assert_eq!(data.h0, rat(3, 1));
        assert_eq!(data.c0.as_exact().unwrap(), &GaussianRational::from_int(-1));
        assert_eq!(data.xi, rat(3, 2));
        let r = data.r_poly.to_exact().unwrap();
        assert_eq!(r, crate::algebra::GPoly::from_ints(&[-1, 0, 1]));
        let shifted = shifted_r(&data, &CoeffValue::from_int(1), &Ctx::default())
            .unwrap()
            .to_exact()
            .unwrap();
        assert_eq!(shifted, crate::algebra::GPoly::from_ints(&[0, 2, 1]));
    }

    #[test]
    fn certifies_just_past_critical_exponent() {
        // The arc y^2 truncated at 5/2 is already past xi = 2, so the
        // leading data must resolve and certify.
        let f = parse_poly("x^3 - 3*x*y^4 + y^6").unwrap();
        let series = PuiseuxSeries::from_terms(
            vec![(rat(2, 1), CoeffValue::from_int(1))],
            Trunc::At(rat(5, 2)),
        );
        let arc = PuiseuxArc {
            series,
            multiplicity: 1,
            tangent: CoeffValue::zero(),
            residual_floor: rat(2, 1),
        };
        let data = resolved(&f, &arc);
        assert_eq!(data.h0, rat(6, 1));
        assert_eq!(data.xi, rat(2, 1));
        assert!(truncation_certificate(&data, &Trunc::At(rat(5, 2))));
        assert!(!truncation_certificate(&data, &Trunc::At(rat(2, 1))));
    }

    #[test]
    fn undetermined_below_needed_order() {
        // Along the truncated bundle prefix y^2 of x^2 - y^4 the value
        // cancels below the truncation, so nothing can resolve yet.
        let f = parse_poly("x^2 - y^4").unwrap();
        let series = PuiseuxSeries::from_terms(
            vec![(rat(2, 1), CoeffValue::from_int(1))],
            Trunc::At(rat(9, 4)),
        );
        let arc = PuiseuxArc {
            series,
            multiplicity: 1,
            tangent: CoeffValue::zero(),
            residual_floor: rat(2, 1),
        };
        match arc_local_data(&f, &arc, &Ctx::default()).unwrap() {
            LocalData::Undetermined { grow_past } => assert!(grow_past >= rat(9, 4)),
            LocalData::Resolved(_) => panic!("cancelled value must not resolve"),
        }
    }

    #[test]
    fn zero_set_arc_is_rejected() {
        let f = parse_poly("x^2 - y^3").unwrap();
        let ctx = Ctx::default();
        let arcs = expand_branches(&f, &rat(3, 1), &ctx).unwrap();
        let err = arc_local_data(&f, &arcs[0], &ctx).unwrap_err();
        assert_eq!(err, Error::ArcInZeroSet);
    }

    #[test]
    fn certified_expansion_of_polar_pair() {
        let f = parse_poly("x^3 - 3*x*y^4 + y^6").unwrap();
        let polar = f.derivative_x();
        let ctx = Ctx::default();
        let pairs = certified_expansion(&f, &polar, &rat(4, 1), &ctx).unwrap();
        assert_eq!(pairs.len(), 2);
        let mut values = Vec::new();
        for (arc, data) in &pairs {
            assert!(truncation_certificate(data, arc.series.trunc()));
            assert_eq!(data.h0, rat(6, 1));
            values.push(data.c0.as_exact().unwrap().re().to_string());
        }
        values.sort();
        assert_eq!(values, vec!["-1", "3"]);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        /// `R(0) = c_0` on arbitrary data.
        #[test]
        fn r_at_zero_is_c0(
            terms in proptest::collection::vec((0u32..4, 0u32..5, -3i64..4), 1..6),
            e in 1i64..3,
            lead in 1i64..3,
        ) {
            let mut f = BivariatePoly::zero();
            for (i, j, v) in terms {
                f = f.add(&BivariatePoly::monomial(
                    i, j, GaussianRational::from_int(v)));
            }
            prop_assume!(!f.is_zero());
            let ctx = Ctx::default();
            let arc = monomial_arc(rat(e, 1), lead);
            let data = match arc_local_data(&f, &arc, &ctx) {
                Ok(LocalData::Resolved(d)) => d,
                Ok(LocalData::Undetermined { .. }) => unreachable!("exact arc"),
                Err(Error::ArcInZeroSet) => return Ok(()),
                Err(e) => return Err(TestCaseError::fail(e.to_string())),
            };
            let r_at_zero = data.r_poly.eval(&CoeffValue::zero(), &ctx).unwrap();
            prop_assert!(r_at_zero.eq_decide(&data.c0, &ctx).unwrap());
            for (m, bound) in data.orders.iter().enumerate().skip(1) {
                if let OrderBound::Known(h) = bound {
                    if h < &data.h0 {
                        let slope = (&data.h0 - h)
                            / BigRational::from_integer(BigInt::from(m));
                        prop_assert!(data.xi >= slope);
                    }
                }
            }
        }

        /// Retargeting the arc by `a y^xi` shifts `R` by `a`, on a family
        /// with planted contact `xi = N/m > e`.
        #[test]
        fn shift_law_holds(
            e in 1i64..3,
            m in 2u32..4,
            b in 1i64..3,
            c in 1i64..4,
            extra in 1i64..(3 * 2),
            a in 1i64..4,
        ) {
            let n = i64::from(m) * e + extra;
            // f = (x - b y^e)^m - c y^n
            let line = parse_poly("x").unwrap().sub(&BivariatePoly::monomial(
                0, e as u32, GaussianRational::from_int(b)));
            let f = line.pow(m).sub(&BivariatePoly::monomial(
                0, n as u32, GaussianRational::from_int(c)));
            let ctx = Ctx::default();
            let arc = monomial_arc(rat(e, 1), b);
            let data = match arc_local_data(&f, &arc, &ctx).unwrap() {
                LocalData::Resolved(d) => d,
                LocalData::Undetermined { .. } => unreachable!("exact arc"),
            };
            prop_assert_eq!(&data.h0, &rat(n, 1));
            prop_assert_eq!(&data.xi, &rat(n, i64::from(m)));

            let shift = CoeffValue::from_int(a);
            let r_at_a = data.r_poly.eval(&shift, &ctx).unwrap();
            prop_assume!(!r_at_a.eq_decide(&CoeffValue::zero(), &ctx).unwrap());
            let arc2 = PuiseuxArc {
                series: arc.series.add(
                    &PuiseuxSeries::monomial(data.xi.clone(), shift.clone()),
                    &ctx).unwrap(),
                multiplicity: 1,
                tangent: CoeffValue::zero(),
                residual_floor: data.xi.clone(),
            };
            let data2 = match arc_local_data(&f, &arc2, &ctx).unwrap() {
                LocalData::Resolved(d) => d,
                LocalData::Undetermined { .. } => unreachable!("exact arc"),
            };
            prop_assert_eq!(&data2.h0, &data.h0);
            prop_assert!(data2.c0.eq_decide(&r_at_a, &ctx).unwrap());
            let shifted = shifted_r(&data, &shift, &ctx).unwrap();
            prop_assert_eq!(shifted.degree(), data2.r_poly.degree());
            for k in 0..=shifted.degree().unwrap_or(0) {
                prop_assert!(shifted.coeff(k)
                    .eq_decide(&data2.r_poly.coeff(k), &ctx).unwrap());
            }
        }
    }
}
