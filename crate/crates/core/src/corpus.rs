//! Deterministic germ generators for the validation suites.
//!
//! Everything is driven by a seeded ChaCha stream so that a failing case
//! can be reproduced from its seed alone.  The generators favour sparse
//! polynomials with small Gaussian-integer coefficients: dense random
//! germs almost surely have a squarefree tangent cone and an empty
//! invariant, so half of the reduced-germ stream plants a repeated cone
//! factor to exercise the tangential machinery.

use crate::algebra::{BivariatePoly, GaussianRational};
use crate::germ::analyze_germ;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// The reproducible stream used by every generator.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A Gaussian integer with both parts in `-lim..=lim`.
pub fn gaussian_int(rng: &mut ChaCha8Rng, lim: i64) -> GaussianRational {
    GaussianRational::from_parts(rng.gen_range(-lim..=lim), 1, rng.gen_range(-lim..=lim), 1)
}

fn nonzero_gaussian_int(rng: &mut ChaCha8Rng, lim: i64) -> GaussianRational {
    loop {
        let c = gaussian_int(rng, lim);
        if !c.is_zero() {
            return c;
        }
    }
}

/// A germ that is mini-regular in `x` of exact order `k`: an `x^k` term
/// plus a few monomials of total degree `>= k` (so no shear is needed and
/// the order is visible by construction).  With probability one half the
/// tangent cone is the full power of a single line `(x - a*y)^k`, giving
/// the stream a supply of nonempty invariants.
pub fn mini_regular_germ(rng: &mut ChaCha8Rng, k: u32, extra: usize) -> BivariatePoly {
    let mut f = if k >= 2 && rng.gen_bool(0.5) {
        // (x - a y)^k: a singular cone concentrated on one line.
        let a = gaussian_int(rng, 2);
        let line = BivariatePoly::monomial(1, 0, GaussianRational::from_int(1))
            .add(&BivariatePoly::monomial(0, 1, -a));
        line.pow(k)
    } else {
        BivariatePoly::monomial(k, 0, nonzero_gaussian_int(rng, 3))
    };
    for _ in 0..extra {
        let i = rng.gen_range(0..=k);
        let j = rng.gen_range((k - i + 1)..=(k - i + 4));
        let c = gaussian_int(rng, 3);
        f = f.add(&BivariatePoly::monomial(i, j, c));
    }
    f
}

/// A valid reduced germ of order `k` (resampled until analysis accepts
/// it; the planted shapes above are rejected only rarely).
pub fn reduced_germ(rng: &mut ChaCha8Rng, k: u32) -> BivariatePoly {
    loop {
        let extra = rng.gen_range(1..=4);
        let f = mini_regular_germ(rng, k, extra);
        if analyze_germ(&f).is_ok() {
            return f;
        }
    }
}

/// A pair of valid germs with distinct orders at the origin.
pub fn distinct_order_pair(rng: &mut ChaCha8Rng) -> (BivariatePoly, BivariatePoly) {
    let k1 = rng.gen_range(2..=4);
    let mut k2 = rng.gen_range(2..=4);
    if k2 == k1 {
        k2 = k1 + 1;
    }
    (reduced_germ(rng, k1), reduced_germ(rng, k2))
}

/// An invertible linear change of coordinates `(x, y) -> (a x + b y,
/// c x + d y)` with small Gaussian-integer entries.
pub fn invertible_map(
    rng: &mut ChaCha8Rng,
) -> (GaussianRational, GaussianRational, GaussianRational, GaussianRational) {
    loop {
        let a = gaussian_int(rng, 2);
        let b = gaussian_int(rng, 2);
        let c = gaussian_int(rng, 2);
        let d = gaussian_int(rng, 2);
        let det = &a * &d - &b * &c;
        if !det.is_zero() {
            return (a, b, c, d);
        }
    }
}

/// The reference one-parameter family `x^3 - 3 t^2 x y^{2d} + y^{3d}`:
/// for `d >= 2` its polar branches are `x = ±t y^d`, both tangent to the
/// singular cone line `x = 0`, with leading terms `(1 ∓ 2 t^3) y^{3d}`.
pub fn family_member(t: &GaussianRational, d: u32) -> BivariatePoly {
    let t2 = t * t;
    let coeff = GaussianRational::from_int(-3) * &t2;
    BivariatePoly::monomial(3, 0, GaussianRational::from_int(1))
        .add(&BivariatePoly::monomial(1, 2 * d, coeff))
        .add(&BivariatePoly::monomial(0, 3 * d, GaussianRational::from_int(1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::germ::analyze_germ;
    use crate::parser::format_poly;

    #[test]
    fn generators_are_deterministic() {
        let a = reduced_germ(&mut rng(7), 3);
        let b = reduced_germ(&mut rng(7), 3);
        assert_eq!(format_poly(&a), format_poly(&b));
    }

    #[test]
    fn reduced_germs_have_requested_order() {
        let mut r = rng(11);
        for _ in 0..20 {
            let k = r.gen_range(2..=4);
            let f = reduced_germ(&mut r, k);
            let prof = analyze_germ(&f).unwrap();
            assert_eq!(prof.order, k);
        }
    }

    #[test]
    fn distinct_order_pairs_differ() {
        let mut r = rng(13);
        for _ in 0..10 {
            let (f, g) = distinct_order_pair(&mut r);
            let kf = analyze_germ(&f).unwrap().order;
            let kg = analyze_germ(&g).unwrap().order;
            assert_ne!(kf, kg);
        }
    }

    #[test]
    fn family_member_matches_reference_text() {
        let t = GaussianRational::from_int(1);
        assert_eq!(format_poly(&family_member(&t, 2)), "x^3 - 3*x*y^4 + y^6");
    }
}
