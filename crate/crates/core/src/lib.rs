//! Exact and certified computation of the Henry-Parusinski invariant of
//! reduced plane curve germs `f : (C^2, 0) -> (C, 0)`.
//!
//! The pipeline, bottom to top:
//!
//! * [`parser`] — a small expression grammar for polynomials in `x`, `y`
//!   over the Gaussian rationals `Q(i)`.
//! * [`algebra`] — coefficient arithmetic: exact Gaussian rationals,
//!   certified complex balls with directed rounding, one-level algebraic
//!   witnesses, univariate/bivariate polynomials, Puiseux series, and
//!   certified univariate root finding.
//! * [`newton_puiseux`] — Newton polygon construction and the recursive
//!   Puiseux expansion of the branches of a mini-regular curve.
//! * [`germ`] — validation and normalization of germs: order, initial form,
//!   mini-regularizing shear, tangent cone lines, reducedness.
//! * [`asymptotics`] — local data of `f` along an arc: the shifted
//!   decomposition, leading exponents, the critical exponent that certifies
//!   truncation, and the associated one-variable initial polynomial.
//! * [`invariant`] — polar arcs, tangential arcs, scaling canonicalization,
//!   the invariant itself, and comparison of two germs.
//! * [`oracle`] — an independent floating-point cross-check that tracks
//!   polar branches numerically and fits leading exponents.
//! * [`corpus`] — deterministic random germ generators used by the
//!   validation suites.

pub mod algebra;
pub mod asymptotics;
pub mod corpus;
pub mod ctx;
pub mod error;
pub mod germ;
pub mod invariant;
pub mod newton_puiseux;
pub mod oracle;
pub mod parser;

pub use ctx::Ctx;
pub use error::Error;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
