//! Coefficient arithmetic: exact, certified, and the polynomial/series
//! structures built on top of it.
//!
//! Exactness is layered.  [`GaussianRational`] is the exact field `Q(i)`.
//! [`BallComplex`] is a complex midpoint-radius ball over dyadic
//! [`BigFloat`]s with outward rounding, so every true value stays inside its
//! ball through arithmetic.  [`CoeffValue`] is the common coin of the
//! pipeline: either exact, or a ball optionally backed by a one-level
//! algebraic witness (a polynomial expression in a root of an exact
//! squarefree polynomial) that restores exact zero tests and equality where
//! plain balls cannot decide.

mod algnum;
mod ball;
mod bigfloat;
mod bipoly;
mod coeff;
mod gauss;
mod roots;
mod series;
mod unipoly;

pub use algnum::{AlgebraicRoot, Witness};
pub use ball::BallComplex;
pub use bigfloat::{BigFloat, FloatComplex};
pub use bipoly::{shift_expand, substitute_arc, BivariatePoly};
pub use coeff::CoeffValue;
pub use gauss::GaussianRational;
pub(crate) use roots::nth_roots_exact;
pub use roots::{uni_roots, uni_roots_coeff, RootEstimate};
pub use series::{PuiseuxSeries, Trunc};
pub use unipoly::{CPoly, GPoly};
