//! Error type shared by every module of the crate.

use thiserror::Error;

/// All failure modes of the pipeline.
///
/// `Indeterminate` is a *retryable* signal: an operation on certified values
/// could not be decided at the current working precision.  Drivers catch it,
/// escalate precision via [`crate::Ctx::escalate`], and only surface
/// `PrecisionExhausted` once the cap is reached.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed input text; `pos` is a byte offset into the source.
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    /// `^` followed by anything but a non-negative integer literal.
    #[error("exponent at byte {pos} is not a non-negative integer literal")]
    NonIntegerExponent { pos: usize },

    /// An identifier other than `x`, `y`, `i`.
    #[error("unknown identifier `{name}` at byte {pos}")]
    UnknownIdentifier { name: String, pos: usize },

    /// Division where the divisor is not a constant.
    #[error("division by a non-constant polynomial at byte {pos}")]
    DivisionByPolynomial { pos: usize },

    /// Division by the zero constant.
    #[error("division by zero at byte {pos}")]
    DivisionByZero { pos: usize },

    /// An operation that requires a nonzero polynomial got the zero one.
    #[error("polynomial is identically zero")]
    ZeroPolynomial,

    /// The germ is the zero function.
    #[error("germ is identically zero")]
    ZeroGerm,

    /// `f(0,0) != 0`: not a germ of a singularity at the origin.
    #[error("germ does not vanish at the origin")]
    NonvanishingAtOrigin,

    /// The curve `f = 0` has a repeated component.
    #[error("germ is not reduced: repeated factor {factor}")]
    NotReduced { factor: String },

    /// A curve handed to the Puiseux expander without the required
    /// pure-`x^m` initial term.
    #[error("curve is not mini-regular in x")]
    NotMiniRegular,

    /// A certified computation ran out of precision below the configured cap.
    #[error("precision cap exhausted before a certified decision")]
    PrecisionExhausted,

    /// Retryable: undecided at the current precision.
    #[error("comparison indeterminate at current precision")]
    Indeterminate,

    /// An arc substituted into `f` gives the zero series: the arc lies in
    /// the zero set of `f`.
    #[error("arc lies in the zero set of the germ")]
    ArcInZeroSet,

    /// A polar branch is a component of the curve itself; the invariant is
    /// undefined because the germ shares a component with its polar.
    #[error("germ shares a component with its polar curve")]
    SharedComponent,

    /// Internal consistency check failed: a tangential polar arc is not
    /// tangent to a singular line of the tangent cone.
    #[error("tangential arc does not match a singular tangent cone line")]
    ConeConsistencyViolation,

    /// Two numeric branch tracks collided during continuation.
    #[error("numeric branch tracks collided during continuation")]
    RootCollision,

    /// The numeric exponent fit is too ill-conditioned to trust.
    #[error("numeric leading-exponent fit is degenerate")]
    DegenerateFit,
}

impl Error {
    /// True for the retryable precision signal.
    pub fn is_indeterminate(&self) -> bool {
        matches!(self, Error::Indeterminate)
    }
}
