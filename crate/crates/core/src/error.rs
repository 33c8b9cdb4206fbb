//! Error vocabulary shared by every operation in the crate.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A series failed its stopping rule within the term budget, or the
    /// argument lies outside the region where the series is evaluable in f64.
    #[error("series did not converge: {0}")]
    NonConvergentSeries(String),

    /// Evaluation landed on a pole (denominator zero without a matching
    /// numerator zero, or an indeterminate 0/0 beyond declared accuracy).
    #[error("pole hit at z = {re} + {im}i")]
    PoleHit { re: f64, im: f64 },

    /// The variant carries no structural zero data.
    #[error("zero set not structurally known for {0}")]
    ZerosUnknown(&'static str),

    /// The circle integrand has a zero or pole on (or numerically on) the
    /// integration circle that no structural data allows to factor out.
    #[error("unresolved singularity on the circle r = {0}")]
    SingularityUnresolved(f64),

    /// The radial profile does not cover the requested radius range or has
    /// too few samples for the requested fit.
    #[error("profile coverage: {0}")]
    ProfileCoverage(String),

    /// The semi-infinite transform diverges for the given exponent.
    #[error("transform diverges: {0}")]
    Divergent(String),

    /// Adaptive quadrature hit its panel or node budget before reaching the
    /// requested tolerance.
    #[error("quadrature stalled: {0}")]
    QuadratureStall(String),

    /// The point distribution has mass at the origin where the operation
    /// requires Z(0) = 0.
    #[error("distribution has mass at the origin; the operation requires Z(0) = 0")]
    OriginPoint,

    /// The declared zero-set tail makes the genus-q convergence sum diverge.
    #[error("genus {genus} too small for tail exponent {tail_exponent}")]
    GenusTooSmall { genus: u32, tail_exponent: f64 },

    /// The profile tail is declared Forbidden but the operation must evaluate
    /// beyond the grid.
    #[error("profile tail undeclared (Forbidden) but the operation needs values beyond the grid")]
    TailUndeclared,

    /// A parameter violates a documented precondition.
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
