//! Error type shared by all modules.

use thiserror::Error;

/// Errors from series arithmetic, umbral operations, family constructors, and
/// the identity suite.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Series division needs a divisor with nonzero constant term.
    #[error("division by a non-invertible series (zero constant term)")]
    DivisionByNonInvertible,

    /// Series composition needs an inner series with zero constant term.
    #[error("composition inner series must have zero constant term")]
    NonDeltaInner,

    /// Reversion needs a delta series: zero constant term, nonzero t-coefficient.
    #[error("reversion requires a delta series (order exactly 1)")]
    NotDeltaSeries,

    /// A Sheffer pair's `g` must be invertible (nonzero constant term).
    #[error("Sheffer pair g must be an invertible series (order 0)")]
    NotInvertibleSeries,

    /// A functional truncated at order `order` cannot act on degree `degree`.
    #[error("truncation order {order} is insufficient for degree {degree}")]
    InsufficientTruncation { order: usize, degree: usize },

    /// Binomial / falling-factorial arguments must be nonnegative.
    #[error("negative argument to a combinatorial operation")]
    NegativeArgument,

    /// The Hermite order parameter `nu` must be nonzero.
    #[error("parameter nu must be nonzero")]
    ZeroNu,

    /// The Frobenius-Euler parameter `lambda` must not equal 1.
    #[error("parameter lambda must not equal 1")]
    LambdaIsOne,

    /// An identity was requested below its stated n-floor.
    #[error("identity {identity} is stated for n >= {floor}, got n = {n}")]
    OutOfStatedRange {
        identity: &'static str,
        n: usize,
        floor: usize,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
