use std::fmt;

/// Errors shared across the crate. Every operation that can fail returns
/// one of these; operations documented as total never do.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Division of rational functions by zero.
    DivisionByZero,
    /// Evaluation at a point where the denominator vanishes.
    PoleAtPoint { at: String },
    /// The limit q -> 1 does not exist: (v-1) divides the denominator to
    /// higher order than the numerator.
    PoleAtOne,
    /// Requested builtin family name is not one of ones, gauss, improved,
    /// half_gauss.
    UnknownFamily(String),
    /// A solver step could not divide by the coefficient of its unknown.
    UnsolvableStep { n: u32 },
    /// Supplied family data violates a family invariant (alpha_0 = 1, or an
    /// entry whose limit at q = 1 is not 1).
    InconsistentInput { detail: String },
    /// A table-backed family was asked for an index past its horizon.
    IndexBeyondTable { n: u32, horizon: u32 },
    /// Series inversion requires a nonzero constant term.
    NonUnitConstantTerm,
    /// An alpha value required to be nonzero vanished.
    ZeroAlpha { n: u32 },
    /// alpha(q,1) = 0 makes the Bernoulli generating series non-invertible.
    AlphaOneZero,
    /// The ratio alpha(q,n+1)/alpha(q,n) is not a polynomial in q^n with
    /// n-independent coefficients.
    NotOfThisForm,
    /// The numeric probe point must satisfy 0 < v0^2 < 1.
    ProbeOutOfRange { v0: String },
    /// Text could not be parsed as a rational function or polynomial.
    Parse { detail: String },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::PoleAtPoint { at } => write!(f, "pole at v = {at}"),
            Error::PoleAtOne => write!(f, "pole at q = 1"),
            Error::UnknownFamily(name) => write!(f, "unknown family {name:?}"),
            Error::UnsolvableStep { n } => write!(f, "cannot solve for alpha_{n}"),
            Error::InconsistentInput { detail } => write!(f, "inconsistent family input: {detail}"),
            Error::IndexBeyondTable { n, horizon } => {
                write!(f, "index {n} beyond table horizon {horizon}")
            }
            Error::NonUnitConstantTerm => write!(f, "series has no invertible constant term"),
            Error::ZeroAlpha { n } => write!(f, "alpha_{n} is zero"),
            Error::AlphaOneZero => write!(f, "alpha(q,1) = 0: Bernoulli series not invertible"),
            Error::NotOfThisForm => {
                write!(f, "ratio alpha(q,n+1)/alpha(q,n) is not polynomial in q^n")
            }
            Error::ProbeOutOfRange { v0 } => {
                write!(f, "probe v0 = {v0} outside 0 < v0^2 < 1")
            }
            Error::Parse { detail } => write!(f, "parse error: {detail}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
