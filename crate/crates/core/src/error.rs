use num_bigint::BigInt;
use thiserror::Error;

/// Everything that can go wrong in this crate.
///
/// Variants split into two families: hypothesis failures (the inputs do not
/// satisfy a mathematical precondition, e.g. a prime of bad reduction where
/// good reduction is required) and computational failures (a search or
/// factorization hit its configured limit). See [`Error::is_hypothesis_failure`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(BigInt),
    #[error("extension degree {degree} over F_{q} is out of range (cardinality limit {limit})")]
    DegreeOutOfRange { q: u64, degree: usize, limit: u128 },
    #[error("field elements belong to different fields")]
    MixedContexts,
    #[error("operation is undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("input must be nonzero")]
    ZeroInput,
    #[error("division by zero")]
    DivisionByZero,
    #[error("curve is singular (discriminant 0)")]
    SingularCurve,
    #[error("model may be non-minimal at {0}: v(disc) >= 12 and v(c4) >= 4")]
    PossiblyNonMinimal(u64),
    #[error("curve has bad reduction at {0}")]
    BadReduction(u64),
    #[error("field of cardinality {cardinality} exceeds the enumeration bound {limit}")]
    FieldTooLarge { cardinality: u128, limit: u128 },
    #[error("division polynomial index must be at least 1, got {0}")]
    BadIndex(i64),
    #[error("primes must differ, got {0} twice")]
    SamePrime(u64),
    #[error("rational root search exceeded the divisor bound {0}")]
    DivisorSearchExhausted(u64),
    #[error("prime factor {0} does not fit in a machine word")]
    PrimeTooLarge(BigInt),
    #[error("could not factor residual {0}")]
    FactoringIncomplete(BigInt),
    #[error("reduction type is not multiplicative")]
    NotMultiplicative,
    #[error("a_p = {a_p} is divisible by p = {p}; reduction is not ordinary")]
    NotOrdinary { a_p: i64, p: u64 },
    #[error("no twist profile for class {0}")]
    NoTwistProfile(String),
    #[error("p must be a prime >= 5, got {0}")]
    BadSelmerPrime(u64),
    #[error("unknown curve label {0:?}")]
    UnknownLabel(String),
    #[error("expected five comma-separated integers a1,a2,a3,a4,a6, got {0:?}")]
    BadCurveSpec(String),
    #[error("registry line {line}: {message}")]
    Registry { line: usize, message: String },
}

impl Error {
    /// True for errors that mean "the inputs violate a hypothesis", as
    /// opposed to a computation that could not be completed.
    pub fn is_hypothesis_failure(&self) -> bool {
        matches!(
            self,
            Error::BadReduction(_)
                | Error::NotOrdinary { .. }
                | Error::BadSelmerPrime(_)
                | Error::SamePrime(_)
                | Error::NotPrime(_)
                | Error::SingularCurve
                | Error::NotMultiplicative
                | Error::PossiblyNonMinimal(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
