use thiserror::Error;

/// Errors surfaced by the algebra engine.
#[derive(Debug, Error)]
pub enum Error {
    #[error("pivot variable e{0} survives deconing in relation `{1}`")]
    PivotNotEliminable(usize, String),

    #[error("rank extraction produced a non-integer at degree {degree}: {value}")]
    NonIntegralRank { degree: usize, value: String },

    #[error("polynomial of degree {degree} exceeds Groebner completion degree {complete_to}")]
    DegreeExceedsCompletion { degree: usize, complete_to: usize },

    #[error("Groebner basis incomplete: need normal forms in degree {needed}, complete to {complete_to}")]
    IncompleteBasis { needed: usize, complete_to: usize },

    #[error("denominator has zero constant term")]
    ZeroConstantDenominator,

    #[error("negative powers of x survive in the degree-{n} Lofwall combination")]
    NonCancellation { n: usize },

    #[error("bar complex bounds too large: estimated component dimension {estimated} exceeds cap {cap}")]
    BoundsTooLarge { estimated: usize, cap: usize },

    #[error("malformed graph6 input: {0}")]
    MalformedGraph6(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
