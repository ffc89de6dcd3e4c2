use alloc::string::String;

/// Every failure the engine can report.
///
/// [`Error::code`] gives the stable upper-case identifier used in reports.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("syntax error at column {column}: {message}")]
    Syntax { column: usize, message: String },
    #[error("unknown variable `{name}` at column {column}")]
    UnknownVariable { name: String, column: usize },
    #[error("non-integer exponent at column {column}")]
    NonIntegerExponent { column: usize },
    #[error("negative exponent at column {column}")]
    NegativeExponent { column: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("polynomials are defined over different variable lists")]
    VariableMismatch,
    #[error("quotient is not finite-dimensional: no pure power of `{variable}` is a leading monomial")]
    NotFinite { variable: String },
    #[error("the ideal is the unit ideal; the quotient is zero")]
    UnitIdeal,
    #[error("zero of `{context}` at the origin is not algebraically isolated")]
    NonIsolatedZero { context: String },
    #[error("bilinear form is degenerate ({n_zero} zero directions)")]
    DegeneratePairing { n_zero: usize },
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("component {component} has a nonzero constant term; the germ does not vanish at 0")]
    ConstantTerm { component: usize },
    #[error("polynomial is not weighted homogeneous of the given type")]
    NotWeightedHomogeneous,
    #[error("the differential does not vanish at the origin")]
    DifferentialNonzero,
    #[error("weighted degree {degree} is even; the odd-degree link formula does not apply")]
    DegreeEven { degree: u32 },
    #[error("no exponent k <= {k_max} gives an isolated critical point")]
    KExhausted { k_max: u32 },
    #[error("consistency check failed: {0}")]
    ConsistencyFail(String),
    #[error("semi-branch count 2*deg = {count} is negative")]
    NegativeCount { count: i64 },
    #[error("Milnor's conditions (a) and (b) have not been asserted")]
    HypothesisNotAsserted,
    #[error("Euler characteristic {value} has the wrong parity")]
    Parity { value: i64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::Syntax { .. } => "SYNTAX_ERROR",
            Error::UnknownVariable { .. } => "UNKNOWN_VARIABLE",
            Error::NonIntegerExponent { .. } => "NON_INTEGER_EXPONENT",
            Error::NegativeExponent { .. } => "NEGATIVE_EXPONENT",
            Error::DimensionMismatch { .. } => "DIMENSION_MISMATCH",
            Error::VariableMismatch => "VARIABLE_MISMATCH",
            Error::NotFinite { .. } => "NOT_FINITE",
            Error::UnitIdeal => "UNIT_IDEAL",
            Error::NonIsolatedZero { .. } => "NON_ISOLATED_ZERO",
            Error::DegeneratePairing { .. } => "DEGENERATE_PAIRING",
            Error::NotSymmetric => "NOT_SYMMETRIC",
            Error::ConstantTerm { .. } => "CONSTANT_TERM",
            Error::NotWeightedHomogeneous => "NOT_WEIGHTED_HOMOGENEOUS",
            Error::DifferentialNonzero => "DIFFERENTIAL_NONZERO",
            Error::DegreeEven { .. } => "D_EVEN",
            Error::KExhausted { .. } => "K_EXHAUSTED",
            Error::ConsistencyFail(_) => "CONSISTENCY_FAIL",
            Error::NegativeCount { .. } => "NEGATIVE_COUNT",
            Error::HypothesisNotAsserted => "HYPOTHESIS_NOT_ASSERTED",
            Error::Parity { .. } => "PARITY_VIOLATION",
            Error::InvalidArgument(_) => "INVALID_ARGUMENT",
        }
    }

    /// True for errors caused by malformed polynomial text.
    pub fn is_parse_error(&self) -> bool {
        matches!(
            self,
            Error::Syntax { .. }
                | Error::UnknownVariable { .. }
                | Error::NonIntegerExponent { .. }
                | Error::NegativeExponent { .. }
        )
    }
}

pub type Result<T> = core::result::Result<T, Error>;
