use std::fmt;

/// Errors shared across the crate. Display strings are stable: the CLI and
/// the certificate checker match on them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    InvalidDegree,
    InvalidModulus,
    DivisionByZero,
    NotSubfield,
    FieldMismatch,
    DimensionMismatch,
    Singular,
    NotMonic,
    ZeroPolynomial,
    FieldScanLimit,
    SearchSpaceLimit,
    NotCyclic,
    FieldTooSmall,
    SubfieldHypothesisViolated,
    NoAdmissibleA,
    NoAdmissibleAInSubfield,
    NotNonDerogatory,
    ConstructionError,
    ProjectionFailure,
    Parse(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidDegree => write!(f, "invalid degree"),
            Error::InvalidModulus => write!(f, "invalid modulus"),
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::NotSubfield => write!(f, "not a subfield"),
            Error::FieldMismatch => write!(f, "field mismatch"),
            Error::DimensionMismatch => write!(f, "dimension mismatch"),
            Error::Singular => write!(f, "singular"),
            Error::NotMonic => write!(f, "polynomial is not monic"),
            Error::ZeroPolynomial => write!(f, "zero polynomial"),
            Error::FieldScanLimit => write!(f, "field scan limit"),
            Error::SearchSpaceLimit => write!(f, "search space limit"),
            Error::NotCyclic => write!(f, "not cyclic"),
            Error::FieldTooSmall => write!(f, "field too small: use potent4-f2 mode"),
            Error::SubfieldHypothesisViolated => write!(f, "subfield hypothesis violated"),
            Error::NoAdmissibleA => write!(f, "no admissible a in the field"),
            Error::NoAdmissibleAInSubfield => write!(f, "no admissible a in subfield"),
            Error::NotNonDerogatory => write!(f, "matrix is not non-derogatory"),
            Error::ConstructionError => write!(f, "construction error"),
            Error::ProjectionFailure => write!(f, "projection failure"),
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
