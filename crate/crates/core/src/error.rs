use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("value does not fit in binary64")]
    Overflow,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message} at {position}")]
pub struct ParseError {
    pub message: String,
    /// 1-based character offset into the input.
    pub position: usize,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("invalid signature ({p},{q}): p + q must equal 3")]
    InvalidSignature { p: u8, q: u8 },
    #[error("signature mismatch: {left} vs {right}")]
    SignatureMismatch { left: String, right: String },
    #[error("{element} is not in the {subalgebra} subalgebra")]
    NotInSubalgebra { element: String, subalgebra: &'static str },
    #[error("norm {norm} is not scalar-valued at {element}")]
    NotScalarValued { norm: &'static str, element: String },
    #[error("invariant violation: {0}")]
    InvariantViolation(String),
    #[error("singular matrix: {0}")]
    SingularMatrix(String),
    #[error("unit is not unique: solution space has dimension {0}")]
    NonUniqueUnit(usize),
    #[error("product leaves the carrier: {0}")]
    NotClosed(String),
    #[error("search space of {0} candidates exceeds the 10^7 guard")]
    GridTooLarge(u128),
    #[error("closure grew past the cap of {0} elements")]
    CapExceeded(usize),
    #[error("elements have different form values")]
    MixedNorms,
    #[error("form value is zero")]
    NullForm,
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
