use thiserror::Error;

/// Errors raised by explicit single-instance operations.
///
/// Bulk operations (search, corpus validation) report failures as values and
/// never surface these directly.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("leading coefficient {0} is not a unit")]
    NonUnitLeading(String),

    #[error("coefficient of q^{requested} requested beyond truncation order {order}")]
    BeyondOrder { requested: i64, order: i64 },

    #[error("invalid pochhammer exponent/base ({exponent}, {base})")]
    InvalidExponent { exponent: i64, base: i64 },

    #[error("residue set is empty")]
    EmptySet,

    #[error("residue {residue} out of range for modulus {modulus}")]
    ResidueOutOfRange { residue: i64, modulus: i64 },

    #[error("theta atom exponent {exponent} is divisible by base {base}")]
    DegenerateZero { exponent: i64, base: i64 },

    #[error("theta function f(a,b) diverges: exponent sum {0} < 1")]
    Divergent(i64),

    #[error("product form needs positive argument exponents, got ({0}, {1})")]
    UnsupportedNegativeExponent(i64, i64),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("invalid identity: {0}")]
    InvalidIdentity(String),

    #[error("order {order} too small, need at least {needed}")]
    OrderTooSmall { order: i64, needed: i64 },

    #[error("shift {shift} is not divisible by common factor {factor}")]
    InconsistentScaling { shift: i64, factor: i64 },

    #[error("multiplier {alpha} does not map the identity to an identity: {reason}")]
    NotAnIdentity { alpha: i64, reason: String },

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    #[error("schema violation in {label}: {message}")]
    SchemaViolation { label: String, message: String },

    #[error("duplicate corpus label {0}")]
    DuplicateLabel(String),

    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            message: message.into(),
        }
    }
}
