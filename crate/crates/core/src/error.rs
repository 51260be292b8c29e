use thiserror::Error;

/// Errors raised while validating circuits or building categories.
///
/// Every variant has a stable textual code (see [`Error::code`]) that the
/// command-line surface prints alongside the message.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("circuit needs at least 3 entries, got {len}")]
    TooShort { len: usize },
    #[error("a has {a} entries but nu has {nu}")]
    LengthMismatch { a: usize, nu: usize },
    #[error("entry a[{index}] is zero; every entry must be nonzero")]
    ZeroEntry { index: usize },
    #[error("a is not balanced: entries sum to {sum}")]
    UnbalancedA { sum: i64 },
    #[error("nu is not balanced: entries sum to {sum}")]
    UnbalancedNu { sum: i64 },
    #[error("entry {value} at index {index} exceeds the 2^31 magnitude cap")]
    Overflow { index: usize, value: i64 },
    #[error("operation needs at least two positive entries")]
    NeedTwoPositives,
    #[error("index out of range: {what}")]
    OutOfRange { what: String },
    #[error("expected j <= k, got j = {j}, k = {k}")]
    BadOrder { j: i64, k: i64 },
    #[error("spectral index {m} outside bounds for {j} -> {k}")]
    OutOfBounds { j: i64, k: i64, m: i64 },
    #[error("object count {n} must be below the volume {volume}")]
    VolumeBound { n: usize, volume: i64 },
    #[error("branch mismatch: p{left} composed with p{right} leaves the category range")]
    BranchMismatch { left: u8, right: u8 },
    #[error("element is not in the expected Hom space: {what}")]
    WrongHom { what: String },
    #[error("odd generator {index} would carry exponent {exponent}")]
    ExteriorOverflow { index: usize, exponent: u32 },
    #[error("recursion reached a circuit without a base case: {circuit}")]
    NeedBaseCase { circuit: String },
    #[error("mutation position {position} invalid for {size} objects")]
    BadPosition { position: usize, size: usize },
    #[error("matrix is not upper unitriangular")]
    NotUnitriangular,
    #[error("enumeration weight {weight} exceeds the cap {cap}")]
    WeightCap { weight: u64, cap: u64 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::TooShort { .. } => "E_TOO_SHORT",
            Error::LengthMismatch { .. } => "E_LENGTH_MISMATCH",
            Error::ZeroEntry { .. } => "E_ZERO_ENTRY",
            Error::UnbalancedA { .. } => "E_UNBALANCED_A",
            Error::UnbalancedNu { .. } => "E_UNBALANCED_NU",
            Error::Overflow { .. } => "E_OVERFLOW",
            Error::NeedTwoPositives => "E_NEED_TWO_POSITIVES",
            Error::OutOfRange { .. } => "E_OUT_OF_RANGE",
            Error::BadOrder { .. } => "E_BAD_ORDER",
            Error::OutOfBounds { .. } => "E_OUT_OF_BOUNDS",
            Error::VolumeBound { .. } => "E_VOLUME_BOUND",
            Error::BranchMismatch { .. } => "E_BRANCH_MISMATCH",
            Error::WrongHom { .. } => "E_WRONG_HOM",
            Error::ExteriorOverflow { .. } => "E_EXTERIOR_OVERFLOW",
            Error::NeedBaseCase { .. } => "E_NEED_BASE_CASE",
            Error::BadPosition { .. } => "E_BAD_POSITION",
            Error::NotUnitriangular => "E_NOT_UNITRIANGULAR",
            Error::WeightCap { .. } => "E_WEIGHT_CAP",
            Error::Parse(_) => "E_PARSE",
            Error::Io(_) => "E_IO",
        }
    }

    pub(crate) fn out_of_range(what: impl Into<String>) -> Self {
        Error::OutOfRange { what: what.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
