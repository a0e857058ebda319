use alloc::string::String;

/// Errors raised by the exact and numeric engines.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("symbol `{0}` is already registered")]
    DuplicateName(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("operands come from different symbol registries")]
    RegistryMismatch,
    #[error("body is not invertible")]
    NonInvertibleBody,
    #[error("nu is undefined on {0}")]
    UndefinedNu(String),
    #[error("substitution for `{0}` does not preserve parity")]
    ParityMismatch(String),
    #[error("element is not parity-homogeneous")]
    Inhomogeneous,
    #[error("denominator vanishes at the evaluation point")]
    PoleAtPoint,
    #[error("no value assigned to `{0}`")]
    MissingValue(String),
    #[error("argument lies on the excluded ray of the branch window")]
    BranchCut,
    #[error("logarithm of an element with zero body")]
    ZeroBody,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("operation needs an even supermatrix")]
    NotEven,
    #[error("block is not invertible")]
    NonInvertibleBlock,
    #[error("bad dimensions: {0}")]
    BadDimensions(String),
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("transition needs nu of an unsupported expression: {0}")]
    UnresolvableNu(String),
    #[error("bad count {0}")]
    BadCount(usize),
    #[error("series does not terminate within the truncation bound")]
    TruncationOverflow,
}

pub type Result<T> = core::result::Result<T, Error>;
