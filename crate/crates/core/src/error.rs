use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Why a block failed to decode.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TamperReason {
    #[error("pivot element is zero, the dropped element is not determined")]
    ZeroPivot,
    #[error("no exact integer solution")]
    InexactSolution,
    #[error("recovered code {0} is outside the alphabet")]
    OutOfRange(i128),
    #[error("kept element {0} is outside the alphabet")]
    KeptOutOfRange(i64),
    #[error("determinant recheck failed: expected {expected}, got {actual}")]
    DeterminantMismatch { expected: i64, actual: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("message is empty")]
    EmptyMessage,

    #[error("symbol {0:?} is not in the alphabet")]
    UnknownSymbol(char),

    #[error("code {code} is outside [0, {size})")]
    CodeOutOfRange { code: i64, size: u32 },

    #[error("unknown alphabet {0:?}")]
    UnknownAlphabet(String),

    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    #[error("bad length: {0}")]
    BadLength(String),

    #[error("key index must be at least 1, got {0}")]
    InvalidKeyIndex(u64),

    /// 1-based indices of the blocks whose pivot is zero.
    #[error("degenerate blocks (zero pivot) at {0:?}")]
    DegenerateBlock(Vec<usize>),

    #[error("TamperDetected in block {block}: {reason}")]
    TamperDetected { block: usize, reason: TamperReason },

    #[error("header mismatch: {0}")]
    HeaderMismatch(String),

    #[error("malformed payload at line {line}: {msg}")]
    MalformedPayload { line: usize, msg: String },

    #[error("need at least two distinct rows to swap")]
    NotEnoughRows,

    #[error("invalid corruption spec: {0}")]
    InvalidCorruption(String),
}
