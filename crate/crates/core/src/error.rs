use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("variable index {index} out of range for n={n}")]
    VarOutOfRange { index: usize, n: usize },
    #[error("n={0} exceeds the supported maximum of 20")]
    NTooLarge(usize),
    #[error("mismatched variable counts: {0} vs {1}")]
    NMismatch(usize, usize),
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("not a permutation: {0}")]
    NotAPermutation(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("singular matrix")]
    Singular,
    #[error("out of supported range: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
