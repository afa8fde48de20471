use thiserror::Error;

use crate::Label;

/// Errors produced by field construction, metric auditing and coding.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("{0} is not a prime p >= 7 with p = 1 (mod 6)")]
    NotSplittingPrime(u64),

    #[error("{what} = {value} exceeds the supported limit {limit}")]
    LimitExceeded {
        what: &'static str,
        value: String,
        limit: String,
    },

    #[error("label {label} is out of range for p = {p}")]
    LabelOutOfRange { label: Label, p: usize },

    #[error("division by zero in the residue field")]
    DivisionByZero,

    #[error("discrete logarithm of zero is undefined")]
    DlogOfZero,

    #[error("parameter t = {t} must satisfy t < n = {n}")]
    InvalidT { t: usize, n: usize },

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("{op} requires a code built with t = 0 (got t = {t})")]
    SingleRowOnly { op: &'static str, t: usize },

    #[error("probability {0} is outside [0, 1]")]
    InvalidProbability(f64),

    #[error("cannot parse {what} from {input:?}")]
    Parse { what: &'static str, input: String },

    #[error("word is not a codeword")]
    NotACodeword,

    #[error("construction invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
