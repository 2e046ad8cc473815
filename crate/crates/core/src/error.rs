use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("width {width} out of range (allowed 1..={max})")]
    WidthOutOfRange { width: usize, max: usize },

    #[error("signature widths differ: {left} vs {right}")]
    WidthMismatch { left: usize, right: usize },

    #[error("invalid signature text {0:?} (expected characters o, c, x)")]
    ParseSignature(String),

    #[error("signature {0} is not a valid cyclic signature")]
    NotCyclicValid(String),

    #[error("kink column {column} out of range for width {width}")]
    KinkOutOfRange { column: usize, width: usize },

    #[error("resource guard exceeded: {0}")]
    GuardExceeded(String),

    #[error("coefficient ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),

    #[error("cannot reach 2^{bits} with distinct primes below 2^{width}")]
    InfeasibleModuli { bits: u64, width: u32 },

    #[error("prime width {0} out of range 8..=31")]
    PrimeWidth(u32),

    #[error("inconsistent input: {0}")]
    Inconsistent(String),

    #[error("operation not supported: {0}")]
    Unsupported(String),

    #[error("polynomial is identically zero")]
    ZeroPolynomial,

    #[error("growth estimate did not converge to {digits} digits within n = {n_cap}")]
    NonConvergence { digits: usize, n_cap: usize },

    #[error("checkpoint error: {0}")]
    Checkpoint(String),
}
