//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("bit count {0} outside supported range 1..={max}", max = crate::objective::MAX_BITS)]
    BitsOutOfRange(u8),

    #[error("value {value} does not fit in {n_bits} bits")]
    ValueOutOfRange { value: u32, n_bits: u8 },

    #[error("dimension mismatch: state on {lhs} bits, operand on {rhs} bits")]
    DimensionMismatch { lhs: u8, rhs: u8 },

    #[error("empty value range: lo={lo} must be strictly below hi={hi}")]
    EmptyRange { lo: f64, hi: f64 },

    #[error("objective is identically zero; sup-norm normalization undefined")]
    ZeroSupNorm,

    #[error("objective is constant; traceless part vanishes")]
    ConstantObjective,

    #[error("not a valley center: mu(z) <= 0")]
    NotAValleyCenter,

    #[error("no trap: every non-optimal string has mu(z) <= 0")]
    NoTrap,

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid parameter: {0}")]
    InvalidParam(String),

    #[error("amplitude vector not normalized (norm^2 = {0})")]
    NotNormalized(f64),

    #[error("exhaustive enumeration supported up to 20 bits (got {0})")]
    TooManyBitsForExhaustive(u8),

    #[error("severing check materializes all ordered pairs; supported up to 12 bits (got {0})")]
    TooManyBitsForSevering(u8),

    #[error("commutator closure not converged after {max_depth} sweeps; partial dimension {dim}")]
    ClosureNotConverged { max_depth: usize, dim: usize },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    #[error("parse error: {0}")]
    Parse(String),
}
