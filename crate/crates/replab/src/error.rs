use crate::avoidance::Violation;

/// Errors shared by every module in the crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("empty word")]
    EmptyWord,
    #[error("symbol {symbol} out of range for alphabet of size {alphabet_size}")]
    InvalidSymbol { symbol: u8, alphabet_size: u8 },
    #[error("alphabet size {0} unsupported (must be between 1 and 10)")]
    InvalidAlphabet(u8),
    #[error("invalid digit {0:?} in word")]
    InvalidDigit(char),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("power threshold {0} does not exceed 1; it would forbid every nonempty word")]
    ThresholdTooLow(String),
    #[error("minimum square period must be at least 1")]
    InvalidMinSquarePeriod,
    #[error("seed word already violates the spec: {0:?}")]
    SeedViolation(Violation),
    #[error("search inconclusive at depth {depth_reached} with {frontier_size} surviving words")]
    NotFinite {
        depth_reached: usize,
        frontier_size: u64,
    },
    #[error("cannot compose: inner target alphabet {inner_target} exceeds outer source alphabet {outer_source}")]
    AlphabetMismatch { outer_source: u8, inner_target: u8 },
    #[error("unknown morphism {0:?}")]
    UnknownMorphism(String),
    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),
    #[error("invalid forbidden set: {0}")]
    InvalidForbiddenSet(String),
    #[error("forbidden set is empty")]
    EmptyForbiddenSet,
    #[error("count overflow: value exceeds u64")]
    CountOverflow,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
