use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("position {pos} out of range for length {len}")]
    OutOfRange { pos: usize, len: usize },

    #[error("invalid range [{l}, {r}] for length {len}")]
    InvalidRange { l: usize, r: usize, len: usize },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("symbol {0:?} is reserved")]
    ReservedSymbol(char),

    #[error("symbol {symbol} outside alphabet of size {alphabet}")]
    UnknownSymbol { symbol: u32, alphabet: u32 },

    #[error("wildcard budget exceeded: {count} > {budget}")]
    WildcardBudget { count: usize, budget: usize },

    #[error("pattern would have {0} non-wildcard symbols (at most 2 allowed)")]
    TooManySolids(usize),

    #[error("position {0} is a fixed wildcard slot")]
    WildcardSlot(usize),

    #[error("wildcards are not allowed here")]
    WildcardNotAllowed,

    #[error("pattern length {m} exceeds text length {n}")]
    PatternTooLong { m: usize, n: usize },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("length {len} exceeds hash context capacity {max}")]
    Capacity { len: usize, max: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
