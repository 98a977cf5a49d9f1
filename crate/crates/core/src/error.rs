use thiserror::Error;

/// Crate-wide error type. Witness-carrying variants format the offending
/// words at construction time so the message is self-contained.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("vertex {vertex} has a self-loop")]
    SelfLoop { vertex: usize },

    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("{family} graph needs at least {min} vertices, got {n}")]
    BadSize {
        family: &'static str,
        n: usize,
        min: usize,
    },

    #[error("alphabet size {q} is too small; need at least 2")]
    AlphabetTooSmall { q: u32 },

    #[error("alphabet size {q} is not prime")]
    NotPrime { q: u32 },

    #[error("zero has no multiplicative inverse")]
    ZeroInverse,

    #[error("word lengths differ: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("symbol {symbol} out of range for alphabet of size {q}")]
    SymbolOutOfRange { symbol: u32, q: u32 },

    #[error("index {index} out of range for {bound}")]
    IndexOutOfRange { index: u64, bound: u64 },

    #[error("search space of {needed} objects exceeds the limit {max_space}")]
    SpaceExceeded { needed: u128, max_space: u64 },

    #[error("time budget exhausted before the enumeration finished")]
    TimeBudgetExceeded,

    #[error("codebook is empty")]
    EmptyCodebook,

    #[error("duplicate word {word} in codebook")]
    DuplicateWord { word: String },

    #[error("word set is empty")]
    EmptySet,

    #[error("words {x} and {y} are confusable at vertex {vertex}")]
    ConfusablePair { x: String, y: String, vertex: usize },

    #[error("projection {projection} never occurs at vertex {vertex}")]
    UnknownProjection { projection: String, vertex: usize },

    #[error("matrix does not fit the graph: {reason}")]
    NotFitting { reason: String },

    #[error("not a valid storage code: {reason}")]
    NotRdss { reason: String },

    #[error("cover is incomplete: {uncovered} words uncovered")]
    IncompleteCover { uncovered: u64 },

    #[error("cover has no doubling generators")]
    NoGenerators,
}

pub type Result<T> = std::result::Result<T, Error>;
