use thiserror::Error;

/// Errors raised by the word model and the analyses built on it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("alphabet size {0} is outside the supported range 2..=36")]
    AlphabetSize(usize),

    #[error("invalid character {ch:?} at position {pos}")]
    InvalidChar { ch: char, pos: usize },

    #[error("letter {letter} at position {pos} is outside an alphabet of size {size}")]
    LetterOutOfRange { letter: u8, pos: usize, size: u8 },

    #[error("partial words must be nonempty")]
    Empty,

    #[error("alphabet mismatch: {left} vs {right}")]
    AlphabetMismatch { left: u8, right: u8 },

    #[error("window length must be at least 1")]
    ZeroWindow,

    #[error("a^n = {a}^{n} exceeds the supported rank range (2^40)")]
    RankOverflow { a: u8, n: usize },

    #[error("expected a word of length {expected}, got {actual}")]
    WrongLength { expected: usize, actual: usize },

    #[error("word contains a diamond at position {0}")]
    DiamondPresent(usize),

    #[error("word of length {len} is shorter than the window length {n}")]
    TooShort { len: usize, n: usize },

    #[error("period must be at least 1")]
    ZeroPeriod,

    #[error("letter map is not a permutation of 0..{0}")]
    NotAPermutation(u8),

    #[error("invalid frame character {ch:?} at position {pos}")]
    InvalidFrameChar { ch: char, pos: usize },

    #[error("search space estimate {estimate} exceeds the node budget {budget}")]
    OverBudget { estimate: u128, budget: u128 },

    #[error("{0}")]
    InvalidParameters(String),
}

pub type Result<T> = std::result::Result<T, Error>;
