use alloc::string::String;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Precondition and construction failures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    AlphabetTooSmall(u16),
    AlphabetTooLarge(u16),
    EmptyWord,
    SymbolOutOfRange {
        symbol: u8,
        size: u16,
    },
    AlphabetMismatch {
        left: u16,
        right: u16,
    },
    /// `word_a` is indexed from 1.
    ZeroWordIndex,
    WordTooLong(u64),
    DuplicatePatch(i64),
    ZeroLength,
    InvalidRange {
        lo: i64,
        hi: i64,
    },
    ZeroModulus,
    InvalidFamily(String),
    ZeroHorizon,
    InvalidFraction,
    InvalidTolerance,
    EmptyRegion,
    WindowTooWide {
        alphabet: u16,
        len: usize,
    },
    ResolutionMismatch {
        left: u32,
        right: u32,
    },
    TailIndexTooLarge {
        index: u64,
        horizon: u64,
    },
    NoAdmissibleIndex {
        resolution: u32,
        horizon: u64,
    },
    NoTargets,
    TooManyTargets(usize),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::AlphabetTooSmall(n) => write!(f, "alphabet size {n} is below 2"),
            Error::AlphabetTooLarge(n) => write!(f, "alphabet size {n} exceeds 36"),
            Error::EmptyWord => f.write_str("word must contain at least one symbol"),
            Error::SymbolOutOfRange { symbol, size } => {
                write!(f, "symbol {symbol} is outside an alphabet of size {size}")
            }
            Error::AlphabetMismatch { left, right } => {
                write!(f, "alphabet mismatch: {left} vs {right}")
            }
            Error::ZeroWordIndex => f.write_str("word index must be at least 1"),
            Error::WordTooLong(n) => write!(f, "word A_{n} is too long to materialize"),
            Error::DuplicatePatch(i) => write!(f, "duplicate patch index {i}"),
            Error::ZeroLength => f.write_str("length must be at least 1"),
            Error::InvalidRange { lo, hi } => write!(f, "empty range [{lo}, {hi}]"),
            Error::ZeroModulus => f.write_str("progression modulus must be at least 1"),
            Error::InvalidFamily(msg) => write!(f, "invalid interval family: {msg}"),
            Error::ZeroHorizon => f.write_str("horizon must be at least 1"),
            Error::InvalidFraction => f.write_str("headline fraction must lie in (0, 1]"),
            Error::InvalidTolerance => f.write_str("tolerance must lie in (0, 1)"),
            Error::EmptyRegion => f.write_str("region must list at least one cylinder"),
            Error::WindowTooWide { alphabet, len } => {
                write!(f, "windows of length {len} over {alphabet} symbols do not fit a 64-bit code")
            }
            Error::ResolutionMismatch { left, right } => {
                write!(f, "resolution mismatch: {left} vs {right}")
            }
            Error::TailIndexTooLarge { index, horizon } => {
                write!(f, "tail index {index} must be below the horizon {horizon}")
            }
            Error::NoAdmissibleIndex { resolution, horizon } => {
                write!(f, "no patch index outside [-{resolution}, {resolution}] within horizon {horizon}")
            }
            Error::NoTargets => f.write_str("at least one target point is required"),
            Error::TooManyTargets(n) => write!(f, "{n} targets requested, at most 5 supported"),
        }
    }
}

impl core::error::Error for Error {}
