//! Error type shared across the crate.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Input text could not be parsed; `line` is 1-based.
    Parse {
        line: usize,
        msg: String,
    },
    /// The given edge set contains a directed cycle, so it is not a poset.
    Cycle {
        element: String,
    },
    DuplicateElement(String),
    UnknownElement(String),
    /// An interval failed validation (emptiness, containment, connectivity).
    InvalidInterval(String),
    /// Materialization would exceed the configured size cap.
    SizeCap {
        size: u128,
        cap: usize,
    },
    NotPrime(u64),
    /// Matrix or fiber dimensions do not match.
    Dimension(String),
    /// A module representation is missing the map for a required relation.
    MissingMap(String),
    /// The operation requires a connected poset.
    Disconnected,
    /// `g . f != 0` for a purported chain complex.
    NotAComplex(String),
    Unsupported(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Parse { line, msg } => write!(f, "parse error at line {line}: {msg}"),
            Error::Cycle { element } => {
                write!(f, "edge set has a directed cycle through '{element}'")
            }
            Error::DuplicateElement(e) => write!(f, "duplicate element '{e}'"),
            Error::UnknownElement(e) => write!(f, "unknown element '{e}'"),
            Error::InvalidInterval(msg) => write!(f, "invalid interval: {msg}"),
            Error::SizeCap { size, cap } => {
                write!(f, "materialized size {size} exceeds cap {cap}")
            }
            Error::NotPrime(p) => write!(f, "field modulus {p} is not prime"),
            Error::Dimension(msg) => write!(f, "dimension mismatch: {msg}"),
            Error::MissingMap(msg) => write!(f, "missing structure map: {msg}"),
            Error::Disconnected => write!(f, "poset is not connected"),
            Error::NotAComplex(msg) => write!(f, "not a chain complex: {msg}"),
            Error::Unsupported(msg) => write!(f, "unsupported: {msg}"),
        }
    }
}

impl std::error::Error for Error {}
