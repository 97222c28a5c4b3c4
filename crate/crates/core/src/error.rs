use num_bigint::BigInt;
use thiserror::Error;

use crate::weight::Witness;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("x = {x} lies outside the stored table of {len} values")]
    OutOfWindow { x: u64, len: usize },

    #[error("{0}")]
    Domain(String),

    #[error("cannot parse weight `{input}`: {reason}")]
    Parse { input: String, reason: String },

    #[error("bracket numerator is odd at x = {x}")]
    InexactBracket { x: u64 },

    #[error("{what} = {requested} exceeds the configured bound {bound}")]
    BoundExceeded {
        what: &'static str,
        requested: u64,
        bound: u64,
    },

    #[error("weight is not in the class F: {0}")]
    NotInClass(Witness),

    #[error("reduced weight of orbit {shape} is not an integer at x = {x}")]
    InexactOrbit { shape: String, x: u64 },

    #[error("reduced weight of orbit {shape} at x = 0 is even ({value})")]
    EvenReducedWeight { shape: String, value: BigInt },

    #[error("orbit sum {orbit_sum} differs from the lattice value {direct}")]
    DecompositionMismatch { orbit_sum: BigInt, direct: BigInt },

    #[error("valuation of zero is infinite")]
    ZeroValuation,

    #[error("{0}")]
    Io(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(err: csv::Error) -> Self {
        Error::Io(err.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Io(err.to_string())
    }
}
