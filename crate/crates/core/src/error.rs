use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{a} is not invertible modulo {m}")]
    NotInvertible { a: i64, m: u64 },

    #[error("proportionality is undefined against the zero vector")]
    ZeroDenominatorVector,

    #[error("vectors live over different conductors ({0} and {1})")]
    ConductorMismatch(u64, u64),

    #[error("invalid rotation number {0}: expected p/q with 0 < p/q < 1")]
    InvalidRho(String),

    #[error("identity degree must be at least 2, got {0}")]
    InvalidDegree(i64),

    #[error("invalid sweep bounds qmax={qmax}, nmax={nmax}: need qmax >= 3 and nmax >= 2")]
    InvalidSweepBounds { qmax: u64, nmax: u64 },

    #[error("invalid interval [{a}, {b}]: need 0 < a < b < 1")]
    InvalidInterval { a: String, b: String },

    #[error("precision of {0} bits is below the 64-bit minimum")]
    InsufficientPrecision(u32),

    #[error("root {0} lies within 2^-10 of a tangent pole")]
    NearPole(String),

    #[error("malformed {what}: {input:?}")]
    Parse { what: &'static str, input: String },
}
