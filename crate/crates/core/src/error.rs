use thiserror::Error;

/// Errors produced across the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("field size {p}^{m} exceeds the configured cap of {cap} elements")]
    FieldTooLarge { p: u64, m: u32, cap: u64 },
    #[error("polynomial has degree {got}, expected {expected}")]
    WrongDegree { expected: usize, got: usize },
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("coefficient {value} is not a residue modulo {p}")]
    BadCoefficient { value: u64, p: u64 },
    #[error("modulus {0} is reducible over the prime field")]
    Reducible(String),
    #[error("modulus {poly} is irreducible but its root has order {order}, not {expected}")]
    NotPrimitive {
        poly: String,
        order: u64,
        expected: u64,
    },
    #[error("no primitive polynomial of degree {m} over GF({p})")]
    NoPrimitive { p: u64, m: u32 },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid construction: {0}")]
    InvalidConstruction(String),
    #[error("{what} {value} out of range (limit {limit})")]
    OutOfRange {
        what: &'static str,
        value: u64,
        limit: u64,
    },
    #[error("cannot calibrate SNR of a zero measurement")]
    DegenerateSnr,
    #[error(
        "Jacobi eigensolver did not converge in {sweeps} sweeps (off-diagonal norm {off_norm:e})"
    )]
    NoConvergence { sweeps: usize, off_norm: f64 },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
