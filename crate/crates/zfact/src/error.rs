//! Error type shared by every module in the crate.

use thiserror::Error;

/// Largest base accepted anywhere in the crate. Bases are machine words;
/// only arguments of the counting functions are arbitrary precision.
pub const MAX_BASE: u64 = (1 << 63) - 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid base {0}: bases must satisfy 2 <= b <= 2^63 - 1")]
    InvalidBase(u64),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("floor_log is undefined for n = 0")]
    UndefinedLog,

    #[error("rational {0} lies outside [0, 1]")]
    OutsideUnitInterval(String),

    #[error("base {0} is not square-free with at least two prime factors")]
    NotSquarefree(u64),

    #[error("factorial argument {n} exceeds the oracle cap {cap}")]
    CapExceeded { n: u64, cap: u64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_base(base: u64) -> Result<()> {
    if !(2..=MAX_BASE).contains(&base) {
        return Err(Error::InvalidBase(base));
    }
    Ok(())
}
