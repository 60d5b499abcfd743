use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("{name} = {value} is outside the domain {domain}")]
    Domain {
        name: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("invalid tree: {0}")]
    InvalidTree(String),

    #[error("edge list line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("dense oracle is limited to n <= {limit}, got n = {n}")]
    OracleTooLarge { n: usize, limit: usize },

    /// A floor in the Shearer recurrence came out negative. This cannot
    /// happen for lambda > 2 and is reported rather than clamped.
    #[error("pendant count r_{index} = {value} is negative")]
    NegativeCount { index: usize, value: f64 },

    #[error("({alpha}, {lambda}) is outside every covered regime: {reason}")]
    OutOfRegime {
        alpha: f64,
        lambda: f64,
        reason: String,
    },

    #[error("no sign change for {what} in (2, {upper}]")]
    NoBracket { what: &'static str, upper: f64 },
}

pub(crate) fn domain(name: &'static str, value: f64, domain: &'static str) -> Error {
    Error::Domain {
        name,
        value,
        domain,
    }
}
