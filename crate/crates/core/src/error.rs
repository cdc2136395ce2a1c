use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid modulus {0}: a modulus must be at least 1")]
    InvalidModulus(u64),

    #[error("modulus overflow: {0}")]
    ModulusOverflow(String),

    #[error("{0} is not a prime")]
    NotAPrime(u64),

    #[error("invalid bound {0}: the minimal prime bound must be at least 2")]
    InvalidBound(u64),

    /// A degree multiset that is not a multiset of positive even integers.
    #[error("invalid type: {0}")]
    InvalidType(String),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("group of order {order} exceeds the element budget {budget}")]
    SizeLimit { order: u128, budget: u64 },

    #[error("catalog entry `{entry}`: {reason}")]
    CatalogParse { entry: String, reason: String },

    #[error("cannot parse ring `{text}`: {reason}")]
    RingParse { text: String, reason: String },

    #[error("cannot parse degrees `{text}`: {reason}")]
    DegreeParse { text: String, reason: String },

    #[error("internal arithmetic error: {0}")]
    Arithmetic(String),
}
