use thiserror::Error;

/// Errors produced by parsing, validation, and the solvers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed document: {0}")]
    Malformed(String),

    #[error("cannot parse rational from {0:?}")]
    BadRational(String),

    #[error("item {id}: value must be positive")]
    NonpositiveValue { id: usize },

    #[error("item {id}: cost must be nonnegative")]
    NegativeCost { id: usize },

    #[error("item {id}: bid must be nonnegative")]
    NegativeBid { id: usize },

    #[error("budget must be positive")]
    NonpositiveBudget,

    #[error("instance has no items")]
    NoItems,

    #[error("all items exceed the budget; market is empty after normalization")]
    EmptyMarket,

    #[error("bid profile does not cover item {id}")]
    MissingBid { id: usize },

    #[error("invalid generator range")]
    InvalidRange,

    #[error("epsilon must lie strictly between 0 and 2")]
    EpsilonOutOfRange,

    #[error("instance has {n} items but the exact oracle is limited to {limit}")]
    OracleLimit { n: usize, limit: usize },

    #[error("price distribution is degenerate: no items besides the highest-value one")]
    DegenerateSupport,

    #[error("every item's bid excludes it at the initial ratio; nothing to keep")]
    NoEligibleItems,
}
