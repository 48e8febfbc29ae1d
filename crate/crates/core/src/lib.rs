//! Budget-feasible procurement mechanisms for an additive buyer, with exact
//! rational arithmetic throughout the allocation and payment logic.
//!
//! The crate is organized around a two-stage design: a ratio-based pruning
//! stage ([`pruning`]) followed by posted-price second stages
//! ([`mechanisms`]). Benchmark oracles live in [`knapsack`], and exact plus
//! statistical verification in [`audit`].

pub mod audit;
pub mod error;
pub mod knapsack;
pub mod mechanisms;
pub mod model;
pub mod pruning;
pub mod scalar;

pub use error::Error;
pub use model::{BidProfile, Instance, Item, Outcome};
pub use scalar::Scalar;

/// Convenience result alias for fallible operations in this crate.
pub type Result<T> = std::result::Result<T, Error>;
