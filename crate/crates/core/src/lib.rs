//! Exact Hirzebruch genera of complete intersections `X_n(d_1, ..., d_r)`.
//!
//! Todd, χ_y, Euler characteristic, signature, Â, A_k and the level-N cusp
//! values χ(X, K^{k/N}) are computed in exact rational arithmetic through
//! independent routes that are expected to agree bit for bit:
//!
//! - closed binomial-sum formulas ([`closed`]),
//! - coefficient extraction from generating functions ([`oracles`]),
//! - evaluation of a characteristic power series on formal Chern roots
//!   ([`oracles::genus_chern_root`]).
//!
//! The [`verify`] module sweeps parameter ranges and checks the vanishing
//! theorems and lower bounds satisfied by these genera.

pub mod arith;
pub mod ci;
pub mod closed;
pub mod oracles;
pub mod query;
pub mod series;
pub mod verify;

pub use arith::{binomial, binomial_reflect_check, Rational};
pub use ci::{CompleteIntersection, TwistedGenusQuery};
pub use oracles::{CharacteristicSeries, ChiYPolynomial, SeriesLabel};
pub use series::Series;

/// Genus values are plain exact rationals.
pub type GenusValue = Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("series order mismatch: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("series has zero constant term and cannot be inverted")]
    NotInvertible,
    #[error("coefficient index {index} outside 0..={order}")]
    CoefficientOutOfRange { index: i64, order: usize },
    #[error("series order {have} too small, need at least {need}")]
    InsufficientOrder { have: usize, need: usize },
    #[error("invalid complete intersection: {0}")]
    InvalidIntersection(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("too many degrees: r = {0} exceeds the limit of {max}", max = closed::MAX_DEGREES)]
    TooManyDegrees(usize),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
