//! gl_n: flag partitions, the polynomial modules on both sides, central and Todd series,
//! the gl_n g-family and the intertwiner.

pub mod central;
pub mod family;
pub mod flag;
pub mod intertwine;
pub mod relations;
pub mod rep;

use loopyang_core::error::SeriesError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GlnError {
    #[error("denominator did not cancel after symmetrization into {0}")]
    NotPolynomial(String),
    #[error("result is not invariant under the Young subgroup of {0}")]
    NotInvariant(String),
    #[error("mode {0} is not available on this side")]
    BadMode(i64),
    #[error("need n >= 2 and d >= 1, got n={0}, d={1}")]
    BadShape(usize, usize),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

pub use flag::{flag_partitions, FlagPartition};
pub use rep::{PVector, Rep, Side};
