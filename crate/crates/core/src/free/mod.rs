//! Finitely generated free algebras of the variety generated by chains.
//!
//! The join-irreducibles of `F(n)` that lie in the quantifier image are
//! indexed by labeled functions; their order comes from an explicit
//! covering rule. Adding the non-image join-irreducibles prescribed by the
//! coordinates gives the dual space, and `F(n)` is its algebra of down-sets.

mod counts;
mod labeled;
mod presentation;

use thiserror::Error;

use crate::duality::DualityError;
use crate::error::AlgebraError;

pub use counts::{count_checks, simple_function_count, surjections, CountReport, SimpleCount};
pub use labeled::{covers, enumerate_functions, enumerate_im, lambda, required_values, zero_pairs, LabeledFunction};
pub use presentation::{
    build_exists_pi, check_segments, components, expand_to_pi, free_algebra, free_by_product, generates_space,
    generator_sets, restrict, ExistsPi, FreeAlgebra, FreePresentation, Generation, Pi, ProductFree,
};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum FreeError {
    #[error("{what} = {value} is out of range (at most {max})")]
    OutOfRange { what: &'static str, value: usize, max: usize },
    #[error("invalid coordinates: {0}")]
    InvalidCoordinates(String),
    #[error("malformed forest: {0}")]
    MalformedForest(String),
    #[error("{n} generators requested, the configured bound is {cap}")]
    BoundExceeded { n: usize, cap: usize },
    #[error("{size} points exceed the bound of {cap}")]
    TooManyPoints { size: usize, cap: usize },
    #[error("inconsistent construction: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Duality(#[from] DualityError),
}
