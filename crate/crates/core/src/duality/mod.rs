//! Finite duality between monadic Gödel algebras and MG-spaces.
//!
//! An MG-space here is a finite poset with an equivalence relation `E`;
//! the topology is discrete and plays no role. Point sets are bit masks, so
//! the operations that enumerate subsets accept at most 128 points.
//!
//! Two orders are in play. Dual-space points are prime filters ordered by
//! inclusion, while prime structure is stated on join-irreducibles with the
//! algebra order. [`prime_filter_leq`] is the only place where one is turned
//! into the other.

mod congruence;
mod dual;
mod interior;
mod space;

use thiserror::Error;

use crate::error::AlgebraError;
use crate::lattice::Elem;

pub use congruence::{congruence_lattice, image_congruence_count, maximal_congruences, Congruence};
pub use dual::{
    coordinates_of, dual_space, dualize_hom, prime_filter_leq, prime_structure, sigma, space_from_prime_order, DualSpace, PrimeStructure,
};
pub use interior::{interior_conditions, interior_operators, is_interior_operator};
pub use space::{
    algebra_from_space, find_space_isomorphism, MGSpace, PointSet, SpaceAlgebra, Validation, MAX_POINTS,
};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DualityError {
    #[error("space order is not antisymmetric at points {a} and {b}")]
    NotPartialOrder { a: usize, b: usize },
    #[error("classes do not partition the points: {0}")]
    BadPartition(String),
    #[error("point index {index} out of range for {size} points")]
    PointOutOfRange { index: usize, size: usize },
    #[error("the up-set of point {point} is not a chain")]
    UpSetNotChain { point: usize },
    #[error("saturation of the increasing set {set:?} is not increasing")]
    SaturationNotIncreasing { set: Vec<usize> },
    #[error("class interior of the increasing set {set:?} is not increasing")]
    InteriorNotIncreasing { set: Vec<usize> },
    #[error("space has {size} points, over the bound of {cap}")]
    TooLarge { size: usize, cap: usize },
    #[error("invalid space: {0}")]
    InvalidSpace(String),
    #[error("element {0} is not a join-irreducible in the quantifier image")]
    NotExistsPrime(Elem),
    #[error("not an interior operator: {0}")]
    NotInteriorOperator(String),
    #[error("dual map fails: {0}")]
    NotMorphism(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
