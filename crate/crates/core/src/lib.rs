//! Finite monadic Gödel algebras.
//!
//! The crate covers construction and validation of finite algebras, term
//! evaluation and identity checking, the finite duality with MG-spaces and
//! its congruence theory, subvariety membership by height and width, the
//! Glivenko quotient, and the free algebras of the chain-generated variety.

pub mod algebra;
pub mod chains;
pub mod config;
pub mod duality;
pub mod construct;
pub mod dot;
pub mod enumerate;
pub mod glivenko;
pub mod error;
pub mod free;
pub mod hom;
pub mod iso;
pub mod lattice;
pub mod serial;
pub mod terms;
pub mod varieties;
pub mod verify;
pub mod witness;

pub use algebra::{build_algebra, Classification, FiniteMGAlgebra};
pub use config::Config;
pub use error::AlgebraError;
pub use hom::{HomWitness, Signature};
pub use iso::{find_isomorphism, find_isomorphism_with};
pub use lattice::{Elem, FiniteLattice};
pub use witness::{non_local_finite_witness, Scalar};

/// Exact rationals used for the witness sequence.
pub type Rational = num_rational::Ratio<i64>;
