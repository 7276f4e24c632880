use thiserror::Error;

use crate::lattice::Elem;

/// Failures raised while constructing or transforming finite algebras.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("carrier must contain at least one element")]
    EmptyCarrier,
    #[error("element index {index} out of range for carrier of size {size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("order relation is not antisymmetric: {a} <= {b} <= {a}")]
    NotPartialOrder { a: Elem, b: Elem },
    #[error("elements {a} and {b} have no {bound}")]
    NotLattice { a: Elem, b: Elem, bound: &'static str },
    #[error("lattice is not distributive: {a} & ({b} | {c}) differs from ({a} & {b}) | ({a} & {c})")]
    NotDistributive { a: Elem, b: Elem, c: Elem },
    #[error("no greatest c with {a} & c <= {b}; lattice is not a Heyting algebra")]
    NotResiduated { a: Elem, b: Elem },
    #[error("prelinearity fails at ({a}, {b})")]
    NotPrelinear { a: Elem, b: Elem },
    #[error("quantifier image is not a subuniverse: {op}({a}, {b}) = {result} escapes it")]
    NotSubuniverse { op: &'static str, a: Elem, b: Elem, result: Elem },
    #[error("quantifier image lacks a bound around element {a}")]
    NotRelativelyComplete { a: Elem },
    #[error("quantifier image is not m-relatively complete: c1={c1} <= c2={c2} | a={a} but no c3 <= a in the image has c1 <= c2 | c3")]
    NotMRelativelyComplete { c1: Elem, c2: Elem, a: Elem },
    #[error("axiom {axiom} fails at {args:?}")]
    AxiomViolation { axiom: &'static str, args: Vec<Elem> },
    #[error("not a monadic filter: {reason}")]
    NotMonadicFilter { reason: String },
    #[error("map does not preserve {op} at {args:?}")]
    NotHomomorphism { op: &'static str, args: Vec<Elem> },
    #[error("{op} leaves the candidate subuniverse: result {result}")]
    NotClosed { op: &'static str, result: String },
    #[error("invalid chain coordinates: {0}")]
    InvalidCoordinates(String),
    #[error("{what} = {value} exceeds the configured bound {cap}")]
    BoundExceeded { what: &'static str, value: usize, cap: usize },
}
