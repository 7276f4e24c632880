//! JSON documents for algebras and spaces.
//!
//! Only the order (as covering pairs) and the quantifier image or the
//! partition are stored. Operation tables are recomputed on load.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{build_algebra, FiniteMGAlgebra};
use crate::duality::{DualityError, MGSpace};
use crate::error::AlgebraError;
use crate::lattice::Elem;

#[derive(Debug, Error)]
pub enum SerialError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Duality(#[from] DualityError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraDoc {
    pub size: usize,
    pub leq: Vec<[Elem; 2]>,
    pub exists_image: Vec<Elem>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceDoc {
    pub size: usize,
    pub leq: Vec<[usize; 2]>,
    pub classes: Vec<Vec<usize>>,
}

impl AlgebraDoc {
    pub fn of(algebra: &FiniteMGAlgebra) -> Self {
        let mut image = algebra.image().to_vec();
        image.sort_unstable();
        AlgebraDoc {
            size: algebra.size(),
            leq: algebra.cover_pairs().into_iter().map(|(a, b)| [a, b]).collect(),
            exists_image: image,
        }
    }

    pub fn build(&self) -> Result<FiniteMGAlgebra, AlgebraError> {
        let pairs: Vec<(Elem, Elem)> = self.leq.iter().map(|&[a, b]| (a, b)).collect();
        build_algebra(self.size, &pairs, &self.exists_image)
    }
}

impl SpaceDoc {
    pub fn of(space: &MGSpace) -> Self {
        SpaceDoc {
            size: space.size(),
            leq: space.cover_pairs().into_iter().map(|(a, b)| [a, b]).collect(),
            classes: space.classes().to_vec(),
        }
    }

    pub fn build(&self) -> Result<MGSpace, DualityError> {
        let pairs: Vec<(usize, usize)> = self.leq.iter().map(|&[a, b]| (a, b)).collect();
        MGSpace::new(self.size, &pairs, self.classes.clone())
    }
}

pub fn algebra_to_json(algebra: &FiniteMGAlgebra) -> String {
    serde_json::to_string_pretty(&AlgebraDoc::of(algebra)).expect("plain data serializes")
}

pub fn algebra_from_json(text: &str) -> Result<FiniteMGAlgebra, SerialError> {
    let doc: AlgebraDoc = serde_json::from_str(text)?;
    Ok(doc.build()?)
}

pub fn space_to_json(space: &MGSpace) -> String {
    serde_json::to_string_pretty(&SpaceDoc::of(space)).expect("plain data serializes")
}

/// Parses the order and partition only; call [`MGSpace::validate`] to check
/// the space conditions.
pub fn space_from_json(text: &str) -> Result<MGSpace, SerialError> {
    let doc: SpaceDoc = serde_json::from_str(text)?;
    Ok(doc.build()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chains::{build_chain, ChainCoordinates};
    use crate::duality::dual_space;

    #[test]
    fn chain_round_trip_is_identical() {
        let a = build_chain(&ChainCoordinates::from_list(&[2, 1, 0]).unwrap());
        let text = algebra_to_json(&a);
        assert_eq!(algebra_from_json(&text).unwrap(), a);
        assert_eq!(algebra_to_json(&algebra_from_json(&text).unwrap()), text);
    }

    #[test]
    fn space_round_trip() {
        let a = build_chain(&ChainCoordinates::from_list(&[2, 0, 1]).unwrap());
        let s = dual_space(&a).unwrap().space;
        assert_eq!(space_from_json(&space_to_json(&s)).unwrap(), s);
    }

    #[test]
    fn rejects_bad_documents() {
        assert!(matches!(algebra_from_json("{\"size\": 2}"), Err(SerialError::Json(_))));
        let bad = r#"{"size": 3, "leq": [[0,1],[1,2]], "exists_image": [0,2]}"#;
        assert!(algebra_from_json(bad).is_ok());
        let not_sub = r#"{"size": 4, "leq": [[0,1],[0,2],[1,3],[2,3]], "exists_image": [0,1,3]}"#;
        assert!(matches!(algebra_from_json(not_sub), Err(SerialError::Algebra(_))));
    }
}
