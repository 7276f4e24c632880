//! Homomorphism witnesses between finite algebras.

use serde::Serialize;

use crate::algebra::FiniteMGAlgebra;
use crate::error::AlgebraError;
use crate::lattice::Elem;

/// Which operations a map is required to preserve.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Signature {
    /// ∧, ∨, →, 0, 1
    Godel,
    /// the Gödel operations plus ∃ and ∀
    Monadic,
}

/// An element map that has been checked exhaustively to preserve the
/// operations of a [`Signature`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomWitness {
    map: Vec<Elem>,
    injective: bool,
    surjective: bool,
}

impl HomWitness {
    pub fn new(
        source: &FiniteMGAlgebra,
        target: &FiniteMGAlgebra,
        map: Vec<Elem>,
        signature: Signature,
    ) -> Result<Self, AlgebraError> {
        if map.len() != source.size() {
            return Err(AlgebraError::IndexOutOfRange { index: map.len(), size: source.size() });
        }
        if let Some(&bad) = map.iter().find(|&&x| x >= target.size()) {
            return Err(AlgebraError::IndexOutOfRange { index: bad, size: target.size() });
        }
        let h = |a: Elem| map[a];
        let fail = |op, args: Vec<Elem>| Err(AlgebraError::NotHomomorphism { op, args });
        if h(source.bottom()) != target.bottom() {
            return fail("0", vec![]);
        }
        if h(source.top()) != target.top() {
            return fail("1", vec![]);
        }
        for a in source.elements() {
            if signature == Signature::Monadic {
                if h(source.exists(a)) != target.exists(h(a)) {
                    return fail("exists", vec![a]);
                }
                if h(source.forall(a)) != target.forall(h(a)) {
                    return fail("forall", vec![a]);
                }
            }
            for b in source.elements() {
                if h(source.meet(a, b)) != target.meet(h(a), h(b)) {
                    return fail("meet", vec![a, b]);
                }
                if h(source.join(a, b)) != target.join(h(a), h(b)) {
                    return fail("join", vec![a, b]);
                }
                if h(source.imp(a, b)) != target.imp(h(a), h(b)) {
                    return fail("implies", vec![a, b]);
                }
            }
        }
        let mut hit = vec![false; target.size()];
        for &x in &map {
            hit[x] = true;
        }
        let surjective = hit.iter().all(|&b| b);
        let mut sorted = map.clone();
        sorted.sort_unstable();
        sorted.dedup();
        let injective = sorted.len() == map.len();
        Ok(HomWitness { map, injective, surjective })
    }

    pub fn identity(algebra: &FiniteMGAlgebra) -> Self {
        HomWitness {
            map: algebra.elements().collect(),
            injective: true,
            surjective: true,
        }
    }

    #[inline]
    pub fn apply(&self, a: Elem) -> Elem {
        self.map[a]
    }

    pub fn map(&self) -> &[Elem] {
        &self.map
    }

    pub fn injective(&self) -> bool {
        self.injective
    }

    pub fn surjective(&self) -> bool {
        self.surjective
    }

    pub fn is_bijective(&self) -> bool {
        self.injective && self.surjective
    }

    /// Elements sent to the top: the kernel filter of the map.
    pub fn kernel(&self, target: &FiniteMGAlgebra) -> Vec<Elem> {
        (0..self.map.len()).filter(|&a| self.map[a] == target.top()).collect()
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &HomWitness) -> HomWitness {
        let map: Vec<Elem> = self.map.iter().map(|&x| next.map[x]).collect();
        HomWitness {
            map,
            injective: self.injective && next.injective,
            surjective: self.surjective && next.surjective,
        }
    }

    /// Inverse of a bijective witness.
    pub fn inverse(&self) -> Option<HomWitness> {
        if !self.is_bijective() {
            return None;
        }
        let mut inv = vec![0; self.map.len()];
        for (a, &b) in self.map.iter().enumerate() {
            inv[b] = a;
        }
        Some(HomWitness { map: inv, injective: true, surjective: true })
    }
}
