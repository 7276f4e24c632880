//! Finite monadic Gödel algebras.
//!
//! An algebra is a finite Gödel algebra together with the common image `C`
//! of its two quantifiers. `C` must be an m-relatively complete subuniverse;
//! the quantifiers are then forced:
//!
//! ```text
//! ∃a = min { c ∈ C : c ≥ a }      ∀a = max { c ∈ C : c ≤ a }
//! ```
//!
//! All operation tables are computed once and the value is immutable
//! afterwards.

use crate::error::AlgebraError;
use crate::lattice::{Elem, FiniteLattice};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteMGAlgebra {
    lattice: FiniteLattice,
    imp: Vec<Elem>,
    exists: Vec<Elem>,
    forall: Vec<Elem>,
    image: Vec<Elem>,
    in_image: Vec<bool>,
}

/// Structural classification read off the quantifier image.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Classification {
    /// finitely subdirectly irreducible
    pub fsi: bool,
    /// subdirectly irreducible
    pub si: bool,
    pub simple: bool,
}

/// Builds an algebra from an order relation (any generating set of pairs)
/// and the desired quantifier image.
pub fn build_algebra(
    size: usize,
    leq: &[(Elem, Elem)],
    exists_image: &[Elem],
) -> Result<FiniteMGAlgebra, AlgebraError> {
    let lattice = FiniteLattice::from_pairs(size, leq.iter().copied())?;
    FiniteMGAlgebra::new(lattice, exists_image)
}

impl FiniteMGAlgebra {
    /// Validates the lattice as a Gödel algebra and `image` as an
    /// m-relatively complete subuniverse, then installs the quantifiers.
    pub fn new(lattice: FiniteLattice, image: &[Elem]) -> Result<Self, AlgebraError> {
        let n = lattice.size();
        if let Some((a, b, c)) = lattice.distributivity_violation() {
            return Err(AlgebraError::NotDistributive { a, b, c });
        }
        let imp = heyting_implication(&lattice)?;
        let top = lattice.top();
        let bot = lattice.bottom();
        for a in 0..n {
            for b in (a + 1)..n {
                if lattice.join(imp[a * n + b], imp[b * n + a]) != top {
                    return Err(AlgebraError::NotPrelinear { a, b });
                }
            }
        }

        let mut in_image = vec![false; n];
        for &c in image {
            if c >= n {
                return Err(AlgebraError::IndexOutOfRange { index: c, size: n });
            }
            in_image[c] = true;
        }
        let image: Vec<Elem> = (0..n).filter(|&c| in_image[c]).collect();
        for constant in [bot, top] {
            if !in_image[constant] {
                return Err(AlgebraError::NotSubuniverse {
                    op: "constant",
                    a: constant,
                    b: constant,
                    result: constant,
                });
            }
        }
        for &a in &image {
            for &b in &image {
                let checks = [
                    ("meet", lattice.meet(a, b)),
                    ("join", lattice.join(a, b)),
                    ("implies", imp[a * n + b]),
                ];
                for (op, result) in checks {
                    if !in_image[result] {
                        return Err(AlgebraError::NotSubuniverse { op, a, b, result });
                    }
                }
            }
        }

        // (s1): finite images always have these bounds; kept as a check.
        let mut exists = vec![0; n];
        let mut forall = vec![0; n];
        for a in 0..n {
            let up: Vec<Elem> = image.iter().copied().filter(|&c| lattice.leq(a, c)).collect();
            let down: Vec<Elem> = image.iter().copied().filter(|&c| lattice.leq(c, a)).collect();
            let least = up.iter().copied().find(|&c| up.iter().all(|&d| lattice.leq(c, d)));
            let greatest = down.iter().copied().find(|&c| down.iter().all(|&d| lattice.leq(d, c)));
            match (least, greatest) {
                (Some(e), Some(f)) => {
                    exists[a] = e;
                    forall[a] = f;
                }
                _ => return Err(AlgebraError::NotRelativelyComplete { a }),
            }
        }

        // (s2), checked verbatim over all triples.
        for &c1 in &image {
            for &c2 in &image {
                for a in 0..n {
                    if !lattice.leq(c1, lattice.join(c2, a)) {
                        continue;
                    }
                    let witnessed = image
                        .iter()
                        .any(|&c3| lattice.leq(c3, a) && lattice.leq(c1, lattice.join(c2, c3)));
                    if !witnessed {
                        return Err(AlgebraError::NotMRelativelyComplete { c1, c2, a });
                    }
                }
            }
        }

        let algebra = FiniteMGAlgebra {
            lattice,
            imp,
            exists,
            forall,
            image,
            in_image,
        };
        algebra.check_axioms()?;
        Ok(algebra)
    }

    /// Re-checks the defining identities of monadic Gödel algebras on the
    /// installed tables. Cost is quadratic in the carrier.
    fn check_axioms(&self) -> Result<(), AlgebraError> {
        let one = self.top();
        for x in self.elements() {
            if self.imp(self.forall(x), x) != one {
                return Err(AlgebraError::AxiomViolation { axiom: "M1", args: vec![x] });
            }
            for y in self.elements() {
                if self.forall(self.imp(x, self.forall(y))) != self.imp(self.exists(x), self.forall(y)) {
                    return Err(AlgebraError::AxiomViolation { axiom: "M2", args: vec![x, y] });
                }
                if self.forall(self.imp(self.forall(x), y)) != self.imp(self.forall(x), self.forall(y)) {
                    return Err(AlgebraError::AxiomViolation { axiom: "M3", args: vec![x, y] });
                }
                if self.forall(self.join(self.exists(x), y)) != self.join(self.exists(x), self.forall(y)) {
                    return Err(AlgebraError::AxiomViolation { axiom: "M4", args: vec![x, y] });
                }
            }
            if self.exists(self.meet(x, x)) != self.meet(self.exists(x), self.exists(x)) {
                return Err(AlgebraError::AxiomViolation { axiom: "M5", args: vec![x] });
            }
        }
        Ok(())
    }

    /// Gödel algebra with identity quantifiers (image = whole carrier).
    pub fn with_identity_quantifiers(lattice: FiniteLattice) -> Result<Self, AlgebraError> {
        let all: Vec<Elem> = lattice.elements().collect();
        Self::new(lattice, &all)
    }

    /// Same lattice, different quantifier image.
    pub fn with_image(&self, image: &[Elem]) -> Result<Self, AlgebraError> {
        Self::new(self.lattice.clone(), image)
    }

    pub fn lattice(&self) -> &FiniteLattice {
        &self.lattice
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.lattice.size()
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        self.lattice.elements()
    }

    #[inline]
    pub fn bottom(&self) -> Elem {
        self.lattice.bottom()
    }

    #[inline]
    pub fn top(&self) -> Elem {
        self.lattice.top()
    }

    #[inline]
    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.lattice.leq(a, b)
    }

    #[inline]
    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        self.lattice.meet(a, b)
    }

    #[inline]
    pub fn join(&self, a: Elem, b: Elem) -> Elem {
        self.lattice.join(a, b)
    }

    #[inline]
    pub fn imp(&self, a: Elem, b: Elem) -> Elem {
        self.imp[a * self.size() + b]
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.imp(a, self.bottom())
    }

    #[inline]
    pub fn exists(&self, a: Elem) -> Elem {
        self.exists[a]
    }

    #[inline]
    pub fn forall(&self, a: Elem) -> Elem {
        self.forall[a]
    }

    /// The common image of `∃` and `∀`, in index order.
    pub fn image(&self) -> &[Elem] {
        &self.image
    }

    #[inline]
    pub fn in_image(&self, a: Elem) -> bool {
        self.in_image[a]
    }

    /// Equivalence `(a → b) ∧ (b → a)`.
    pub fn biimp(&self, a: Elem, b: Elem) -> Elem {
        self.meet(self.imp(a, b), self.imp(b, a))
    }

    pub fn classify(&self) -> Classification {
        if self.size() < 2 {
            return Classification { fsi: false, si: false, simple: false };
        }
        let fsi = self.lattice.is_chain(&self.image);
        let top = self.top();
        let below_top: Vec<Elem> = self.image.iter().copied().filter(|&c| c != top).collect();
        let si = fsi && below_top.iter().any(|&u| below_top.iter().all(|&c| self.leq(c, u)));
        let simple = self.image.len() == 2;
        Classification { fsi, si, simple }
    }

    /// Order pairs used for serialization: the covering relation.
    pub fn cover_pairs(&self) -> Vec<(Elem, Elem)> {
        self.lattice.cover_pairs()
    }
}

/// `a → b = max { c : a ∧ c ≤ b }` for every pair, or the first pair where
/// the maximum does not exist.
fn heyting_implication(lattice: &FiniteLattice) -> Result<Vec<Elem>, AlgebraError> {
    let n = lattice.size();
    let mut imp = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            let candidate = lattice.join_all((0..n).filter(|&c| lattice.leq(lattice.meet(a, c), b)));
            if !lattice.leq(lattice.meet(a, candidate), b) {
                return Err(AlgebraError::NotResiduated { a, b });
            }
            imp[a * n + b] = candidate;
        }
    }
    Ok(imp)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(n: usize, image: &[Elem]) -> Result<FiniteMGAlgebra, AlgebraError> {
        let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        build_algebra(n, &pairs, image)
    }

    #[test]
    fn four_chain_with_middle_image() {
        // 0 < a1 < a2 < 1, image {0, a2, 1}
        let a = chain(4, &[0, 2, 3]).unwrap();
        assert_eq!(a.forall(1), 0);
        assert_eq!(a.exists(1), 2);
        assert_eq!(a.exists(2), 2);
        assert_eq!(a.forall(2), 2);
        assert_eq!(a.imp(2, 1), 1);
        assert_eq!(a.imp(1, 2), 3);
        assert_eq!(a.neg(1), 0);
    }

    #[test]
    fn two_element_identity_quantifiers() {
        let a = chain(2, &[0, 1]).unwrap();
        for x in a.elements() {
            assert_eq!(a.exists(x), x);
            assert_eq!(a.forall(x), x);
        }
        assert_eq!(a.classify(), Classification { fsi: true, si: true, simple: true });
    }

    #[test]
    fn product_image_fails_s2() {
        // 3-chain × 2-chain; index = 2*i + j with i ∈ {0,a,1}, j ∈ {0,1}.
        let mut pairs = Vec::new();
        for i in 0..3 {
            for j in 0..2 {
                if i + 1 < 3 {
                    pairs.push((2 * i + j, 2 * (i + 1) + j));
                }
                if j == 0 {
                    pairs.push((2 * i, 2 * i + 1));
                }
            }
        }
        let err = build_algebra(6, &pairs, &[0, 3, 5]).unwrap_err();
        assert_eq!(err, AlgebraError::NotMRelativelyComplete { c1: 5, c2: 3, a: 4 });
    }

    #[test]
    fn image_must_be_subuniverse() {
        // Boolean square 0, p, q, 1 with image {0, p, 1}: ¬p = q escapes.
        let pairs = [(0, 1), (0, 2), (1, 3), (2, 3)];
        let err = build_algebra(4, &pairs, &[0, 1, 3]).unwrap_err();
        assert!(matches!(err, AlgebraError::NotSubuniverse { op: "implies", .. }));
        let err = build_algebra(4, &pairs, &[0, 1, 2]).unwrap_err();
        assert!(matches!(err, AlgebraError::NotSubuniverse { op: "constant", .. }));
    }

    #[test]
    fn non_distributive_reported_first() {
        // diamond M3
        let pairs = [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)];
        let err = build_algebra(5, &pairs, &[0, 4]).unwrap_err();
        assert!(matches!(err, AlgebraError::NotDistributive { .. }));
    }

    #[test]
    fn boolean_square_images() {
        // Boolean algebras are Gödel algebras.
        let pairs = [(0, 1), (0, 2), (1, 3), (2, 3)];
        let a = build_algebra(4, &pairs, &[0, 3]).unwrap();
        assert_eq!(a.classify(), Classification { fsi: true, si: true, simple: true });
        let b = build_algebra(4, &pairs, &[0, 1, 2, 3]).unwrap();
        assert!(!b.classify().fsi);
    }

    #[test]
    fn non_prelinear_heyting_algebra_rejected() {
        // 0 < p, q < p|q < 1 : Boolean square with a new top; (p→q)|(q→p) = q|p ≠ 1
        let pairs = [(0, 1), (0, 2), (1, 3), (2, 3), (3, 4)];
        let err = build_algebra(5, &pairs, &[0, 4]).unwrap_err();
        assert!(matches!(err, AlgebraError::NotPrelinear { .. }));
    }

    #[test]
    fn classification_of_three_image_chain() {
        let a = chain(4, &[0, 2, 3]).unwrap();
        assert_eq!(a.classify(), Classification { fsi: true, si: true, simple: false });
    }
}
