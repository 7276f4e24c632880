//! Finite bounded lattices given by an explicit order relation.
//!
//! Elements are dense indices `0..size`. Meet and join tables are computed
//! once at construction so that every lattice operation is a table lookup.

use crate::error::AlgebraError;

/// Index of an element in a finite carrier.
pub type Elem = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteLattice {
    size: usize,
    leq: Vec<bool>,
    meet: Vec<Elem>,
    join: Vec<Elem>,
    bottom: Elem,
    top: Elem,
}

impl FiniteLattice {
    /// Builds a lattice from any generating set of `a <= b` pairs. The
    /// relation is closed reflexively and transitively before the lattice
    /// axioms are checked.
    pub fn from_pairs<I>(size: usize, pairs: I) -> Result<Self, AlgebraError>
    where
        I: IntoIterator<Item = (Elem, Elem)>,
    {
        if size == 0 {
            return Err(AlgebraError::EmptyCarrier);
        }
        let mut leq = vec![false; size * size];
        for i in 0..size {
            leq[i * size + i] = true;
        }
        for (a, b) in pairs {
            for index in [a, b] {
                if index >= size {
                    return Err(AlgebraError::IndexOutOfRange { index, size });
                }
            }
            leq[a * size + b] = true;
        }
        // Warshall closure.
        for k in 0..size {
            for i in 0..size {
                if leq[i * size + k] {
                    for j in 0..size {
                        if leq[k * size + j] {
                            leq[i * size + j] = true;
                        }
                    }
                }
            }
        }
        Self::from_matrix(size, leq)
    }

    /// Builds a lattice from a full reflexive and transitive `leq` matrix in
    /// row-major order.
    pub fn from_matrix(size: usize, leq: Vec<bool>) -> Result<Self, AlgebraError> {
        if size == 0 {
            return Err(AlgebraError::EmptyCarrier);
        }
        assert_eq!(leq.len(), size * size, "order matrix has wrong length");
        for a in 0..size {
            for b in (a + 1)..size {
                if leq[a * size + b] && leq[b * size + a] {
                    return Err(AlgebraError::NotPartialOrder { a, b });
                }
            }
        }
        let le = |a: Elem, b: Elem| leq[a * size + b];
        let mut meet = vec![0; size * size];
        let mut join = vec![0; size * size];
        for a in 0..size {
            for b in a..size {
                let glb = extremal_bound(size, |c| le(c, a) && le(c, b), le)
                    .ok_or(AlgebraError::NotLattice { a, b, bound: "meet" })?;
                let lub = extremal_bound(size, |c| le(a, c) && le(b, c), |x, y| le(y, x))
                    .ok_or(AlgebraError::NotLattice { a, b, bound: "join" })?;
                meet[a * size + b] = glb;
                meet[b * size + a] = glb;
                join[a * size + b] = lub;
                join[b * size + a] = lub;
            }
        }
        let bottom = (0..size)
            .find(|&c| (0..size).all(|x| le(c, x)))
            .expect("a finite lattice has a least element");
        let top = (0..size)
            .find(|&c| (0..size).all(|x| le(x, c)))
            .expect("a finite lattice has a greatest element");
        Ok(FiniteLattice {
            size,
            leq,
            meet,
            join,
            bottom,
            top,
        })
    }

    /// The chain `0 < 1 < ... < size-1`.
    pub fn chain(size: usize) -> Result<Self, AlgebraError> {
        Self::from_pairs(size, (1..size).map(|i| (i - 1, i)))
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.leq[a * self.size + b]
    }

    #[inline]
    pub fn lt(&self, a: Elem, b: Elem) -> bool {
        a != b && self.leq(a, b)
    }

    #[inline]
    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        self.meet[a * self.size + b]
    }

    #[inline]
    pub fn join(&self, a: Elem, b: Elem) -> Elem {
        self.join[a * self.size + b]
    }

    #[inline]
    pub fn bottom(&self) -> Elem {
        self.bottom
    }

    #[inline]
    pub fn top(&self) -> Elem {
        self.top
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.size
    }

    pub fn comparable(&self, a: Elem, b: Elem) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    /// Meet of a finite family; the top element for an empty family.
    pub fn meet_all<I: IntoIterator<Item = Elem>>(&self, items: I) -> Elem {
        items.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    /// Join of a finite family; the bottom element for an empty family.
    pub fn join_all<I: IntoIterator<Item = Elem>>(&self, items: I) -> Elem {
        items.into_iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    /// First triple violating distributivity, scanning in index order.
    pub fn distributivity_violation(&self) -> Option<(Elem, Elem, Elem)> {
        for a in self.elements() {
            for b in self.elements() {
                for c in b..self.size {
                    let lhs = self.meet(a, self.join(b, c));
                    let rhs = self.join(self.meet(a, b), self.meet(a, c));
                    if lhs != rhs {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    pub fn is_distributive(&self) -> bool {
        self.distributivity_violation().is_none()
    }

    /// Elements covered by `a`.
    pub fn lower_covers(&self, a: Elem) -> Vec<Elem> {
        self.elements()
            .filter(|&b| self.lt(b, a))
            .filter(|&b| !self.elements().any(|c| self.lt(b, c) && self.lt(c, a)))
            .collect()
    }

    /// All covering pairs `(a, b)` with `a` covered by `b`, sorted.
    pub fn cover_pairs(&self) -> Vec<(Elem, Elem)> {
        let mut pairs = Vec::new();
        for b in self.elements() {
            for a in self.lower_covers(b) {
                pairs.push((a, b));
            }
        }
        pairs.sort_unstable();
        pairs
    }

    /// Join-irreducible elements: those with exactly one lower cover.
    pub fn join_irreducibles(&self) -> Vec<Elem> {
        self.elements()
            .filter(|&a| self.lower_covers(a).len() == 1)
            .collect()
    }

    /// Number of elements below `a`, `a` included.
    pub fn ideal_size(&self, a: Elem) -> usize {
        self.elements().filter(|&b| self.leq(b, a)).count()
    }

    /// Number of elements above `a`, `a` included.
    pub fn filter_size(&self, a: Elem) -> usize {
        self.elements().filter(|&b| self.leq(a, b)).count()
    }

    /// Whether the elements of `set` are pairwise comparable.
    pub fn is_chain(&self, set: &[Elem]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &a)| set[i + 1..].iter().all(|&b| self.comparable(a, b)))
    }
}

/// Returns the element satisfying `member` that dominates every other member
/// under `above(x, y)` ("y is at least as extreme as x"), if one exists.
fn extremal_bound(
    size: usize,
    member: impl Fn(Elem) -> bool,
    above: impl Fn(Elem, Elem) -> bool,
) -> Option<Elem> {
    let members: Vec<Elem> = (0..size).filter(|&c| member(c)).collect();
    members
        .iter()
        .copied()
        .find(|&cand| members.iter().all(|&other| above(other, cand)))
}
