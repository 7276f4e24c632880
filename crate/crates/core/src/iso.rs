//! Isomorphism search between finite algebras.
//!
//! A lattice isomorphism of finite distributive lattices is determined by
//! its restriction to join-irreducibles, so the search assigns
//! join-irreducibles one at a time, pruned by order-theoretic signatures,
//! and extends each complete assignment by joins. The extension is then
//! checked as a full monadic homomorphism.

use crate::algebra::FiniteMGAlgebra;
use crate::hom::{HomWitness, Signature};
use crate::lattice::Elem;

/// Isomorphism-invariant data attached to a join-irreducible.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct JiSignature {
    ideal: usize,
    filter: usize,
    jis_below: usize,
    jis_above: usize,
    in_image: bool,
    exists_ideal: usize,
    forall_ideal: usize,
}

struct Side<'a> {
    algebra: &'a FiniteMGAlgebra,
    jis: Vec<Elem>,
    signatures: Vec<JiSignature>,
}

impl<'a> Side<'a> {
    fn new(algebra: &'a FiniteMGAlgebra) -> Self {
        let lattice = algebra.lattice();
        let mut jis = lattice.join_irreducibles();
        let signature = |p: Elem, jis: &[Elem]| JiSignature {
            ideal: lattice.ideal_size(p),
            filter: lattice.filter_size(p),
            jis_below: jis.iter().filter(|&&q| lattice.leq(q, p)).count(),
            jis_above: jis.iter().filter(|&&q| lattice.leq(p, q)).count(),
            in_image: algebra.in_image(p),
            exists_ideal: lattice.ideal_size(algebra.exists(p)),
            forall_ideal: lattice.ideal_size(algebra.forall(p)),
        };
        let all = jis.clone();
        // Assign the most constrained points first: small ideals, then index.
        jis.sort_by_key(|&p| (signature(p, &all), p));
        let signatures = jis.iter().map(|&p| signature(p, &all)).collect();
        Side { algebra, jis, signatures }
    }

    fn profile(&self) -> Vec<JiSignature> {
        let mut s = self.signatures.clone();
        s.sort();
        s
    }
}

/// Finds an isomorphism from `a` onto `b`, if one exists.
pub fn find_isomorphism(a: &FiniteMGAlgebra, b: &FiniteMGAlgebra) -> Option<HomWitness> {
    find_isomorphism_with(a, b, &[])
}

/// Finds an isomorphism that additionally sends each pinned `x` to `y` for
/// every `(x, y)` in `pins`. The search order is fixed, so the result is
/// deterministic.
pub fn find_isomorphism_with(
    a: &FiniteMGAlgebra,
    b: &FiniteMGAlgebra,
    pins: &[(Elem, Elem)],
) -> Option<HomWitness> {
    if a.size() != b.size() || a.image().len() != b.image().len() {
        return None;
    }
    let left = Side::new(a);
    let right = Side::new(b);
    if left.jis.len() != right.jis.len() || left.profile() != right.profile() {
        return None;
    }
    let mut search = Search {
        left: &left,
        right: &right,
        pins,
        assigned: vec![usize::MAX; left.jis.len()],
        used: vec![false; right.jis.len()],
    };
    search.extend(0)
}

struct Search<'s, 'a> {
    left: &'s Side<'a>,
    right: &'s Side<'a>,
    pins: &'s [(Elem, Elem)],
    /// For each left join-irreducible slot, the chosen right slot.
    assigned: Vec<usize>,
    used: Vec<bool>,
}

impl Search<'_, '_> {
    fn extend(&mut self, slot: usize) -> Option<HomWitness> {
        if slot == self.left.jis.len() {
            return self.complete();
        }
        let la = self.left.algebra;
        let rb = self.right.algebra;
        let p = self.left.jis[slot];
        for cand in 0..self.right.jis.len() {
            if self.used[cand] || self.right.signatures[cand] != self.left.signatures[slot] {
                continue;
            }
            let q = self.right.jis[cand];
            let consistent = (0..slot).all(|prev| {
                let p2 = self.left.jis[prev];
                let q2 = self.right.jis[self.assigned[prev]];
                la.leq(p, p2) == rb.leq(q, q2) && la.leq(p2, p) == rb.leq(q2, q)
            });
            if !consistent || !self.pins_allow(p, q) {
                continue;
            }
            self.assigned[slot] = cand;
            self.used[cand] = true;
            let found = self.extend(slot + 1);
            self.used[cand] = false;
            if found.is_some() {
                return found;
            }
        }
        self.assigned[slot] = usize::MAX;
        None
    }

    /// A pin `x ↦ y` forces `p ≤ x ⟺ q ≤ y` for every assigned pair.
    fn pins_allow(&self, p: Elem, q: Elem) -> bool {
        self.pins
            .iter()
            .all(|&(x, y)| self.left.algebra.leq(p, x) == self.right.algebra.leq(q, y))
    }

    fn complete(&self) -> Option<HomWitness> {
        let a = self.left.algebra;
        let b = self.right.algebra;
        let map: Vec<Elem> = a
            .elements()
            .map(|x| {
                b.lattice().join_all(
                    (0..self.left.jis.len())
                        .filter(|&s| a.leq(self.left.jis[s], x))
                        .map(|s| self.right.jis[self.assigned[s]]),
                )
            })
            .collect();
        if self.pins.iter().any(|&(x, y)| map[x] != y) {
            return None;
        }
        HomWitness::new(a, b, map, Signature::Monadic)
            .ok()
            .filter(HomWitness::is_bijective)
    }
}
