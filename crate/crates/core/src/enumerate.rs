//! Exhaustive enumeration of small monadic Gödel algebras.
//!
//! Every finite distributive lattice is the lattice of down-sets of its
//! poset of join-irreducibles, so lattices are produced from posets up to
//! isomorphism. Each lattice then receives every quantifier image that the
//! algebra constructor accepts, and images giving isomorphic algebras are
//! merged.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::algebra::FiniteMGAlgebra;
use crate::config::Config;
use crate::error::AlgebraError;
use crate::iso::find_isomorphism;
use crate::lattice::{Elem, FiniteLattice};

/// A finite poset on points `0..len`; `down[i]` is the bit set of points
/// `≤ i`, including `i`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Poset {
    down: Vec<u32>,
}

impl Poset {
    pub fn len(&self) -> usize {
        self.down.len()
    }

    pub fn is_empty(&self) -> bool {
        self.down.is_empty()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.down[b] >> a & 1 == 1
    }

    /// Down-closed point sets as bit masks, sorted by size then value.
    pub fn down_sets(&self) -> Vec<u32> {
        let n = self.len();
        let mut sets: Vec<u32> = (0u32..1 << n)
            .filter(|&s| (0..n).all(|i| s >> i & 1 == 0 || self.down[i] & !s == 0))
            .collect();
        sets.sort_by_key(|&s| (s.count_ones(), s));
        sets
    }

    fn count_down_sets(&self, limit: usize) -> usize {
        let n = self.len();
        let mut count = 0;
        for s in 0u32..1 << n {
            if (0..n).all(|i| s >> i & 1 == 0 || self.down[i] & !s == 0) {
                count += 1;
                if count > limit {
                    break;
                }
            }
        }
        count
    }

    /// Lattice of down-sets ordered by inclusion. Element `i` is the `i`-th
    /// entry of [`Poset::down_sets`].
    pub fn down_set_lattice(&self) -> FiniteLattice {
        let sets = self.down_sets();
        let k = sets.len();
        let mut leq = vec![false; k * k];
        for i in 0..k {
            for j in 0..k {
                leq[i * k + j] = sets[i] & !sets[j] == 0;
            }
        }
        FiniteLattice::from_matrix(k, leq).expect("down-sets of a poset form a lattice")
    }

    /// Strict order relation packed row-major into a single integer.
    fn code_under(&self, order: &[usize]) -> u64 {
        let n = self.len();
        let mut code = 0u64;
        for (i, &a) in order.iter().enumerate() {
            for (j, &b) in order.iter().enumerate() {
                code <<= 1;
                if i != j && self.leq(a, b) {
                    code |= 1;
                }
            }
        }
        code | (n as u64) << 56
    }

    fn relabel(&self, order: &[usize]) -> Poset {
        let mut position = vec![0; order.len()];
        for (i, &p) in order.iter().enumerate() {
            position[p] = i;
        }
        let down = order
            .iter()
            .map(|&p| {
                (0..self.len())
                    .filter(|&q| self.leq(q, p))
                    .fold(0u32, |acc, q| acc | 1 << position[q])
            })
            .collect();
        Poset { down }
    }

    /// Canonical representative of the isomorphism class, with its code.
    fn canonical(&self) -> (u64, Poset) {
        let n = self.len();
        let signature = |p: usize| {
            let below = self.down[p].count_ones();
            let above = (0..n).filter(|&q| self.leq(p, q)).count();
            (below, above)
        };
        let mut points: Vec<usize> = (0..n).collect();
        points.sort_by_key(|&p| (signature(p), p));
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for &p in &points {
            match blocks.last_mut() {
                Some(b) if signature(b[0]) == signature(p) => b.push(p),
                _ => blocks.push(vec![p]),
            }
        }
        let mut best: Option<(u64, Vec<usize>)> = None;
        let mut order = Vec::with_capacity(n);
        permute_blocks(&blocks, 0, &mut order, &mut |order| {
            let code = self.code_under(order);
            if best.as_ref().is_none_or(|(c, _)| code < *c) {
                best = Some((code, order.to_vec()));
            }
        });
        let (code, order) = best.expect("at least one ordering");
        (code, self.relabel(&order))
    }

    fn with_maximal_point(&self, below: u32) -> Poset {
        let mut down = self.down.clone();
        down.push(below | 1 << self.len());
        Poset { down }
    }
}

fn permute_blocks(blocks: &[Vec<usize>], index: usize, order: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
    if index == blocks.len() {
        visit(order);
        return;
    }
    let mut block = blocks[index].clone();
    heap_permutations(&mut block, blocks[index].len(), &mut |perm| {
        let len = order.len();
        order.extend_from_slice(perm);
        permute_blocks(blocks, index + 1, order, visit);
        order.truncate(len);
    });
}

fn heap_permutations(items: &mut [usize], k: usize, visit: &mut dyn FnMut(&[usize])) {
    if k <= 1 {
        visit(items);
        return;
    }
    for i in 0..k - 1 {
        heap_permutations(items, k - 1, visit);
        if k.is_multiple_of(2) {
            items.swap(i, k - 1);
        } else {
            items.swap(0, k - 1);
        }
    }
    heap_permutations(items, k - 1, visit);
}

/// All posets, up to isomorphism, whose down-set lattice has at most
/// `max_lattice_size` elements, in canonical order (lattice size, code).
pub fn posets_up_to(max_lattice_size: usize) -> Vec<Poset> {
    let mut all: Vec<(usize, u64, Poset)> = vec![(1, 0, Poset { down: Vec::new() })];
    let mut frontier = vec![Poset { down: Vec::new() }];
    while !frontier.is_empty() {
        let mut next: BTreeSet<(u64, Poset)> = BTreeSet::new();
        for p in &frontier {
            for below in p.down_sets() {
                let q = p.with_maximal_point(below);
                if q.count_down_sets(max_lattice_size) <= max_lattice_size {
                    next.insert(q.canonical());
                }
            }
        }
        frontier = next.iter().map(|(_, p)| p.clone()).collect();
        for (code, p) in next {
            let size = p.count_down_sets(max_lattice_size);
            all.push((size, code, p));
        }
    }
    all.sort();
    all.into_iter().map(|(_, _, p)| p).collect()
}

/// Distributive lattices with at most `max_size` elements, one per
/// isomorphism class, smallest first.
pub fn distributive_lattices(max_size: usize) -> Vec<FiniteLattice> {
    posets_up_to(max_size).iter().map(Poset::down_set_lattice).collect()
}

/// Monadic Gödel algebras with between 2 and `max_size` elements, one per
/// isomorphism class, ordered by size, then underlying poset, then image.
pub fn enumerate_algebras(max_size: usize, config: &Config) -> Result<Vec<FiniteMGAlgebra>, AlgebraError> {
    if max_size > config.enumeration_cap {
        return Err(AlgebraError::BoundExceeded {
            what: "enumeration size",
            value: max_size,
            cap: config.enumeration_cap,
        });
    }
    let posets = posets_up_to(max_size);
    let per_poset: Vec<Vec<FiniteMGAlgebra>> = posets
        .par_iter()
        .filter(|p| !p.is_empty())
        .map(|p| algebras_on(&p.down_set_lattice()))
        .collect();
    Ok(per_poset.into_iter().flatten().collect())
}

/// Every quantifier image on `lattice` up to isomorphism of the resulting
/// algebras, in increasing order of the image bit mask over the interior
/// elements.
pub fn algebras_on(lattice: &FiniteLattice) -> Vec<FiniteMGAlgebra> {
    let interior: Vec<Elem> = lattice
        .elements()
        .filter(|&x| x != lattice.bottom() && x != lattice.top())
        .collect();
    let mut kept: Vec<FiniteMGAlgebra> = Vec::new();
    for mask in 0u64..1 << interior.len() {
        let mut image = vec![lattice.bottom(), lattice.top()];
        image.extend(
            interior
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &x)| x),
        );
        let Ok(algebra) = FiniteMGAlgebra::new(lattice.clone(), &image) else {
            continue;
        };
        if !kept.iter().any(|k| find_isomorphism(k, &algebra).is_some()) {
            kept.push(algebra);
        }
    }
    kept
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn distributive_lattice_counts() {
        // Numbers of distributive lattices of each size 1..=8.
        let lattices = distributive_lattices(8);
        let mut counts = [0usize; 9];
        for l in &lattices {
            counts[l.size()] += 1;
        }
        assert_eq!(&counts[1..], &[1, 1, 1, 2, 3, 5, 8, 15]);
    }

    #[test]
    fn small_algebra_counts() {
        let config = Config::default();
        assert_eq!(enumerate_algebras(2, &config).unwrap().len(), 1);
        assert_eq!(enumerate_algebras(3, &config).unwrap().len(), 3);
        assert_eq!(enumerate_algebras(4, &config).unwrap().len(), 9);
    }

    #[test]
    fn cap_is_enforced() {
        let err = enumerate_algebras(9, &Config::default()).unwrap_err();
        assert_eq!(err, AlgebraError::BoundExceeded { what: "enumeration size", value: 9, cap: 8 });
    }

    #[test]
    fn output_is_sorted_by_size() {
        let all = enumerate_algebras(6, &Config::default()).unwrap();
        assert!(all.windows(2).all(|w| w[0].size() <= w[1].size()));
    }
}
