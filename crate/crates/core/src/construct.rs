//! Standard constructions: generated subalgebras, products, quotients by
//! filters and ordinal sums.

use std::collections::{BTreeSet, HashMap};

use crate::algebra::FiniteMGAlgebra;
use crate::error::AlgebraError;
use crate::hom::{HomWitness, Signature};
use crate::lattice::{Elem, FiniteLattice};

/// Least subset containing `seeds`, 0 and 1 and closed under ∧, ∨, →, ∃, ∀.
/// Returned in index order.
pub fn generate_subalgebra(algebra: &FiniteMGAlgebra, seeds: &[Elem]) -> Vec<Elem> {
    let n = algebra.size();
    let mut member = vec![false; n];
    let mut members: Vec<Elem> = Vec::new();
    let push = |x: Elem, member: &mut Vec<bool>, members: &mut Vec<Elem>| {
        if !member[x] {
            member[x] = true;
            members.push(x);
        }
    };
    push(algebra.bottom(), &mut member, &mut members);
    push(algebra.top(), &mut member, &mut members);
    for &s in seeds {
        push(s, &mut member, &mut members);
    }
    let mut done = 0;
    while done < members.len() {
        let x = members[done];
        done += 1;
        push(algebra.exists(x), &mut member, &mut members);
        push(algebra.forall(x), &mut member, &mut members);
        let mut i = 0;
        while i < done {
            let y = members[i];
            i += 1;
            for z in [
                algebra.meet(x, y),
                algebra.join(x, y),
                algebra.imp(x, y),
                algebra.imp(y, x),
            ] {
                push(z, &mut member, &mut members);
            }
        }
    }
    members.sort_unstable();
    members
}

/// Whether `set` is closed under every operation of `algebra`.
pub fn is_subuniverse(algebra: &FiniteMGAlgebra, set: &[Elem]) -> bool {
    let mut member = vec![false; algebra.size()];
    for &x in set {
        member[x] = true;
    }
    member[algebra.bottom()]
        && member[algebra.top()]
        && set.iter().all(|&x| {
            member[algebra.exists(x)]
                && member[algebra.forall(x)]
                && set.iter().all(|&y| {
                    member[algebra.meet(x, y)] && member[algebra.join(x, y)] && member[algebra.imp(x, y)]
                })
        })
}

/// Restriction of `algebra` to a subuniverse, with the inclusion map.
/// Elements of the result are numbered in the order of `subuniverse`.
pub fn subalgebra(
    algebra: &FiniteMGAlgebra,
    subuniverse: &[Elem],
) -> Result<(FiniteMGAlgebra, HomWitness), AlgebraError> {
    let m = subuniverse.len();
    let mut leq = vec![false; m * m];
    for (i, &x) in subuniverse.iter().enumerate() {
        for (j, &y) in subuniverse.iter().enumerate() {
            leq[i * m + j] = algebra.leq(x, y);
        }
    }
    let lattice = FiniteLattice::from_matrix(m, leq)?;
    let image: Vec<Elem> = (0..m).filter(|&i| algebra.in_image(subuniverse[i])).collect();
    let sub = FiniteMGAlgebra::new(lattice, &image)?;
    let inclusion = HomWitness::new(&sub, algebra, subuniverse.to_vec(), Signature::Monadic)?;
    Ok((sub, inclusion))
}

/// Mixed-radix encoding of product tuples: the first factor is the most
/// significant digit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductIndex {
    radices: Vec<usize>,
}

impl ProductIndex {
    pub fn new(radices: Vec<usize>) -> Self {
        ProductIndex { radices }
    }

    pub fn size(&self) -> usize {
        self.radices.iter().product()
    }

    pub fn encode(&self, coords: &[Elem]) -> Elem {
        coords
            .iter()
            .zip(&self.radices)
            .fold(0, |acc, (&c, &r)| acc * r + c)
    }

    pub fn decode(&self, mut index: Elem) -> Vec<Elem> {
        let mut coords = vec![0; self.radices.len()];
        for (slot, &r) in coords.iter_mut().zip(&self.radices).rev() {
            *slot = index % r;
            index /= r;
        }
        coords
    }
}

/// Direct product with componentwise operations and quantifier image the
/// product of the images.
pub fn product(factors: &[FiniteMGAlgebra]) -> Result<(FiniteMGAlgebra, ProductIndex), AlgebraError> {
    if factors.is_empty() {
        return Err(AlgebraError::EmptyCarrier);
    }
    let index = ProductIndex::new(factors.iter().map(|f| f.size()).collect());
    let n = index.size();
    let tuples: Vec<Vec<Elem>> = (0..n).map(|i| index.decode(i)).collect();
    let mut leq = vec![false; n * n];
    for i in 0..n {
        for j in 0..n {
            leq[i * n + j] = factors
                .iter()
                .enumerate()
                .all(|(k, f)| f.leq(tuples[i][k], tuples[j][k]));
        }
    }
    let lattice = FiniteLattice::from_matrix(n, leq)?;
    let image: Vec<Elem> = (0..n)
        .filter(|&i| factors.iter().enumerate().all(|(k, f)| f.in_image(tuples[i][k])))
        .collect();
    Ok((FiniteMGAlgebra::new(lattice, &image)?, index))
}

/// A filter of a finite algebra closed under ∀.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonadicFilter {
    members: Vec<bool>,
}

impl MonadicFilter {
    pub fn new(algebra: &FiniteMGAlgebra, members: &[Elem]) -> Result<Self, AlgebraError> {
        let set = lattice_filter(algebra, members)?;
        for a in algebra.elements() {
            if set[a] && !set[algebra.forall(a)] {
                return Err(AlgebraError::NotMonadicFilter {
                    reason: format!("{a} is a member but its universal closure {} is not", algebra.forall(a)),
                });
            }
        }
        Ok(MonadicFilter { members: set })
    }

    /// The principal filter `[p)`.
    pub fn principal(algebra: &FiniteMGAlgebra, p: Elem) -> Result<Self, AlgebraError> {
        let members: Vec<Elem> = algebra.elements().filter(|&a| algebra.leq(p, a)).collect();
        Self::new(algebra, &members)
    }

    pub fn contains(&self, a: Elem) -> bool {
        self.members[a]
    }

    pub fn members(&self) -> Vec<Elem> {
        (0..self.members.len()).filter(|&a| self.members[a]).collect()
    }

    pub fn len(&self) -> usize {
        self.members.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Checks that `members` is a lattice filter and returns its indicator.
fn lattice_filter(algebra: &FiniteMGAlgebra, members: &[Elem]) -> Result<Vec<bool>, AlgebraError> {
    let mut set = vec![false; algebra.size()];
    for &a in members {
        if a >= algebra.size() {
            return Err(AlgebraError::IndexOutOfRange { index: a, size: algebra.size() });
        }
        set[a] = true;
    }
    if !set[algebra.top()] {
        return Err(AlgebraError::NotMonadicFilter { reason: "does not contain 1".into() });
    }
    for a in algebra.elements().filter(|&a| set[a]) {
        for b in algebra.elements() {
            if algebra.leq(a, b) && !set[b] {
                return Err(AlgebraError::NotMonadicFilter {
                    reason: format!("not upward closed: {a} <= {b}"),
                });
            }
            if set[b] && !set[algebra.meet(a, b)] {
                return Err(AlgebraError::NotMonadicFilter {
                    reason: format!("not closed under meet: {a} & {b}"),
                });
            }
        }
    }
    Ok(set)
}

/// Blocks of the congruence `a ~ b ⟺ (a ↔ b) ∈ F`, each block sorted and
/// blocks ordered by their least member.
fn filter_blocks(algebra: &FiniteMGAlgebra, set: &[bool]) -> (Vec<Vec<Elem>>, Vec<usize>) {
    let n = algebra.size();
    let mut block_of = vec![usize::MAX; n];
    let mut blocks: Vec<Vec<Elem>> = Vec::new();
    for a in 0..n {
        if block_of[a] != usize::MAX {
            continue;
        }
        let id = blocks.len();
        let block: Vec<Elem> = (a..n)
            .filter(|&b| block_of[b] == usize::MAX && set[algebra.biimp(a, b)])
            .collect();
        for &b in &block {
            block_of[b] = id;
        }
        blocks.push(block);
    }
    (blocks, block_of)
}

fn quotient_lattice(algebra: &FiniteMGAlgebra, set: &[bool], blocks: &[Vec<Elem>]) -> Result<FiniteLattice, AlgebraError> {
    let k = blocks.len();
    let mut leq = vec![false; k * k];
    for i in 0..k {
        for j in 0..k {
            leq[i * k + j] = set[algebra.imp(blocks[i][0], blocks[j][0])];
        }
    }
    FiniteLattice::from_matrix(k, leq)
}

/// Quotient by a monadic filter, with the canonical surjection.
pub fn quotient_by_filter(
    algebra: &FiniteMGAlgebra,
    filter: &MonadicFilter,
) -> Result<(FiniteMGAlgebra, HomWitness), AlgebraError> {
    let (blocks, block_of) = filter_blocks(algebra, &filter.members);
    let lattice = quotient_lattice(algebra, &filter.members, &blocks)?;
    let mut image: Vec<Elem> = algebra.image().iter().map(|&c| block_of[c]).collect();
    image.sort_unstable();
    image.dedup();
    let quotient = FiniteMGAlgebra::new(lattice, &image)?;
    let witness = HomWitness::new(algebra, &quotient, block_of, Signature::Monadic)?;
    Ok((quotient, witness))
}

/// Quotient of the Gödel reduct by a lattice filter. The result carries
/// identity quantifiers and the witness is checked for the Gödel signature
/// only.
pub fn godel_quotient(
    algebra: &FiniteMGAlgebra,
    members: &[Elem],
) -> Result<(FiniteMGAlgebra, HomWitness), AlgebraError> {
    let set = lattice_filter(algebra, members)?;
    let (blocks, block_of) = filter_blocks(algebra, &set);
    let lattice = quotient_lattice(algebra, &set, &blocks)?;
    let quotient = FiniteMGAlgebra::with_identity_quantifiers(lattice)?;
    let witness = HomWitness::new(algebra, &quotient, block_of, Signature::Godel)?;
    Ok((quotient, witness))
}

/// Index layout of an ordinal sum `A ⊕ B`: elements of `A` keep their
/// indices, the bottom of `B` is glued to the top of `A`, and the remaining
/// elements of `B` follow in index order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrdinalSumLayout {
    left_size: usize,
    left_top: Elem,
    right_bottom: Elem,
}

impl OrdinalSumLayout {
    pub fn new(left: &FiniteMGAlgebra, right: &FiniteMGAlgebra) -> Self {
        OrdinalSumLayout {
            left_size: left.size(),
            left_top: left.top(),
            right_bottom: right.bottom(),
        }
    }

    pub fn left(&self, a: Elem) -> Elem {
        a
    }

    pub fn right(&self, b: Elem) -> Elem {
        use std::cmp::Ordering;
        match b.cmp(&self.right_bottom) {
            Ordering::Equal => self.left_top,
            Ordering::Less => self.left_size + b,
            Ordering::Greater => self.left_size + b - 1,
        }
    }
}

/// Ordinal sum with the top of `left` identified with the bottom of `right`.
/// The quantifier image of the sum is supplied by the caller in the index
/// layout of [`OrdinalSumLayout`].
pub fn ordinal_sum(
    left: &FiniteMGAlgebra,
    right: &FiniteMGAlgebra,
    exists_image: &[Elem],
) -> Result<(FiniteMGAlgebra, OrdinalSumLayout), AlgebraError> {
    let layout = OrdinalSumLayout::new(left, right);
    let size = left.size() + right.size() - 1;
    let mut pairs = Vec::new();
    for (a, b) in left.cover_pairs() {
        pairs.push((layout.left(a), layout.left(b)));
    }
    for (a, b) in right.cover_pairs() {
        pairs.push((layout.right(a), layout.right(b)));
    }
    let lattice = FiniteLattice::from_pairs(size, pairs)?;
    Ok((FiniteMGAlgebra::new(lattice, exists_image)?, layout))
}

/// Subalgebra of `∏ factors` generated by `generators` (tuples), computed
/// without materializing the product. Returns the algebra together with the
/// tuple of each element; elements are numbered in lexicographic tuple
/// order.
pub fn generate_in_product(
    factors: &[FiniteMGAlgebra],
    generators: &[Vec<Elem>],
) -> Result<(FiniteMGAlgebra, Vec<Vec<Elem>>), AlgebraError> {
    if factors.is_empty() {
        return Err(AlgebraError::EmptyCarrier);
    }
    let k = factors.len();
    let bottom: Vec<Elem> = factors.iter().map(|f| f.bottom()).collect();
    let top: Vec<Elem> = factors.iter().map(|f| f.top()).collect();
    let mut seen: HashMap<Vec<Elem>, usize> = HashMap::new();
    let mut items: Vec<Vec<Elem>> = Vec::new();
    let add = |t: Vec<Elem>, seen: &mut HashMap<Vec<Elem>, usize>, items: &mut Vec<Vec<Elem>>| {
        if !seen.contains_key(&t) {
            seen.insert(t.clone(), items.len());
            items.push(t);
        }
    };
    add(bottom, &mut seen, &mut items);
    add(top, &mut seen, &mut items);
    for g in generators {
        assert_eq!(g.len(), k, "generator tuple has wrong arity");
        add(g.clone(), &mut seen, &mut items);
    }
    let unary = |t: &[Elem], op: fn(&FiniteMGAlgebra, Elem) -> Elem| -> Vec<Elem> {
        t.iter().zip(factors).map(|(&x, f)| op(f, x)).collect()
    };
    let binary = |s: &[Elem], t: &[Elem], op: fn(&FiniteMGAlgebra, Elem, Elem) -> Elem| -> Vec<Elem> {
        s.iter().zip(t).zip(factors).map(|((&x, &y), f)| op(f, x, y)).collect()
    };
    let mut done = 0;
    while done < items.len() {
        let x = items[done].clone();
        done += 1;
        add(unary(&x, FiniteMGAlgebra::exists), &mut seen, &mut items);
        add(unary(&x, FiniteMGAlgebra::forall), &mut seen, &mut items);
        for i in 0..done {
            let y = items[i].clone();
            add(binary(&x, &y, FiniteMGAlgebra::meet), &mut seen, &mut items);
            add(binary(&x, &y, FiniteMGAlgebra::join), &mut seen, &mut items);
            add(binary(&x, &y, FiniteMGAlgebra::imp), &mut seen, &mut items);
            add(binary(&y, &x, FiniteMGAlgebra::imp), &mut seen, &mut items);
        }
    }
    let sorted: BTreeSet<Vec<Elem>> = items.into_iter().collect();
    let tuples: Vec<Vec<Elem>> = sorted.into_iter().collect();
    let n = tuples.len();
    let mut leq = vec![false; n * n];
    for i in 0..n {
        for j in 0..n {
            leq[i * n + j] = (0..k).all(|c| factors[c].leq(tuples[i][c], tuples[j][c]));
        }
    }
    let lattice = FiniteLattice::from_matrix(n, leq)?;
    let image: Vec<Elem> = (0..n)
        .filter(|&i| (0..k).all(|c| factors[c].in_image(tuples[i][c])))
        .collect();
    Ok((FiniteMGAlgebra::new(lattice, &image)?, tuples))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::build_algebra;

    fn chain(n: usize, image: &[Elem]) -> FiniteMGAlgebra {
        let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        build_algebra(n, &pairs, image).unwrap()
    }

    #[test]
    fn generation_examples() {
        // C_(2,0,1): image {0, a1, 1}; ∀a2 = a1 pulls in everything.
        let c201 = chain(4, &[0, 1, 3]);
        assert_eq!(generate_subalgebra(&c201, &[2]), vec![0, 1, 2, 3]);
        // C_(2,1,0): image {0, a2, 1}; ∃a1 = a2.
        let c210 = chain(4, &[0, 2, 3]);
        assert_eq!(generate_subalgebra(&c210, &[1]), vec![0, 1, 2, 3]);
        assert_eq!(generate_subalgebra(&c210, &[]), vec![0, 3]);
        assert_eq!(generate_subalgebra(&c210, &[2]), vec![0, 2, 3]);
    }

    #[test]
    fn quotient_collapses_upper_part() {
        let c201 = chain(4, &[0, 1, 3]);
        let filter = MonadicFilter::principal(&c201, 1).unwrap();
        let (q, h) = quotient_by_filter(&c201, &filter).unwrap();
        assert_eq!(q.size(), 2);
        assert_eq!(h.map(), &[0, 1, 1, 1]);
    }

    #[test]
    fn principal_filter_on_non_image_element_is_not_monadic() {
        // [a2) in C_(2,0,1) contains a2 but not ∀a2 = a1.
        let c201 = chain(4, &[0, 1, 3]);
        let err = MonadicFilter::principal(&c201, 2).unwrap_err();
        assert!(matches!(err, AlgebraError::NotMonadicFilter { .. }));
    }

    #[test]
    fn product_of_two_element_algebras_is_boolean_square() {
        let two = chain(2, &[0, 1]);
        let (p, index) = product(&[two.clone(), two]).unwrap();
        assert_eq!(p.size(), 4);
        assert_eq!(p.image().len(), 4);
        for x in p.elements() {
            assert_eq!(p.exists(x), x);
        }
        assert_eq!(index.decode(2), vec![1, 0]);
        assert_eq!(index.encode(&[1, 0]), 2);
    }

    #[test]
    fn ordinal_sum_of_chains_is_chain() {
        let two = chain(2, &[0, 1]);
        let three = chain(3, &[0, 1, 2]);
        let (sum, layout) = ordinal_sum(&two, &three, &[0, 1, 3]).unwrap();
        assert_eq!(sum.size(), 4);
        assert_eq!(layout.right(0), 1);
        assert_eq!(layout.right(2), 3);
        assert!(sum.lattice().is_chain(&[0, 1, 2, 3]));
    }

    #[test]
    fn product_closure_matches_direct_generation() {
        let c = chain(4, &[0, 2, 3]);
        let (alg, tuples) = generate_in_product(&[c.clone()], &[vec![1]]).unwrap();
        assert_eq!(alg.size(), 4);
        assert_eq!(tuples.len(), generate_subalgebra(&c, &[1]).len());
    }
}
