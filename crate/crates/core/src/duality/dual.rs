//! The dual space of an algebra, dual maps, and prime coordinates.

use super::space::{points, MGSpace, PointSet};
use super::DualityError;
use crate::algebra::FiniteMGAlgebra;
use crate::chains::ChainCoordinates;
use crate::hom::HomWitness;
use crate::lattice::Elem;

/// `[p) ⊆ [q)` for join-irreducibles `p`, `q`: the filter order is the
/// reverse of the algebra order.
pub fn prime_filter_leq(algebra: &FiniteMGAlgebra, p: Elem, q: Elem) -> bool {
    algebra.leq(q, p)
}

/// Space on a poset of join-irreducibles given in the algebra order: the
/// points are the filters `[p)`, so the order is reversed.
pub fn space_from_prime_order(
    size: usize,
    prime_leq: &[bool],
    classes: Vec<Vec<usize>>,
) -> Result<MGSpace, DualityError> {
    let mut leq = vec![false; size * size];
    for i in 0..size {
        for j in 0..size {
            leq[i * size + j] = prime_leq[j * size + i];
        }
    }
    MGSpace::from_matrix(size, leq, classes)
}

/// The dual space, with the join-irreducible behind each point.
#[derive(Clone, Debug)]
pub struct DualSpace {
    pub space: MGSpace,
    /// `primes[i]` is the join-irreducible `p` whose filter `[p)` is point
    /// `i`; points are numbered in increasing element index.
    pub primes: Vec<Elem>,
}

impl DualSpace {
    pub fn point_of(&self, p: Elem) -> Option<usize> {
        self.primes.binary_search(&p).ok()
    }
}

/// Points are the prime filters `[p)`, ordered by inclusion, with `[p) E
/// [q)` iff `∃p = ∃q`.
pub fn dual_space(algebra: &FiniteMGAlgebra) -> Result<DualSpace, DualityError> {
    let primes = algebra.lattice().join_irreducibles();
    let n = primes.len();
    let mut leq = vec![false; n * n];
    for i in 0..n {
        for j in 0..n {
            leq[i * n + j] = prime_filter_leq(algebra, primes[i], primes[j]);
        }
    }
    let mut classes: Vec<(Elem, Vec<usize>)> = Vec::new();
    for (i, &p) in primes.iter().enumerate() {
        let key = algebra.exists(p);
        match classes.iter_mut().find(|(k, _)| *k == key) {
            Some((_, members)) => members.push(i),
            None => classes.push((key, vec![i])),
        }
    }
    let space = MGSpace::from_matrix(n, leq, classes.into_iter().map(|(_, c)| c).collect())?;
    Ok(DualSpace { space, primes })
}

/// `σ(a)`: the prime filters containing `a`.
pub fn sigma(algebra: &FiniteMGAlgebra, dual: &DualSpace, a: Elem) -> PointSet {
    dual.primes
        .iter()
        .enumerate()
        .filter(|&(_, &p)| algebra.leq(p, a))
        .fold(0, |acc, (i, _)| acc | 1 << i)
}

/// For `h: A → B`, the map sending the point `[q)` of the dual of `B` to
/// `h⁻¹([q))`, which is `[p)` for `p` the least element of the preimage.
///
/// The result is checked to be an MG-morphism: order preserving,
/// `f([x)) = [f(x))`, and `∃f⁻¹(U) = f⁻¹(∃U)`, `∀f⁻¹(U) = f⁻¹(∀U)` for every
/// increasing `U` of the dual of `A`.
pub fn dualize_hom(
    source: &FiniteMGAlgebra,
    target: &FiniteMGAlgebra,
    hom: &HomWitness,
) -> Result<Vec<usize>, DualityError> {
    let xa = dual_space(source)?;
    let xb = dual_space(target)?;
    let mut map = Vec::with_capacity(xb.primes.len());
    for &q in &xb.primes {
        let preimage: Vec<Elem> = source.elements().filter(|&a| target.leq(q, hom.apply(a))).collect();
        let p = source.lattice().meet_all(preimage.iter().copied());
        let principal: Vec<Elem> = source.elements().filter(|&a| source.leq(p, a)).collect();
        if principal != preimage {
            return Err(DualityError::NotMorphism(format!("preimage of [{q}) is not principal")));
        }
        let point = xa
            .point_of(p)
            .ok_or_else(|| DualityError::NotMorphism(format!("preimage of [{q}) is not prime")))?;
        map.push(point);
    }

    let (sa, sb) = (&xa.space, &xb.space);
    let image_of = |set: PointSet| points(set).fold(0 as PointSet, |acc, y| acc | 1 << map[y]);
    let preimage_of = |set: PointSet| {
        (0..map.len())
            .filter(|&y| set >> map[y] & 1 == 1)
            .fold(0 as PointSet, |acc, y| acc | 1 << y)
    };
    for y in 0..sb.size() {
        for z in 0..sb.size() {
            if sb.leq(y, z) && !sa.leq(map[y], map[z]) {
                return Err(DualityError::NotMorphism(format!("order not preserved at ({y}, {z})")));
            }
        }
        if image_of(sb.up(y)) != sa.up(map[y]) {
            return Err(DualityError::NotMorphism(format!("f([{y})) differs from [f({y}))")));
        }
    }
    for a in source.elements() {
        let u = sigma(source, &xa, a);
        let pre = preimage_of(u);
        if pre != sigma(target, &xb, hom.apply(a)) {
            return Err(DualityError::NotMorphism(format!("preimage of sigma({a}) is wrong")));
        }
        if sb.saturate(pre) != preimage_of(sa.saturate(u)) {
            return Err(DualityError::NotMorphism(format!("saturation not preserved at sigma({a})")));
        }
        if sb.interior(pre) != preimage_of(sa.interior(u)) {
            return Err(DualityError::NotMorphism(format!("class interior not preserved at sigma({a})")));
        }
    }
    Ok(map)
}

/// Join-irreducibles in the algebra order, split by membership in the
/// quantifier image.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeStructure {
    /// `Π(A)`
    pub primes: Vec<Elem>,
    /// `Π(A) ∩ ∃A`
    pub exists_primes: Vec<Elem>,
}

impl PrimeStructure {
    /// Members of `Π(A)` below `p`, ascending.
    pub fn chain_below(&self, algebra: &FiniteMGAlgebra, p: Elem) -> Vec<Elem> {
        let mut below: Vec<Elem> = self.primes.iter().copied().filter(|&q| algebra.leq(q, p)).collect();
        below.sort_by_key(|&q| algebra.lattice().ideal_size(q));
        below
    }

    /// Maximal members of `Π(A)`.
    pub fn maximal(&self, algebra: &FiniteMGAlgebra) -> Vec<Elem> {
        maximal_of(algebra, &self.primes)
    }

    /// Maximal members of `Π(A) ∩ ∃A`.
    pub fn maximal_exists(&self, algebra: &FiniteMGAlgebra) -> Vec<Elem> {
        maximal_of(algebra, &self.exists_primes)
    }
}

fn maximal_of(algebra: &FiniteMGAlgebra, set: &[Elem]) -> Vec<Elem> {
    set.iter()
        .copied()
        .filter(|&p| !set.iter().any(|&q| q != p && algebra.leq(p, q)))
        .collect()
}

pub fn prime_structure(algebra: &FiniteMGAlgebra) -> PrimeStructure {
    let primes = algebra.lattice().join_irreducibles();
    let exists_primes = primes.iter().copied().filter(|&p| algebra.in_image(p)).collect();
    PrimeStructure { primes, exists_primes }
}

/// Coordinates `(m, m0, …, mr)` of `p ∈ Π(A) ∩ ∃A`: the chain `(p] ∩ Π(A)`
/// has `m + 1` members and its image members sit at positions
/// `m0 + 1, m0 + m1 + 2, …, m + 1`.
pub fn coordinates_of(
    algebra: &FiniteMGAlgebra,
    structure: &PrimeStructure,
    p: Elem,
) -> Result<ChainCoordinates, DualityError> {
    if !structure.exists_primes.contains(&p) {
        return Err(DualityError::NotExistsPrime(p));
    }
    let chain = structure.chain_below(algebra, p);
    if !algebra.lattice().is_chain(&chain) {
        return Err(DualityError::InvalidSpace(format!("primes below {p} do not form a chain")));
    }
    let m = chain.len() - 1;
    let mut parts = Vec::new();
    let mut gap = 0;
    for &q in &chain {
        if algebra.in_image(q) {
            parts.push(gap);
            gap = 0;
        } else {
            gap += 1;
        }
    }
    Ok(ChainCoordinates::new(m, parts)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::build_algebra;
    use crate::chains::build_chain;
    use crate::construct::{quotient_by_filter, MonadicFilter};

    fn coords(list: &[usize]) -> ChainCoordinates {
        ChainCoordinates::from_list(list).unwrap()
    }

    #[test]
    fn dual_space_examples() {
        let d = dual_space(&build_chain(&coords(&[0, 0]))).unwrap();
        assert_eq!((d.space.size(), d.space.classes().len()), (1, 1));
        let d = dual_space(&build_chain(&coords(&[1, 1]))).unwrap();
        assert_eq!(d.primes, vec![1, 2]);
        // [a1) contains [1): point of a1 is below the point of 1.
        assert!(d.space.leq(1, 0) && !d.space.leq(0, 1));
        assert_eq!(d.space.classes().len(), 1);
        let square = build_algebra(4, &[(0, 1), (0, 2), (1, 3), (2, 3)], &[0, 3]).unwrap();
        let d = dual_space(&square).unwrap();
        assert_eq!(d.primes, vec![1, 2]);
        assert!(!d.space.leq(0, 1) && !d.space.leq(1, 0));
        assert_eq!(d.space.classes().len(), 1);
    }

    #[test]
    fn coordinates_in_a_chain() {
        let c = build_chain(&coords(&[3, 0, 1, 0]));
        let s = prime_structure(&c);
        assert_eq!(coordinates_of(&c, &s, 4).unwrap(), coords(&[3, 0, 1, 0]));
        assert_eq!(coordinates_of(&c, &s, 1).unwrap(), coords(&[0, 0]));
        assert_eq!(coordinates_of(&c, &s, 3).unwrap(), coords(&[2, 0, 1]));
        assert_eq!(coordinates_of(&c, &s, 2).unwrap_err(), DualityError::NotExistsPrime(2));
    }

    #[test]
    fn dual_of_quotient_map() {
        let c = build_chain(&coords(&[2, 0, 1]));
        let filter = MonadicFilter::principal(&c, 1).unwrap();
        let (q, h) = quotient_by_filter(&c, &filter).unwrap();
        let map = dualize_hom(&c, &q, &h).unwrap();
        // The single point of the quotient goes to the filter [a1), the
        // greatest point of the three-point chain.
        assert_eq!(map, vec![0]);
        let d = dual_space(&c).unwrap();
        assert_eq!(d.primes[0], 1);
        assert!((0..3).all(|y| d.space.leq(y, 0)));
    }

    #[test]
    fn identity_dualizes_to_identity() {
        let c = build_chain(&coords(&[2, 1, 0]));
        let map = dualize_hom(&c, &c, &HomWitness::identity(&c)).unwrap();
        assert_eq!(map, vec![0, 1, 2]);
    }
}
