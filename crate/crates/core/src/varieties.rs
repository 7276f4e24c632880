//! Subvarieties cut out by height and width: membership, width by three
//! independent methods, the embedding of an f.s.i. algebra into a product
//! of chains, height parameters and the discriminator term.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::FiniteMGAlgebra;
use crate::config::Config;
use crate::construct::{godel_quotient, product, ProductIndex};
use crate::duality::{dual_space, DualityError};
use crate::error::AlgebraError;
use crate::hom::{HomWitness, Signature};
use crate::lattice::Elem;
use crate::terms::{catalog, check_identity_with_budget, Counterexample, Identity, Program, TermError};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum VarietyError {
    #[error("the algebra is not finitely subdirectly irreducible")]
    NotFsi,
    #[error("parameter {value} is out of range for {family}")]
    BadParameter { family: Family, value: usize },
    #[error("methods disagree: {0}")]
    Mismatch(String),
    #[error(transparent)]
    Term(#[from] TermError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Duality(#[from] DualityError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    W,
    H,
    HExists,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::W => "W",
            Family::H => "H",
            Family::HExists => "HE",
        })
    }
}

/// One of `W_k` (k ≥ 1), `H_n`, `H_n^∃` (n ≥ 2).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct VarietyTag {
    family: Family,
    parameter: usize,
}

impl VarietyTag {
    pub fn new(family: Family, parameter: usize) -> Result<Self, VarietyError> {
        let least = if family == Family::W { 1 } else { 2 };
        if parameter < least {
            return Err(VarietyError::BadParameter { family, value: parameter });
        }
        Ok(VarietyTag { family, parameter })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn parameter(&self) -> usize {
        self.parameter
    }

    /// The defining identity.
    pub fn identity(&self) -> Identity {
        let name = match self.family {
            Family::W => "alpha",
            Family::H => "H",
            Family::HExists => "HE",
        };
        catalog(name, Some(self.parameter)).expect("parameter validated")
    }
}

impl fmt::Display for VarietyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.family, self.parameter)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Membership {
    pub holds: bool,
    pub counterexample: Option<Counterexample>,
}

/// Exhaustive check of the defining identity.
pub fn membership(algebra: &FiniteMGAlgebra, tag: VarietyTag, config: &Config) -> Result<Membership, VarietyError> {
    let found = check_identity_with_budget(algebra, &tag.identity(), config.identity_budget)?;
    Ok(Membership { holds: found.is_none(), counterexample: found })
}

/// A subset of `A \ {1}` whose distinct members join to 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrthogonalSet {
    elements: Vec<Elem>,
}

impl OrthogonalSet {
    pub fn new(algebra: &FiniteMGAlgebra, mut elements: Vec<Elem>) -> Result<Self, AlgebraError> {
        elements.sort_unstable();
        elements.dedup();
        let top = algebra.top();
        for &x in &elements {
            if x >= algebra.size() {
                return Err(AlgebraError::IndexOutOfRange { index: x, size: algebra.size() });
            }
            if x == top {
                return Err(AlgebraError::InvalidCoordinates("orthogonal sets exclude 1".into()));
            }
        }
        for (i, &x) in elements.iter().enumerate() {
            for &y in &elements[i + 1..] {
                if algebra.join(x, y) != top {
                    return Err(AlgebraError::InvalidCoordinates(format!("{x} | {y} is not 1")));
                }
            }
        }
        Ok(OrthogonalSet { elements })
    }

    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// The lexicographically first orthogonal set of maximum size.
pub fn max_orthogonal_set(algebra: &FiniteMGAlgebra) -> OrthogonalSet {
    let top = algebra.top();
    let candidates: Vec<Elem> = algebra.elements().filter(|&x| x != top).collect();
    let mut best = Vec::new();
    let mut current = Vec::new();
    fn extend(
        algebra: &FiniteMGAlgebra,
        candidates: &[Elem],
        from: usize,
        current: &mut Vec<Elem>,
        best: &mut Vec<Elem>,
    ) {
        if current.len() > best.len() {
            *best = current.clone();
        }
        if current.len() + candidates.len() - from <= best.len() {
            return;
        }
        for i in from..candidates.len() {
            let x = candidates[i];
            if current.iter().all(|&y| algebra.join(x, y) == algebra.top()) {
                current.push(x);
                extend(algebra, candidates, i + 1, current, best);
                current.pop();
            }
        }
    }
    extend(algebra, &candidates, 0, &mut current, &mut best);
    OrthogonalSet { elements: best }
}

/// Least `r` with join-irreducibles `p_1..p_r` such that the filters `[p_i)`
/// meet in `{1}` and each meets `∃A` in `{1}` alone. Returns the first such
/// family in lexicographic order.
pub fn least_prime_cover(algebra: &FiniteMGAlgebra) -> Option<Vec<Elem>> {
    let top = algebra.top();
    let usable: Vec<Elem> = algebra
        .lattice()
        .join_irreducibles()
        .into_iter()
        .filter(|&p| !algebra.image().iter().any(|&c| c != top && algebra.leq(p, c)))
        .collect();
    // ⋂ [p_i) = [⋁ p_i), which is {1} iff the join is 1.
    for r in 1..=usable.len() {
        let mut pick = Vec::with_capacity(r);
        if let Some(found) = first_cover(algebra, &usable, 0, r, &mut pick) {
            return Some(found);
        }
    }
    None
}

fn first_cover(
    algebra: &FiniteMGAlgebra,
    usable: &[Elem],
    from: usize,
    r: usize,
    pick: &mut Vec<Elem>,
) -> Option<Vec<Elem>> {
    if pick.len() == r {
        let join = algebra.lattice().join_all(pick.iter().copied());
        return (join == algebra.top()).then(|| pick.clone());
    }
    for i in from..usable.len() {
        pick.push(usable[i]);
        if let Some(found) = first_cover(algebra, usable, i + 1, r, pick) {
            return Some(found);
        }
        pick.pop();
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Width {
    pub k: usize,
    /// Least `k` with `α_k`, or `None` when the check is over budget.
    pub alpha: Option<usize>,
    pub orthogonal: OrthogonalSet,
    /// Join-irreducibles generating the prime filters of the cover.
    pub prime_cover: Vec<Elem>,
}

/// Width of an f.s.i. algebra, computed three ways; any disagreement is an
/// error.
pub fn width_of(algebra: &FiniteMGAlgebra, config: &Config) -> Result<Width, VarietyError> {
    if !algebra.classify().fsi {
        return Err(VarietyError::NotFsi);
    }
    let orthogonal = max_orthogonal_set(algebra);
    let k = orthogonal.len();
    let prime_cover = least_prime_cover(algebra)
        .ok_or_else(|| VarietyError::Mismatch("no prime filter cover exists".into()))?;
    if prime_cover.len() != k {
        return Err(VarietyError::Mismatch(format!(
            "orthogonal sets reach {k} but the least prime cover has {}",
            prime_cover.len()
        )));
    }
    let mut alpha = None;
    for j in 1..=k {
        let tag = VarietyTag::new(Family::W, j)?;
        match membership(algebra, tag, config) {
            Ok(m) if m.holds => {
                alpha = Some(j);
                break;
            }
            Ok(_) => {}
            Err(VarietyError::Term(TermError::BudgetExceeded { .. })) => break,
            Err(e) => return Err(e),
        }
    }
    if let Some(j) = alpha {
        if j != k {
            return Err(VarietyError::Mismatch(format!("alpha_{j} holds but the width is {k}")));
        }
    } else {
        // α_k itself may be over budget; α_(k-1) failing is still checked
        // when affordable, which the loop above already did.
        let fits = (algebra.size() as u128).checked_pow(k as u32 + 1).is_some_and(|n| n <= config.identity_budget as u128);
        if fits {
            return Err(VarietyError::Mismatch(format!("alpha_{k} fails but the width is {k}")));
        }
    }
    Ok(Width { k, alpha, orthogonal, prime_cover })
}

/// `φ: A → A/P_1 × … × A/P_k` for the prime filters `P_i = {x : x ∨ s_i =
/// 1}` of a maximum orthogonal set.
#[derive(Clone, Debug)]
pub struct ChainEmbedding {
    pub filters: Vec<Vec<Elem>>,
    /// Gödel chains, carrying identity quantifiers.
    pub quotients: Vec<FiniteMGAlgebra>,
    pub product: FiniteMGAlgebra,
    pub index: ProductIndex,
    /// Gödel homomorphism into the product.
    pub phi: HomWitness,
}

pub fn chain_embedding(algebra: &FiniteMGAlgebra) -> Result<ChainEmbedding, VarietyError> {
    if !algebra.classify().fsi {
        return Err(VarietyError::NotFsi);
    }
    let top = algebra.top();
    let orthogonal = max_orthogonal_set(algebra);
    let mut filters = Vec::new();
    let mut quotients = Vec::new();
    let mut maps = Vec::new();
    for &s in orthogonal.elements() {
        let members: Vec<Elem> = algebra.elements().filter(|&x| algebra.join(x, s) == top).collect();
        let (q, h) = godel_quotient(algebra, &members)?;
        if !q.lattice().is_chain(&q.elements().collect::<Vec<_>>()) {
            return Err(VarietyError::Mismatch(format!("quotient by the filter of {s} is not a chain")));
        }
        filters.push(members);
        quotients.push(q);
        maps.push(h);
    }
    let (prod, index) = product(&quotients)?;
    let map: Vec<Elem> = algebra
        .elements()
        .map(|a| index.encode(&maps.iter().map(|h| h.apply(a)).collect::<Vec<_>>()))
        .collect();
    let phi = HomWitness::new(algebra, &prod, map, Signature::Godel)?;
    if !phi.injective() {
        return Err(VarietyError::Mismatch("the map into the product is not injective".into()));
    }
    for (i, h) in maps.iter().enumerate() {
        let mut seen: Vec<Elem> = algebra.image().iter().map(|&c| h.apply(c)).collect();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != algebra.image().len() {
            return Err(VarietyError::Mismatch(format!("projection {i} is not injective on the image")));
        }
    }
    Ok(ChainEmbedding { filters, quotients, product: prod, index, phi })
}

/// Bounds read off the dual space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DualBounds {
    /// Largest number of minimal points in an E-class.
    pub class_minima: usize,
    /// Largest `|[P)|`.
    pub up_set: usize,
    /// Largest number of E-classes meeting some `[P)`.
    pub up_set_classes: usize,
}

pub fn dual_bounds(algebra: &FiniteMGAlgebra) -> Result<DualBounds, VarietyError> {
    let dual = dual_space(algebra)?;
    let space = &dual.space;
    let class_minima = (0..space.classes().len()).map(|c| space.class_minima(c).len()).max().unwrap_or(0);
    let mut up_set = 0;
    let mut up_set_classes = 0;
    for x in 0..space.size() {
        let up = space.up(x);
        up_set = up_set.max(up.count_ones() as usize);
        let meeting = (0..space.classes().len()).filter(|&c| space.class_set(c) & up != 0).count();
        up_set_classes = up_set_classes.max(meeting);
    }
    Ok(DualBounds { class_minima, up_set, up_set_classes })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HeightParams {
    /// Least `n` with `H_n`.
    pub n_h: usize,
    /// Least `n` with `H_n^∃`.
    pub n_he: usize,
}

/// Least `n` in each height family, by binary search over exhaustive
/// identity checks. For f.s.i. algebras the answers are compared with the
/// dual-space bounds.
pub fn height_params(algebra: &FiniteMGAlgebra, config: &Config) -> Result<HeightParams, VarietyError> {
    let n_h = least_parameter(algebra, Family::H, config)?;
    let n_he = least_parameter(algebra, Family::HExists, config)?;
    if algebra.classify().fsi {
        let b = dual_bounds(algebra)?;
        if n_h != (b.up_set + 1).max(2) || n_he != (b.up_set_classes + 1).max(2) {
            return Err(VarietyError::Mismatch(format!(
                "equations give ({n_h}, {n_he}) but the dual space gives up-sets of {} points in {} classes",
                b.up_set, b.up_set_classes
            )));
        }
    }
    Ok(HeightParams { n_h, n_he })
}

fn least_parameter(algebra: &FiniteMGAlgebra, family: Family, config: &Config) -> Result<usize, VarietyError> {
    // Every quotient chain has at most |A| elements, so H_|A| holds.
    let (mut lo, mut hi) = (2, algebra.size().max(2));
    while lo < hi {
        let mid = (lo + hi) / 2;
        if membership(algebra, VarietyTag::new(family, mid)?, config)?.holds {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(lo)
}

/// The first triple, in lexicographic order, where the discriminator term
/// differs from `z` if `x = y` else `x`.
pub fn discriminator_failure(algebra: &FiniteMGAlgebra) -> Option<[Elem; 3]> {
    let term = crate::terms::discriminator();
    let vars: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
    let program = Program::compile(&term, &vars).expect("variables bound");
    let mut stack = Vec::with_capacity(program.stack_depth());
    for x in algebra.elements() {
        for y in algebra.elements() {
            for z in algebra.elements() {
                let expected = if x == y { z } else { x };
                if program.run(algebra, &[x, y, z], &mut stack) != expected {
                    return Some([x, y, z]);
                }
            }
        }
    }
    None
}

pub fn discriminator_check(algebra: &FiniteMGAlgebra) -> bool {
    discriminator_failure(algebra).is_none()
}

/// Memberships for every tag up to `max_parameter`.
pub fn memberships(
    algebra: &FiniteMGAlgebra,
    max_parameter: usize,
    config: &Config,
) -> Result<HashMap<VarietyTag, bool>, VarietyError> {
    let mut out = HashMap::new();
    for family in [Family::W, Family::H, Family::HExists] {
        let least = if family == Family::W { 1 } else { 2 };
        for p in least..=max_parameter {
            let tag = VarietyTag::new(family, p)?;
            out.insert(tag, membership(algebra, tag, config)?.holds);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::build_algebra;
    use crate::chains::{build_chain, ChainCoordinates};

    fn chain(list: &[usize]) -> FiniteMGAlgebra {
        build_chain(&ChainCoordinates::from_list(list).unwrap())
    }

    fn boolean_square() -> FiniteMGAlgebra {
        build_algebra(4, &[(0, 1), (0, 2), (1, 3), (2, 3)], &[0, 3]).unwrap()
    }

    #[test]
    fn membership_examples() {
        let cfg = Config::default();
        let w1 = VarietyTag::new(Family::W, 1).unwrap();
        assert!(membership(&chain(&[2, 1, 0]), w1, &cfg).unwrap().holds);
        let m = membership(&boolean_square(), w1, &cfg).unwrap();
        assert!(!m.holds);
        let ce = m.counterexample.unwrap();
        assert_eq!(ce.assignment, vec![("x1".to_string(), 1), ("x2".to_string(), 2)]);
        for m in 0..4 {
            let tag = VarietyTag::new(Family::HExists, 2).unwrap();
            assert!(membership(&chain(&[m, m]), tag, &cfg).unwrap().holds);
        }
        assert!(VarietyTag::new(Family::H, 1).is_err());
    }

    #[test]
    fn widths() {
        let cfg = Config::default();
        for c in [&[0, 0][..], &[2, 1, 0], &[3, 0, 1, 0], &[2, 2]] {
            assert_eq!(width_of(&chain(c), &cfg).unwrap().k, 1);
        }
        let w = width_of(&boolean_square(), &cfg).unwrap();
        assert_eq!((w.k, w.alpha), (2, Some(2)));
        assert_eq!(w.orthogonal.elements(), &[1, 2]);
        let non_fsi = build_algebra(4, &[(0, 1), (0, 2), (1, 3), (2, 3)], &[0, 1, 2, 3]).unwrap();
        assert_eq!(width_of(&non_fsi, &cfg).unwrap_err(), VarietyError::NotFsi);
    }

    #[test]
    fn embeddings() {
        let e = chain_embedding(&chain(&[2, 1, 0])).unwrap();
        assert_eq!(e.quotients.len(), 1);
        assert!(e.phi.is_bijective());
        let e = chain_embedding(&boolean_square()).unwrap();
        assert_eq!(e.quotients.iter().map(|q| q.size()).collect::<Vec<_>>(), vec![2, 2]);
        assert!(e.phi.is_bijective());
    }

    #[test]
    fn heights() {
        let cfg = Config::default();
        let two = chain(&[0, 0]);
        assert_eq!(height_params(&two, &cfg).unwrap(), HeightParams { n_h: 2, n_he: 2 });
        assert_eq!(height_params(&chain(&[2, 0, 1]), &cfg).unwrap(), HeightParams { n_h: 4, n_he: 3 });
        assert_eq!(height_params(&chain(&[1, 0, 0]), &cfg).unwrap(), HeightParams { n_h: 3, n_he: 3 });
        for m in 0..4 {
            assert_eq!(height_params(&chain(&[m, m]), &cfg).unwrap(), HeightParams { n_h: m + 2, n_he: 2 });
        }
    }

    #[test]
    fn discriminator() {
        assert!(discriminator_check(&chain(&[0, 0])));
        for m in 0..=4 {
            assert!(discriminator_check(&chain(&[m, m])));
        }
        // ∀((a1 → 1) ∧ (1 → a1)) = a1 in C_(1,0,0).
        let c = chain(&[1, 0, 0]);
        assert_eq!(c.forall(c.biimp(1, 2)), 1);
        assert_eq!(discriminator_failure(&c), Some([1, 2, 0]));
    }
}
