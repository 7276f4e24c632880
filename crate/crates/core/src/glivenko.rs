//! Dense, regular and boolean elements, the ∀-dense filter `D_∀(A)`, the
//! algebra `Reg_∀(A)` and the homomorphism `g(a) = a ∨ ¬¬∀a` onto it.

use thiserror::Error;

use crate::algebra::FiniteMGAlgebra;
use crate::construct::{quotient_by_filter, MonadicFilter};
use crate::duality::{congruence_lattice, maximal_congruences, DualityError};
use crate::error::AlgebraError;
use crate::hom::{HomWitness, Signature};
use crate::iso::find_isomorphism;
use crate::lattice::{Elem, FiniteLattice};
use crate::terms::{alpha, check_identity, parse_identity, Counterexample, Identity};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum GlivenkoError {
    #[error("the algebra is not in W_1: alpha_1 fails at {0:?}")]
    NotInW1(Box<Counterexample>),
    #[error("check failed: {0}")]
    Check(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Duality(#[from] DualityError),
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct SpecialElements {
    /// `¬a = 0`
    pub dense: Vec<Elem>,
    /// `¬¬a = a`
    pub regular: Vec<Elem>,
    /// `a ∨ ¬a = 1`
    pub boolean: Vec<Elem>,
}

/// The three sets by direct evaluation. Fails if boolean and regular
/// elements differ, if the dense set is not a filter, or if the regular set
/// is not a subuniverse.
pub fn special_elements(algebra: &FiniteMGAlgebra) -> Result<SpecialElements, GlivenkoError> {
    let (bot, top) = (algebra.bottom(), algebra.top());
    let dense: Vec<Elem> = algebra.elements().filter(|&a| algebra.neg(a) == bot).collect();
    let regular: Vec<Elem> = algebra.elements().filter(|&a| algebra.neg(algebra.neg(a)) == a).collect();
    let boolean: Vec<Elem> = algebra.elements().filter(|&a| algebra.join(a, algebra.neg(a)) == top).collect();
    if boolean != regular {
        return Err(GlivenkoError::Check(format!("boolean {boolean:?} differs from regular {regular:?}")));
    }
    let dense_is_filter = dense.iter().all(|&a| {
        algebra.elements().all(|b| !algebra.leq(a, b) || dense.contains(&b))
            && dense.iter().all(|&b| dense.contains(&algebra.meet(a, b)))
    });
    if !dense_is_filter {
        return Err(GlivenkoError::Check("dense elements do not form a filter".into()));
    }
    if !crate::construct::is_subuniverse(algebra, &regular) {
        return Err(GlivenkoError::Check("regular elements are not a subuniverse".into()));
    }
    Ok(SpecialElements { dense, regular, boolean })
}

/// `D_∀(A) = {a : ¬∀a = 0}`, checked to be a monadic filter whose quotient
/// has a Boolean quantifier image.
pub fn d_forall_filter(algebra: &FiniteMGAlgebra) -> Result<MonadicFilter, GlivenkoError> {
    let members: Vec<Elem> =
        algebra.elements().filter(|&a| algebra.neg(algebra.forall(a)) == algebra.bottom()).collect();
    let filter = MonadicFilter::new(algebra, &members)?;
    let (quotient, _) = quotient_by_filter(algebra, &filter)?;
    if !quotient.image().iter().all(|&c| quotient.join(c, quotient.neg(c)) == quotient.top()) {
        return Err(GlivenkoError::Check("the quotient's quantifier image is not Boolean".into()));
    }
    Ok(filter)
}

/// `¬¬x = ¬¬∃x`, which holds throughout W_1.
pub fn double_negation_identity() -> Identity {
    parse_identity("!!x = !!E x").expect("parses")
}

fn require_w1(algebra: &FiniteMGAlgebra) -> Result<(), GlivenkoError> {
    match check_identity(algebra, &alpha(1).expect("k = 1")) {
        Some(ce) => Err(GlivenkoError::NotInW1(Box::new(ce))),
        None => Ok(()),
    }
}

/// `Reg_∀(A)` with the carrier it sits on in `A`.
#[derive(Clone, Debug)]
pub struct RegForall {
    pub algebra: FiniteMGAlgebra,
    /// `carrier[i]` is the element of `A` behind element `i`.
    pub carrier: Vec<Elem>,
}

/// Carrier `{a : ¬¬∀a = ∀a}` with the inherited Gödel operations and `∀`,
/// and `∃_r = ¬¬`. Each inherited operation is compared with the one
/// recomputed on the result.
pub fn reg_forall_algebra(algebra: &FiniteMGAlgebra) -> Result<RegForall, GlivenkoError> {
    require_w1(algebra)?;
    let nn = |a: Elem| algebra.neg(algebra.neg(a));
    let carrier: Vec<Elem> = algebra.elements().filter(|&a| nn(algebra.forall(a)) == algebra.forall(a)).collect();
    let m = carrier.len();
    let local = |a: Elem| carrier.binary_search(&a).ok();
    let mut leq = vec![false; m * m];
    for i in 0..m {
        for j in 0..m {
            leq[i * m + j] = algebra.leq(carrier[i], carrier[j]);
        }
    }
    let lattice = FiniteLattice::from_matrix(m, leq)?;
    let mut image = Vec::new();
    for &a in &carrier {
        let i = local(nn(a)).ok_or_else(|| GlivenkoError::Check(format!("¬¬{a} leaves the carrier")))?;
        image.push(i);
    }
    image.sort_unstable();
    image.dedup();
    let reg = FiniteMGAlgebra::new(lattice, &image)?;
    let mismatch = |what: &str, i: usize| Err(GlivenkoError::Check(format!("{what} differs at {}", carrier[i])));
    for i in 0..m {
        let a = carrier[i];
        if carrier[reg.exists(i)] != nn(a) {
            return mismatch("∃_r", i);
        }
        if carrier[reg.forall(i)] != algebra.forall(a) {
            return mismatch("∀", i);
        }
        for j in 0..m {
            let b = carrier[j];
            if carrier[reg.meet(i, j)] != algebra.meet(a, b)
                || carrier[reg.join(i, j)] != algebra.join(a, b)
                || carrier[reg.imp(i, j)] != algebra.imp(a, b)
            {
                return mismatch("a lattice operation", i);
            }
        }
    }
    Ok(RegForall { algebra: reg, carrier })
}

/// `g(a) = a ∨ ¬¬∀a` as a monadic homomorphism onto `Reg_∀(A)`.
pub fn glivenko_hom(algebra: &FiniteMGAlgebra, reg: &RegForall) -> Result<HomWitness, GlivenkoError> {
    let mut map = Vec::with_capacity(algebra.size());
    for a in algebra.elements() {
        let g = algebra.join(a, algebra.neg(algebra.neg(algebra.forall(a))));
        let i = reg
            .carrier
            .binary_search(&g)
            .map_err(|_| GlivenkoError::Check(format!("g({a}) = {g} is outside Reg_∀")))?;
        map.push(i);
    }
    let g = HomWitness::new(algebra, &reg.algebra, map, Signature::Monadic)?;
    if !g.surjective() {
        return Err(GlivenkoError::Check("g is not onto".into()));
    }
    Ok(g)
}

#[derive(Clone, Debug)]
pub struct GlivenkoReport {
    pub reg: RegForall,
    pub g: HomWitness,
    pub kernel: Vec<Elem>,
    pub quotient: FiniteMGAlgebra,
    /// Isomorphism from `Reg_∀(A)` onto `A/D_∀(A)`.
    pub iso: HomWitness,
    pub semisimple: bool,
}

/// Builds `Reg_∀(A)` and `g`, checks `g⁻¹(1) = D_∀(A)`, finds
/// `Reg_∀(A) ≅ A/D_∀(A)`, and tests the quotient for semisimplicity.
pub fn glivenko(algebra: &FiniteMGAlgebra) -> Result<GlivenkoReport, GlivenkoError> {
    let reg = reg_forall_algebra(algebra)?;
    let g = glivenko_hom(algebra, &reg)?;
    let kernel = g.kernel(&reg.algebra);
    let filter = d_forall_filter(algebra)?;
    if kernel != filter.members() {
        return Err(GlivenkoError::Check(format!(
            "kernel {kernel:?} differs from D_∀ {:?}",
            filter.members()
        )));
    }
    let (quotient, _) = quotient_by_filter(algebra, &filter)?;
    let iso = find_isomorphism(&reg.algebra, &quotient)
        .ok_or_else(|| GlivenkoError::Check("Reg_∀ is not isomorphic to the quotient".into()))?;
    let semisimple = is_semisimple(&quotient)?;
    Ok(GlivenkoReport { reg, g, kernel, quotient, iso, semisimple })
}

/// Whether the maximal congruences meet in the identity.
pub fn is_semisimple(algebra: &FiniteMGAlgebra) -> Result<bool, GlivenkoError> {
    let all = congruence_lattice(algebra)?;
    let maximal = maximal_congruences(&all);
    let mut block = vec![vec![0usize; algebra.size()]; maximal.len()];
    for (k, c) in maximal.iter().enumerate() {
        for (id, b) in c.partition.iter().enumerate() {
            for &a in b {
                block[k][a] = id;
            }
        }
    }
    Ok(algebra
        .elements()
        .all(|a| algebra.elements().all(|b| a == b || block.iter().any(|bl| bl[a] != bl[b]))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::build_algebra;
    use crate::chains::{build_chain, ChainCoordinates};
    use crate::construct::product;

    fn chain(list: &[usize]) -> FiniteMGAlgebra {
        build_chain(&ChainCoordinates::from_list(list).unwrap())
    }

    #[test]
    fn special_sets() {
        let s = special_elements(&chain(&[0, 0])).unwrap();
        assert_eq!((s.dense, s.regular), (vec![1], vec![0, 1]));
        let s = special_elements(&chain(&[2, 0, 1])).unwrap();
        assert_eq!((s.dense, s.regular), (vec![1, 2, 3], vec![0, 3]));
        let square = build_algebra(4, &[(0, 1), (0, 2), (1, 3), (2, 3)], &[0, 3]).unwrap();
        let s = special_elements(&square).unwrap();
        assert_eq!((s.dense, s.regular), (vec![3], vec![0, 1, 2, 3]));
    }

    #[test]
    fn dense_filters() {
        assert_eq!(d_forall_filter(&chain(&[2, 0, 1])).unwrap().members(), vec![1, 2, 3]);
        assert_eq!(d_forall_filter(&chain(&[0, 0])).unwrap().members(), vec![1]);
        for m in 0..4 {
            assert_eq!(d_forall_filter(&chain(&[m, m])).unwrap().members(), vec![m + 1]);
        }
    }

    #[test]
    fn reg_forall_examples() {
        let r = reg_forall_algebra(&chain(&[2, 0, 1])).unwrap();
        assert_eq!(r.carrier, vec![0, 3]);
        assert_eq!(reg_forall_algebra(&chain(&[1, 0, 0])).unwrap().carrier, vec![0, 2]);
        let report = glivenko(&chain(&[2, 0, 1])).unwrap();
        assert_eq!(report.g.map(), &[0, 1, 1, 1]);
        assert_eq!(report.kernel, vec![1, 2, 3]);
        assert!(report.semisimple);
        let two = glivenko(&chain(&[0, 0])).unwrap();
        assert_eq!(two.g.map(), &[0, 1]);
    }

    #[test]
    fn product_is_pointwise() {
        let (a, b) = (chain(&[1, 1]), chain(&[0, 0]));
        let (p, index) = product(&[a.clone(), b.clone()]).unwrap();
        let report = glivenko(&p).unwrap();
        let (ra, rb) = (glivenko(&a).unwrap(), glivenko(&b).unwrap());
        for x in p.elements() {
            let t = index.decode(x);
            let g = report.reg.carrier[report.g.apply(x)];
            let expect = index.encode(&[
                ra.reg.carrier[ra.g.apply(t[0])],
                rb.reg.carrier[rb.g.apply(t[1])],
            ]);
            assert_eq!(g, expect);
        }
        assert_eq!(report.kernel.len(), ra.kernel.len() * rb.kernel.len());
    }

    #[test]
    fn refuses_outside_w1() {
        let square = build_algebra(4, &[(0, 1), (0, 2), (1, 3), (2, 3)], &[0, 3]).unwrap();
        assert!(matches!(reg_forall_algebra(&square), Err(GlivenkoError::NotInW1(_))));
    }
}
