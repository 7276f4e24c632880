//! Congruences from saturated increasing sets of the dual space.

use super::dual::{dual_space, sigma};
use super::space::PointSet;
use super::DualityError;
use crate::algebra::FiniteMGAlgebra;
use crate::lattice::Elem;

/// A saturated increasing set `Y` and the congruence
/// `θ(Y) = {(a, b) : σ(a) ∩ Y = σ(b) ∩ Y}` as a partition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Congruence {
    pub set: PointSet,
    /// Blocks sorted internally and ordered by least member.
    pub partition: Vec<Vec<Elem>>,
}

impl Congruence {
    /// Whether every block is a singleton.
    pub fn is_identity(&self) -> bool {
        self.partition.iter().all(|b| b.len() == 1)
    }
}

/// All congruences, one per saturated increasing set, ordered by the size
/// and mask of the set. The empty set gives the total congruence and the
/// whole space gives the identity.
pub fn congruence_lattice(algebra: &FiniteMGAlgebra) -> Result<Vec<Congruence>, DualityError> {
    let dual = dual_space(algebra)?;
    let space = &dual.space;
    let sigmas: Vec<PointSet> = algebra.elements().map(|a| sigma(algebra, &dual, a)).collect();
    let mut out = Vec::new();
    for y in space.increasing_sets(usize::MAX)? {
        if !space.is_saturated(y) {
            continue;
        }
        let mut partition: Vec<(PointSet, Vec<Elem>)> = Vec::new();
        for a in algebra.elements() {
            let key = sigmas[a] & y;
            match partition.iter_mut().find(|(k, _)| *k == key) {
                Some((_, block)) => block.push(a),
                None => partition.push((key, vec![a])),
            }
        }
        out.push(Congruence { set: y, partition: partition.into_iter().map(|(_, b)| b).collect() });
    }
    Ok(out)
}

/// Congruences that are maximal among proper ones: those whose set is a
/// minimal nonempty saturated increasing set.
pub fn maximal_congruences(all: &[Congruence]) -> Vec<&Congruence> {
    all.iter()
        .filter(|c| c.set != 0)
        .filter(|c| !all.iter().any(|d| d.set != 0 && d.set != c.set && d.set & !c.set == 0))
        .collect()
}

/// Congruences of the Gödel algebra `∃A`, counted as its lattice filters.
pub fn image_congruence_count(algebra: &FiniteMGAlgebra) -> usize {
    let image = algebra.image();
    // Filters of a finite lattice are principal; distinct generators give
    // distinct filters.
    image
        .iter()
        .filter(|&&c| {
            let filter: Vec<Elem> = image.iter().copied().filter(|&d| algebra.leq(c, d)).collect();
            filter.iter().all(|&x| filter.iter().all(|&y| filter.contains(&algebra.meet(x, y))))
        })
        .count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chains::{build_chain, ChainCoordinates};

    fn chain(list: &[usize]) -> FiniteMGAlgebra {
        build_chain(&ChainCoordinates::from_list(list).unwrap())
    }

    #[test]
    fn counts_on_chains() {
        assert_eq!(congruence_lattice(&chain(&[0, 0])).unwrap().len(), 2);
        assert_eq!(congruence_lattice(&chain(&[1, 1])).unwrap().len(), 2);
        let c210 = congruence_lattice(&chain(&[2, 1, 0])).unwrap();
        assert_eq!(c210.len(), 3);
        assert_eq!(image_congruence_count(&chain(&[2, 1, 0])), 3);
        assert!(c210.last().unwrap().is_identity());
        assert_eq!(c210[0].partition.len(), 1);
    }

    #[test]
    fn maximal_congruence_of_chain() {
        let all = congruence_lattice(&chain(&[2, 1, 0])).unwrap();
        let max = maximal_congruences(&all);
        assert_eq!(max.len(), 1);
        assert_eq!(max[0].partition, vec![vec![0], vec![1], vec![2, 3]]);
    }
}
