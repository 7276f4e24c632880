//! Four conditions on an interior operator of a finite distributive
//! lattice, each evaluated by brute force over prime filters and elements.
//!
//! With `E` relating prime filters `P`, `Q` when `P ∩ ∀L = Q ∩ ∀L`:
//!
//! 1. if `P ∩ ∀L ⊆ Q ∩ ∀L` then some `R` with `P E R` has `R ⊆ Q`;
//! 2. if `a ∈ P` and the class of `P` lies in `σ(a)` then `∀a ∈ P`;
//! 3. `∀σ(a) = σ(∀a)` for every `a`;
//! 4. `∀(∀a ∨ b) = ∀a ∨ ∀b` for all `a`, `b`.
//!
//! On a distributive lattice the four are equivalent.

use super::DualityError;
use crate::lattice::{Elem, FiniteLattice};

pub fn is_interior_operator(lattice: &FiniteLattice, f: &[Elem]) -> Result<(), DualityError> {
    if f.len() != lattice.size() {
        return Err(DualityError::NotInteriorOperator("table has the wrong length".into()));
    }
    if f[lattice.top()] != lattice.top() {
        return Err(DualityError::NotInteriorOperator("f(1) is not 1".into()));
    }
    for x in lattice.elements() {
        if lattice.meet(x, f[x]) != f[x] {
            return Err(DualityError::NotInteriorOperator(format!("f({x}) is not below {x}")));
        }
        if f[f[x]] != f[x] {
            return Err(DualityError::NotInteriorOperator(format!("f is not idempotent at {x}")));
        }
        for y in lattice.elements() {
            if f[lattice.meet(x, y)] != lattice.meet(f[x], f[y]) {
                return Err(DualityError::NotInteriorOperator(format!("f does not preserve {x} & {y}")));
            }
        }
    }
    Ok(())
}

/// Every interior operator on `lattice`, in lexicographic order of tables.
pub fn interior_operators(lattice: &FiniteLattice) -> Vec<Vec<Elem>> {
    let n = lattice.size();
    let mut out = Vec::new();
    let mut table = vec![0; n];
    fn fill(lattice: &FiniteLattice, x: usize, table: &mut Vec<Elem>, out: &mut Vec<Vec<Elem>>) {
        if x == lattice.size() {
            if is_interior_operator(lattice, table).is_ok() {
                out.push(table.clone());
            }
            return;
        }
        for v in lattice.elements().filter(|&v| lattice.leq(v, x)) {
            table[x] = v;
            fill(lattice, x + 1, table, out);
        }
    }
    fill(lattice, 0, &mut table, &mut out);
    out
}

/// The four conditions in order.
pub fn interior_conditions(lattice: &FiniteLattice, f: &[Elem]) -> Result<[bool; 4], DualityError> {
    is_interior_operator(lattice, f)?;
    let primes = lattice.join_irreducibles();
    let image: Vec<Elem> = lattice.elements().filter(|&x| f[x] == x).collect();
    let in_filter = |p: Elem, a: Elem| lattice.leq(p, a);
    // [p) ⊆ [q) iff q ≤ p.
    let filter_subset = |p: Elem, q: Elem| lattice.leq(q, p);
    let trace = |p: Elem| -> Vec<Elem> { image.iter().copied().filter(|&c| in_filter(p, c)).collect() };
    let traces: Vec<Vec<Elem>> = primes.iter().map(|&p| trace(p)).collect();
    let related = |i: usize, j: usize| traces[i] == traces[j];
    let k = primes.len();

    let first = (0..k).all(|i| {
        (0..k).all(|j| {
            let included = traces[i].iter().all(|c| traces[j].contains(c));
            !included || (0..k).any(|r| related(i, r) && filter_subset(primes[r], primes[j]))
        })
    });

    let second = (0..k).all(|i| {
        lattice.elements().all(|a| {
            let class_inside = (0..k).filter(|&j| related(i, j)).all(|j| in_filter(primes[j], a));
            !(in_filter(primes[i], a) && class_inside) || in_filter(primes[i], f[a])
        })
    });

    let sigma = |a: Elem| -> Vec<bool> { primes.iter().map(|&p| in_filter(p, a)).collect() };
    let class_interior = |set: &[bool]| -> Vec<bool> {
        (0..k).map(|i| (0..k).filter(|&j| related(i, j)).all(|j| set[j])).collect()
    };
    let third = lattice.elements().all(|a| class_interior(&sigma(a)) == sigma(f[a]));

    let fourth = lattice
        .elements()
        .all(|a| lattice.elements().all(|b| f[lattice.join(f[a], b)] == lattice.join(f[a], f[b])));

    Ok([first, second, third, fourth])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> FiniteLattice {
        FiniteLattice::from_pairs(4, [(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn identity_operator_satisfies_everything() {
        let l = square();
        assert_eq!(interior_conditions(&l, &[0, 1, 2, 3]).unwrap(), [true; 4]);
    }

    #[test]
    fn top_only_operator_on_square() {
        // f(1) = 1 and f(x) = 0 otherwise. The image is {0, 1}, both primes
        // are E-related, and every condition holds.
        let l = square();
        assert_eq!(interior_conditions(&l, &[0, 0, 0, 3]).unwrap(), [true; 4]);
    }

    #[test]
    fn operator_failing_all_four() {
        // Image {0, a, 1} on the square: ∀(∀a ∨ b) = 1 but ∀a ∨ ∀b = a.
        let l = square();
        assert_eq!(interior_conditions(&l, &[0, 1, 0, 3]).unwrap(), [false; 4]);
    }

    #[test]
    fn conditions_agree_on_small_lattices() {
        for l in crate::enumerate::distributive_lattices(5) {
            for f in interior_operators(&l) {
                let c = interior_conditions(&l, &f).unwrap();
                assert!(c.iter().all(|&v| v == c[0]), "{f:?}");
            }
        }
    }

    #[test]
    fn rejects_non_interior_tables() {
        let l = square();
        assert!(matches!(interior_conditions(&l, &[0, 1, 1, 3]), Err(DualityError::NotInteriorOperator(_))));
        assert_eq!(interior_operators(&FiniteLattice::chain(3).unwrap()).len(), 2);
    }
}
