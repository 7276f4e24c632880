//! The sequence `a_1, a_2, …` in `[0,1]^ℕ` that generates an infinite
//! subalgebra from a single element.
//!
//! The product carries the Gödel operations coordinatewise and the constant
//! sequences as quantifier image, so `∀a` is the constant sequence at the
//! infimum of `a`. Starting from `a_1(n) = 1 - 1/n` the recursion
//! `a_{k+1} = a_k ∨ (a_k → ∀a_k)` gives `a_k(n) = 1` for `n < k` and
//! `1 - 1/n` otherwise. Vectors are truncated to coordinates `1..=T`; for
//! `k ≤ T` the infimum of `a_k` is attained at `n = k`, so truncation does
//! not change the values.

use num_traits::Num;
use thiserror::Error;

/// Scalars admitted by the witness computation.
pub trait Scalar: Num + PartialOrd + Clone + std::fmt::Debug {}

impl<T: Num + PartialOrd + Clone + std::fmt::Debug> Scalar for T {}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error("k must be at least 1")]
    ZeroLength,
    #[error("truncation T = {t} is too short for k = {k}; need T >= k + 1")]
    TruncationTooShort { k: usize, t: usize },
    #[error("postcondition failed: {0}")]
    Postcondition(String),
}

fn from_count<T: Scalar>(n: usize) -> T {
    (0..n).fold(T::zero(), |acc, _| acc + T::one())
}

fn min_entry<T: Scalar>(v: &[T]) -> T {
    v.iter()
        .cloned()
        .reduce(|a, b| if b < a { b } else { a })
        .expect("nonempty vector")
}

/// `a → b` in the standard Gödel chain.
fn godel_imp<T: Scalar>(a: &T, b: &T) -> T {
    if a <= b {
        T::one()
    } else {
        b.clone()
    }
}

fn max<T: Scalar>(a: T, b: T) -> T {
    if a < b {
        b
    } else {
        a
    }
}

/// `a_1, …, a_k` truncated to coordinates `1..=t`.
pub fn non_local_finite_witness<T: Scalar>(k: usize, t: usize) -> Result<Vec<Vec<T>>, WitnessError> {
    if k == 0 {
        return Err(WitnessError::ZeroLength);
    }
    if t < k + 1 {
        return Err(WitnessError::TruncationTooShort { k, t });
    }
    let one = T::one();
    let first: Vec<T> = (1..=t).map(|n| one.clone() - one.clone() / from_count::<T>(n)).collect();
    let mut seq = vec![first];
    while seq.len() < k {
        let a = seq.last().expect("nonempty");
        let inf = min_entry(a);
        let next = a.iter().map(|x| max(x.clone(), godel_imp(x, &inf))).collect();
        seq.push(next);
    }

    for (i, v) in seq.iter().enumerate() {
        let index = i + 1;
        for (j, x) in v.iter().enumerate() {
            let n = j + 1;
            let expected = if n < index {
                T::one()
            } else {
                one.clone() - one.clone() / from_count::<T>(n)
            };
            if *x != expected {
                return Err(WitnessError::Postcondition(format!("a_{index}({n}) = {x:?}, expected {expected:?}")));
            }
        }
    }
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] == seq[j] {
                return Err(WitnessError::Postcondition(format!("a_{} equals a_{}", i + 1, j + 1)));
            }
        }
    }
    Ok(seq)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn first_terms() {
        let w = non_local_finite_witness::<Rational>(1, 3).unwrap();
        assert_eq!(w, vec![vec![q(0, 1), q(1, 2), q(2, 3)]]);
        let w = non_local_finite_witness::<Rational>(2, 3).unwrap();
        assert_eq!(w[1], vec![q(1, 1), q(1, 2), q(2, 3)]);
    }

    #[test]
    fn short_truncation_rejected() {
        assert_eq!(
            non_local_finite_witness::<Rational>(3, 3).unwrap_err(),
            WitnessError::TruncationTooShort { k: 3, t: 3 }
        );
        assert_eq!(non_local_finite_witness::<Rational>(0, 3).unwrap_err(), WitnessError::ZeroLength);
    }

    #[test]
    fn floating_point_scalars_also_work() {
        let w = non_local_finite_witness::<f64>(3, 5).unwrap();
        assert_eq!(w[2][1], 1.0);
        assert_eq!(w[2][3], 0.75);
    }
}
