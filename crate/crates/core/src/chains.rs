//! Finite monadic Gödel chains `C_(m, m0, …, mr)` and the lexicographic
//! characteristic chain on `(ℕ₀ × ℕ₀) ∪ {⊤}`.
//!
//! `C_(m, m0, …, mr)` is the chain `0 = a_0 < … < a_{m+1} = 1` whose
//! quantifier image `b_0 < … < b_{r+1}` leaves exactly `m_i` elements
//! strictly between `b_i` and `b_{i+1}`. With this layout `b_j` is
//! `a_{m0 + … + m_{j-1} + j}`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::FiniteMGAlgebra;
use crate::error::AlgebraError;
use crate::hom::{HomWitness, Signature};
use crate::lattice::{Elem, FiniteLattice};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ChainCoordinates {
    m: usize,
    parts: Vec<usize>,
}

impl ChainCoordinates {
    pub fn new(m: usize, parts: Vec<usize>) -> Result<Self, AlgebraError> {
        if parts.is_empty() {
            return Err(AlgebraError::InvalidCoordinates("at least one part is required".into()));
        }
        let r = parts.len() - 1;
        let total = r + parts.iter().sum::<usize>();
        if total != m {
            return Err(AlgebraError::InvalidCoordinates(format!(
                "r + sum of parts is {total}, expected m = {m}"
            )));
        }
        Ok(ChainCoordinates { m, parts })
    }

    /// Reads `[m, m0, …, mr]`.
    pub fn from_list(list: &[usize]) -> Result<Self, AlgebraError> {
        match list.split_first() {
            Some((&m, parts)) => Self::new(m, parts.to_vec()),
            None => Err(AlgebraError::InvalidCoordinates("empty list".into())),
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// `r`, one less than the number of parts.
    pub fn r(&self) -> usize {
        self.parts.len() - 1
    }

    /// Number of chain elements, `m + 2`.
    pub fn len(&self) -> usize {
        self.m + 2
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Index of `b_j` for `j = 0..=r+1`.
    pub fn b_index(&self, j: usize) -> Elem {
        self.parts[..j].iter().sum::<usize>() + j
    }

    /// Indices of the quantifier image `b_0 < … < b_{r+1}`.
    pub fn image(&self) -> Vec<Elem> {
        (0..=self.r() + 1).map(|j| self.b_index(j)).collect()
    }

    /// Whether the chain is simple, i.e. of the form `(m, m)`.
    pub fn is_simple(&self) -> bool {
        self.parts.len() == 1
    }
}

impl fmt::Display for ChainCoordinates {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}", self.m)?;
        for p in &self.parts {
            write!(f, ",{p}")?;
        }
        write!(f, ")")
    }
}

pub fn build_chain(c: &ChainCoordinates) -> FiniteMGAlgebra {
    let lattice = FiniteLattice::chain(c.len()).expect("nonempty chain");
    FiniteMGAlgebra::new(lattice, &c.image()).expect("chain images are m-relatively complete")
}

/// Element of the characteristic chain. The derived order is the
/// lexicographic order on pairs with `Top` above every pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum LexElement {
    Pair(u64, u64),
    Top,
}

impl fmt::Display for LexElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LexElement::Pair(a, b) => write!(f, "({a},{b})"),
            LexElement::Top => write!(f, "T"),
        }
    }
}

pub mod lex {
    //! Operations of the characteristic chain.

    use super::LexElement;

    pub const ZERO: LexElement = LexElement::Pair(0, 0);

    pub fn meet(x: LexElement, y: LexElement) -> LexElement {
        x.min(y)
    }

    pub fn join(x: LexElement, y: LexElement) -> LexElement {
        x.max(y)
    }

    pub fn imp(x: LexElement, y: LexElement) -> LexElement {
        if x <= y {
            LexElement::Top
        } else {
            y
        }
    }

    pub fn neg(x: LexElement) -> LexElement {
        imp(x, ZERO)
    }

    pub fn exists(x: LexElement) -> LexElement {
        match x {
            LexElement::Pair(a, 0) => LexElement::Pair(a, 0),
            LexElement::Pair(a, _) => LexElement::Pair(a + 1, 0),
            LexElement::Top => LexElement::Top,
        }
    }

    pub fn forall(x: LexElement) -> LexElement {
        match x {
            LexElement::Pair(a, _) => LexElement::Pair(a, 0),
            LexElement::Top => LexElement::Top,
        }
    }
}

/// The finite subuniverse `S` of the characteristic chain mapped onto a
/// finite chain.
#[derive(Clone, Debug)]
pub struct CharEmbedding {
    /// Points of `S` in increasing order.
    pub points: Vec<LexElement>,
    /// `S` as an algebra; element `i` is `points[i]`.
    pub subalgebra: FiniteMGAlgebra,
    pub target: FiniteMGAlgebra,
    /// The homomorphism `h` from `subalgebra` onto `target`.
    pub hom: HomWitness,
}

/// `S = {(i,j) : 0 ≤ i ≤ r, 0 ≤ j ≤ m_i} ∪ {(r+1,0), ⊤}` with
/// `h((i,j)) = b_i + j` and `h((r+1,0)) = h(⊤) = 1`.
///
/// Closure of `S` under the five operations is checked directly on lexical
/// elements, the algebra built on `S` is checked to carry exactly the lexical
/// quantifiers, and `h` is checked as a surjective homomorphism.
pub fn char_chain_embedding(c: &ChainCoordinates) -> Result<CharEmbedding, AlgebraError> {
    let r = c.r();
    let mut points = Vec::new();
    let mut h = Vec::new();
    for (i, &mi) in c.parts().iter().enumerate() {
        for j in 0..=mi {
            points.push(LexElement::Pair(i as u64, j as u64));
            h.push(c.b_index(i) + j);
        }
    }
    points.push(LexElement::Pair(r as u64 + 1, 0));
    h.push(c.m() + 1);
    points.push(LexElement::Top);
    h.push(c.m() + 1);

    let index_of = |x: LexElement| points.binary_search(&x).ok();
    let not_closed = |op: &'static str, result: LexElement| AlgebraError::NotClosed { op, result: result.to_string() };
    for &x in &points {
        for (op, v) in [("exists", lex::exists(x)), ("forall", lex::forall(x))] {
            if index_of(v).is_none() {
                return Err(not_closed(op, v));
            }
        }
        for &y in &points {
            for (op, v) in [("meet", lex::meet(x, y)), ("join", lex::join(x, y)), ("implies", lex::imp(x, y))] {
                if index_of(v).is_none() {
                    return Err(not_closed(op, v));
                }
            }
        }
    }

    let lattice = FiniteLattice::chain(points.len())?;
    let image: Vec<Elem> = (0..points.len()).filter(|&i| lex::exists(points[i]) == points[i]).collect();
    let subalgebra = FiniteMGAlgebra::new(lattice, &image)?;
    for (a, &x) in points.iter().enumerate() {
        let pairs = [
            ("exists", subalgebra.exists(a), lex::exists(x)),
            ("forall", subalgebra.forall(a), lex::forall(x)),
        ];
        for (op, got, want) in pairs {
            if points[got] != want {
                return Err(AlgebraError::NotHomomorphism { op, args: vec![a] });
            }
        }
        for (b, &y) in points.iter().enumerate() {
            if points[subalgebra.imp(a, b)] != lex::imp(x, y) {
                return Err(AlgebraError::NotHomomorphism { op: "implies", args: vec![a, b] });
            }
        }
    }
    let target = build_chain(c);
    let hom = HomWitness::new(&subalgebra, &target, h, Signature::Monadic)?;
    if !hom.surjective() {
        return Err(AlgebraError::NotHomomorphism { op: "surjectivity", args: vec![] });
    }
    Ok(CharEmbedding { points, subalgebra, target, hom })
}

/// All coordinates with the given `m`, parts in lexicographic order.
pub fn coordinates_with_m(m: usize) -> Vec<ChainCoordinates> {
    let mut out = Vec::new();
    for r in 0..=m {
        let mut parts = vec![0; r + 1];
        compositions(m - r, 0, &mut parts, &mut |p| {
            out.push(ChainCoordinates { m, parts: p.to_vec() });
        });
    }
    out.sort();
    out
}

fn compositions(remaining: usize, slot: usize, parts: &mut [usize], visit: &mut dyn FnMut(&[usize])) {
    if slot + 1 == parts.len() {
        parts[slot] = remaining;
        visit(parts);
        return;
    }
    for v in 0..=remaining {
        parts[slot] = v;
        compositions(remaining - v, slot + 1, parts, visit);
    }
}
