//! Labeled functions: generator assignments into `C_m` whose image generates
//! a chain `C_(m, m0, …, mr)`, and the covering relation between them.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use super::FreeError;
use crate::algebra::FiniteMGAlgebra;
use crate::chains::{build_chain, ChainCoordinates};
use crate::construct::generate_subalgebra;
use crate::lattice::Elem;

/// `|{j : 1 ≤ j ≤ r, m_{j-1} = m_j = 0}|`
pub fn zero_pairs(parts: &[usize]) -> usize {
    parts.windows(2).filter(|w| w[0] == 0 && w[1] == 0).count()
}

/// `I_m(n)`: part lists `(m0, …, mr)` with `Σ m_i = m − r` and
/// `m − r + |{j : m_{j-1} = m_j = 0}| ≤ n`, ordered by `r` and then by
/// decreasing parts.
pub fn enumerate_im(n: usize, m: usize) -> Result<Vec<Vec<usize>>, FreeError> {
    if m > 3 * n {
        return Err(FreeError::OutOfRange { what: "m", value: m, max: 3 * n });
    }
    let mut out = Vec::new();
    for r in 0..=m {
        let mut group = Vec::new();
        compositions(m - r, r + 1, &mut Vec::new(), &mut group);
        group.retain(|p| m - r + zero_pairs(p) <= n);
        group.sort_by(|a, b| b.cmp(a));
        out.extend(group);
    }
    Ok(out)
}

fn compositions(total: usize, slots: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if slots == 1 {
        prefix.push(total);
        out.push(prefix.clone());
        prefix.pop();
        return;
    }
    for first in 0..=total {
        prefix.push(first);
        compositions(total - first, slots - 1, prefix, out);
        prefix.pop();
    }
}

/// Elements that must be hit: `M ∪ (C_m ∖ ∃C_m)`, where `M` holds the `b_j`
/// (`1 ≤ j ≤ r`) with both neighbours in `∃C_m`.
pub fn required_values(coords: &ChainCoordinates) -> Vec<Elem> {
    let image = coords.image();
    let parts = coords.parts();
    let mut out: Vec<Elem> = (0..coords.len()).filter(|v| !image.contains(v)).collect();
    for j in 1..=coords.r() {
        if parts[j - 1] == 0 && parts[j] == 0 {
            out.push(coords.b_index(j));
        }
    }
    out.sort_unstable();
    out
}

/// A map from the generators into `C_m`, tagged with the coordinates of the
/// chain its image generates.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct LabeledFunction {
    coords: ChainCoordinates,
    values: Vec<Elem>,
}

impl LabeledFunction {
    /// Checks the image condition and, independently, that the values
    /// generate all of `C_(m, …)`.
    pub fn new(coords: ChainCoordinates, values: Vec<Elem>) -> Result<Self, FreeError> {
        if let Some(&v) = values.iter().find(|&&v| v >= coords.len()) {
            return Err(FreeError::InvalidCoordinates(format!("value a_{v} is outside C_{}", coords.m())));
        }
        let f = LabeledFunction { coords, values };
        let by_condition = f.meets_image_condition();
        let by_closure = f.generates_chain(&build_chain(&f.coords));
        if by_condition != by_closure {
            return Err(FreeError::Inconsistent(format!(
                "{f}: image condition gives {by_condition}, closure gives {by_closure}"
            )));
        }
        if !by_condition {
            return Err(FreeError::InvalidCoordinates(format!("{f} does not generate its chain")));
        }
        Ok(f)
    }

    pub fn coords(&self) -> &ChainCoordinates {
        &self.coords
    }

    pub fn values(&self) -> &[Elem] {
        &self.values
    }

    pub fn m(&self) -> usize {
        self.coords.m()
    }

    pub fn top(&self) -> Elem {
        self.coords.m() + 1
    }

    pub fn meets_image_condition(&self) -> bool {
        required_values(&self.coords).iter().all(|v| self.values.contains(v))
    }

    /// Whether the values generate all of `chain`, which must be
    /// `C_(coords)`.
    pub fn generates_chain(&self, chain: &FiniteMGAlgebra) -> bool {
        generate_subalgebra(chain, &self.values).len() == chain.size()
    }

    /// `1 ∉ ∃f(G)`
    pub fn misses_top_under_exists(&self, chain: &FiniteMGAlgebra) -> bool {
        self.values.iter().all(|&v| chain.exists(v) != chain.top())
    }
}

impl fmt::Display for LabeledFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}", self.coords.m())?;
        for p in self.coords.parts() {
            write!(f, ",{p}")?;
        }
        write!(f, ";")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "a{v}")?;
        }
        write!(f, ")")
    }
}

/// `F_(m, m0, …, mr)` for `n` generators, in lexicographic order of values.
pub fn enumerate_functions(n: usize, coords: &ChainCoordinates) -> Result<Vec<LabeledFunction>, FreeError> {
    let m = coords.m();
    if m > 3 * n || !enumerate_im(n, m)?.iter().any(|p| p == coords.parts()) {
        return Err(FreeError::InvalidCoordinates(format!("parts of {coords} are not in I_{m}({n})")));
    }
    let chain = build_chain(coords);
    let k = coords.len();
    let total = k.pow(n as u32);
    let mut out = Vec::new();
    for code in 0..total {
        let mut values = vec![0; n];
        let mut rest = code;
        for slot in values.iter_mut().rev() {
            *slot = rest % k;
            rest /= k;
        }
        let f = LabeledFunction { coords: coords.clone(), values };
        let by_condition = f.meets_image_condition();
        if by_condition != f.generates_chain(&chain) {
            return Err(FreeError::Inconsistent(format!("image condition and closure disagree on {f}")));
        }
        if by_condition {
            out.push(f);
        }
    }
    Ok(out)
}

/// `Λ(n)`, sorted by coordinates and then values.
pub fn lambda(n: usize) -> Result<Vec<LabeledFunction>, FreeError> {
    let mut coords = Vec::new();
    for m in 0..=3 * n {
        for parts in enumerate_im(n, m)? {
            coords.push(ChainCoordinates::new(m, parts)?);
        }
    }
    let groups: Result<Vec<Vec<LabeledFunction>>, FreeError> =
        coords.par_iter().map(|c| enumerate_functions(n, c)).collect();
    let mut out: Vec<LabeledFunction> = groups?.into_iter().flatten().collect();
    out.sort();
    Ok(out)
}

/// Image of `a_i ∈ C_{m'}` under the quotient onto `C_m` (`m ≤ m'`) that
/// keeps `a_0..a_m` and sends everything above to 1.
fn collapse(v: Elem, m: usize) -> Elem {
    v.min(m + 1)
}

/// Whether `p_h` covers `p_f`: the coordinates of `h` extend those of `f`
/// by one part, and for every generator `f(g) = a_i` iff `h(g) = a_i` when
/// `i ≤ m`, while `f(g) = 1` iff `h(g) = a_i` with `m + 1 ≤ i`.
pub fn covers(f: &LabeledFunction, h: &LabeledFunction) -> bool {
    let (pf, ph) = (f.coords.parts(), h.coords.parts());
    if ph.len() != pf.len() + 1 || ph[..pf.len()] != *pf {
        return false;
    }
    let extra = ph[pf.len()];
    if h.m() != f.m() + extra + 1 || f.values.len() != h.values.len() {
        return false;
    }
    f.values.iter().zip(&h.values).all(|(&a, &b)| collapse(b, f.m()) == a)
}
