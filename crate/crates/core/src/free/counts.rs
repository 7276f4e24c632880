//! Counting checks on `Λ(n)` and the free algebra of the simple part.

use serde::Serialize;

use super::labeled::{enumerate_functions, enumerate_im};
use super::presentation::{expand_to_pi, generates_space, ExistsPi};
use super::FreeError;
use crate::chains::{build_chain, ChainCoordinates};
use crate::config::Config;
use crate::construct::generate_in_product;
use crate::duality::{MGSpace, PointSet};

/// Surjections from an `n`-set onto a `k`-set, by inclusion–exclusion.
pub fn surjections(n: usize, k: usize) -> u64 {
    let mut total: i128 = 0;
    let mut binom: i128 = 1;
    for i in 0..=k {
        let term = binom * ((k - i) as i128).pow(n as u32);
        total += if i % 2 == 0 { term } else { -term };
        binom = binom * (k - i) as i128 / (i + 1) as i128;
    }
    total as u64
}

/// `S(n, m) + 2 S(n, m+1) + S(n, m+2)`.
pub fn simple_function_count(n: usize, m: usize) -> u64 {
    surjections(n, m) + 2 * surjections(n, m + 1) + surjections(n, m + 2)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimpleCount {
    pub m: usize,
    pub enumerated: usize,
    pub formula: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountReport {
    pub n: usize,
    /// `|∃Π(n)|`
    pub exists_pi: usize,
    /// `Σ_m Σ_{I_m(n)} |F_(m, …)|`, counted directly.
    pub function_sum: usize,
    /// `|Π(n)|`
    pub pi: usize,
    /// `|min Λ(n)|`
    pub minimal: usize,
    pub simple_counts: Vec<SimpleCount>,
    /// Whether `1 ∉ ∃f(G)` picks out exactly the maximal nodes.
    pub maxima_agree: bool,
    /// Size of `∏ C_(m,m)^{|F_(m,m)|}`.
    pub simple_product_size: u64,
    /// Whether the diagonal generators generate that whole product.
    pub simple_product_generated: bool,
    pub all_pass: bool,
}

/// Counts for `Λ(n)` with the Stirling check on minimal nodes and the
/// product form of the free algebra of the simple part.
pub fn count_checks(exists_pi: &ExistsPi, config: &Config) -> Result<CountReport, FreeError> {
    let n = exists_pi.n;
    let mut function_sum = 0;
    for m in 0..=3 * n {
        for parts in enumerate_im(n, m)? {
            function_sum += enumerate_functions(n, &ChainCoordinates::new(m, parts)?)?.len();
        }
    }
    let pi = expand_to_pi(exists_pi, config.subset_scan_cap)?;
    let minimal = exists_pi.minimal();
    let mut simple_counts = Vec::new();
    for m in 0..=n {
        let enumerated = minimal.iter().filter(|&&i| exists_pi.nodes[i].m() == m).count();
        simple_counts.push(SimpleCount { m, enumerated, formula: simple_function_count(n, m) });
    }
    let maxima_agree = (0..exists_pi.len()).all(|i| {
        let f = &exists_pi.nodes[i];
        exists_pi.upper_covers(i).is_empty() == f.misses_top_under_exists(&build_chain(f.coords()))
    });
    let (simple_product_size, simple_product_generated) = simple_product_check(exists_pi)?;
    let all_pass = function_sum == exists_pi.len()
        && simple_counts.iter().all(|c| c.enumerated as u64 == c.formula)
        && minimal.len() as u64 == simple_counts.iter().map(|c| c.formula).sum::<u64>()
        && maxima_agree
        && simple_product_generated;
    Ok(CountReport {
        n,
        exists_pi: exists_pi.len(),
        function_sum,
        pi: pi.size(),
        minimal: minimal.len(),
        simple_counts,
        maxima_agree,
        simple_product_size,
        simple_product_generated,
        all_pass,
    })
}

/// The free algebra of the simple part is generated in the product of the
/// chains `C_(m,m)` of the minimal nodes; it equals the product when the
/// diagonal generators generate everything. With at most 64 elements the
/// product closure is materialized; beyond that generation is decided on
/// the dual (disjoint chains, one class each) by point separation.
fn simple_product_check(exists_pi: &ExistsPi) -> Result<(u64, bool), FreeError> {
    let minimal = exists_pi.minimal();
    let size: u64 = minimal.iter().map(|&i| exists_pi.nodes[i].coords().len() as u64).product();
    if size <= 64 {
        let factors: Vec<_> = minimal.iter().map(|&i| build_chain(exists_pi.nodes[i].coords())).collect();
        let gens: Vec<Vec<usize>> =
            (0..exists_pi.n).map(|j| minimal.iter().map(|&i| exists_pi.nodes[i].values()[j]).collect()).collect();
        let (algebra, _) = generate_in_product(&factors, &gens)?;
        return Ok((size, algebra.size() as u64 == size));
    }
    // Chain for a node (m, m): points 0..=m in the algebra order, so the
    // filter order runs the other way. Point k of a chain lies in the
    // generator's down-set iff the value is a_l with l > k.
    let mut pairs = Vec::new();
    let mut classes = Vec::new();
    let mut offsets = Vec::new();
    let mut total = 0;
    for &i in &minimal {
        let m = exists_pi.nodes[i].m();
        offsets.push(total);
        classes.push((total..=total + m).collect::<Vec<_>>());
        for k in 0..m {
            pairs.push((total + k + 1, total + k));
        }
        total += m + 1;
    }
    let space = MGSpace::new(total, &pairs, classes)?;
    let gens: Vec<PointSet> = (0..exists_pi.n)
        .map(|j| {
            minimal.iter().zip(&offsets).fold(0, |acc, (&i, &off)| {
                let l = exists_pi.nodes[i].values()[j];
                (0..l).fold(acc, |acc, k| acc | 1 << (off + k))
            })
        })
        .collect();
    Ok((size, generates_space(&space, &gens, 1 << 16).separated))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn surjection_values() {
        assert_eq!(surjections(0, 0), 1);
        assert_eq!(surjections(1, 0), 0);
        assert_eq!(surjections(2, 1), 1);
        assert_eq!(surjections(2, 2), 2);
        assert_eq!(surjections(2, 3), 0);
        assert_eq!(surjections(3, 2), 6);
        assert_eq!(surjections(4, 3), 36);
    }

    #[test]
    fn formula_values() {
        assert_eq!(simple_function_count(1, 0), 2);
        assert_eq!(simple_function_count(1, 1), 1);
        assert_eq!(simple_function_count(2, 0), 4);
        assert_eq!(simple_function_count(2, 1), 5);
        assert_eq!(simple_function_count(2, 2), 2);
    }
}
