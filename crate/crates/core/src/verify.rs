//! Invariant suites over the enumerated corpus.
//!
//! Each suite returns a report; failures are data. `mg verify` runs them
//! all and the acceptance tests call them with their own sizes.

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::FiniteMGAlgebra;
use crate::chains::{build_chain, char_chain_embedding, coordinates_with_m, ChainCoordinates};
use crate::config::Config;
use crate::duality::{
    algebra_from_space, congruence_lattice, dual_space, find_space_isomorphism, image_congruence_count,
    interior_conditions, interior_operators, MGSpace, PointSet,
};
use crate::enumerate::{distributive_lattices, enumerate_algebras};
use crate::free::{count_checks, free_algebra, FreePresentation};
use crate::glivenko::glivenko;
use crate::iso::find_isomorphism;
use crate::serial::{space_from_json, space_to_json};
use crate::terms::{alpha, axioms, check_identity_with_budget, lemma_laws, prelinearity, Identity};
use crate::varieties::{discriminator_failure, membership, width_of, Family, VarietyTag};
use crate::witness::non_local_finite_witness;

/// Failures kept per suite; the count is always exact.
const KEPT_FAILURES: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub checked: usize,
    pub failed: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(name: &str) -> Self {
        SuiteReport { name: name.into(), checked: 0, failed: 0, failures: Vec::new() }
    }

    fn record(&mut self, outcome: Result<(), String>) {
        self.checked += 1;
        if let Err(e) = outcome {
            self.failed += 1;
            if self.failures.len() < KEPT_FAILURES {
                self.failures.push(e);
            }
        }
    }

    fn from_outcomes(name: &str, outcomes: Vec<Result<(), String>>) -> Self {
        let mut report = SuiteReport::new(name);
        for o in outcomes {
            report.record(o);
        }
        report
    }

    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub suite: String,
    pub max_size: usize,
    pub suites: Vec<SuiteReport>,
    pub passed: bool,
}

pub fn corpus(max_size: usize, config: &Config) -> Result<Vec<FiniteMGAlgebra>, String> {
    enumerate_algebras(max_size, config).map_err(|e| e.to_string())
}

fn check(algebra: &FiniteMGAlgebra, identity: &Identity, config: &Config) -> Result<(), String> {
    match check_identity_with_budget(algebra, identity, config.identity_budget) {
        Ok(None) => Ok(()),
        Ok(Some(c)) => Err(format!("{} fails on {}: {c:?}", identity.name, describe(algebra))),
        Err(e) => Err(format!("{} on {}: {e}", identity.name, describe(algebra))),
    }
}

fn describe(algebra: &FiniteMGAlgebra) -> String {
    format!("size {} pairs {:?} image {:?}", algebra.size(), algebra.cover_pairs(), algebra.image())
}

/// M1–M5, prelinearity and L1–L14 on every chain with `m ≤ max_m` and every
/// corpus algebra; `α_1` on the chains.
pub fn identity_suite(max_m: usize, algebras: &[FiniteMGAlgebra], config: &Config) -> SuiteReport {
    let mut laws = axioms();
    laws.push(prelinearity());
    laws.extend(lemma_laws());
    let alpha1 = alpha(1).expect("k = 1 is valid");
    let chains: Vec<(String, FiniteMGAlgebra)> = (0..=max_m)
        .flat_map(coordinates_with_m)
        .map(|c| (c.to_string(), build_chain(&c)))
        .collect();
    let mut outcomes: Vec<Result<(), String>> = chains
        .par_iter()
        .flat_map_iter(|(name, a)| {
            laws.iter().chain(std::iter::once(&alpha1)).map(move |law| {
                check(a, law, config).map_err(|e| format!("{name}: {e}"))
            })
        })
        .collect();
    outcomes.extend(
        algebras
            .par_iter()
            .flat_map_iter(|a| laws.iter().map(move |law| check(a, law, config)))
            .collect::<Vec<_>>(),
    );
    SuiteReport::from_outcomes("identities", outcomes)
}

/// The three width computations on every f.s.i. algebra.
pub fn width_suite(algebras: &[FiniteMGAlgebra], config: &Config) -> SuiteReport {
    let outcomes = algebras
        .par_iter()
        .filter(|a| a.classify().fsi)
        .map(|a| match width_of(a, config) {
            Ok(w) if w.alpha == Some(w.k) => Ok(()),
            Ok(w) => Err(format!("alpha over budget for width {} on {}", w.k, describe(a))),
            Err(e) => Err(format!("{e} on {}", describe(a))),
        })
        .collect();
    SuiteReport::from_outcomes("width", outcomes)
}

/// `A ≅ algebra of the dual of A` for every corpus algebra.
pub fn duality_suite(algebras: &[FiniteMGAlgebra], config: &Config) -> SuiteReport {
    let outcomes = algebras
        .par_iter()
        .map(|a| {
            let dual = dual_space(a).map_err(|e| e.to_string())?;
            let back = algebra_from_space(&dual.space, config.subset_scan_cap, usize::MAX).map_err(|e| e.to_string())?;
            find_isomorphism(a, &back.algebra)
                .map(|_| ())
                .ok_or_else(|| format!("no isomorphism back for {}", describe(a)))
        })
        .collect();
    SuiteReport::from_outcomes("duality", outcomes)
}

/// Duals of the corpus and of the chains `C_m`, `m < max_points`, through
/// JSON and through `dual(algebra(X)) ≅ X`.
pub fn space_suite(algebras: &[FiniteMGAlgebra], max_points: usize, config: &Config) -> SuiteReport {
    let mut spaces: Vec<MGSpace> = algebras.iter().filter_map(|a| dual_space(a).ok()).map(|d| d.space).collect();
    for m in 0..max_points {
        for c in coordinates_with_m(m) {
            if let Ok(d) = dual_space(&build_chain(&c)) {
                spaces.push(d.space);
            }
        }
    }
    spaces.retain(|s| s.size() <= max_points);
    let outcomes = spaces
        .par_iter()
        .map(|s| {
            let loaded = space_from_json(&space_to_json(s)).map_err(|e| e.to_string())?;
            if loaded != *s {
                return Err(format!("JSON round trip changed a space of {} points", s.size()));
            }
            let algebra = algebra_from_space(s, config.subset_scan_cap, usize::MAX).map_err(|e| e.to_string())?;
            let again = dual_space(&algebra.algebra).map_err(|e| e.to_string())?;
            find_space_isomorphism(s, &again.space)
                .map(|_| ())
                .ok_or_else(|| format!("dual of the algebra of a {}-point space differs", s.size()))
        })
        .collect();
    SuiteReport::from_outcomes("spaces", outcomes)
}

/// Saturated increasing sets, congruences and congruences of `∃A` agree in
/// number. Congruences are counted independently by closing pairs.
pub fn congruence_suite(algebras: &[FiniteMGAlgebra]) -> SuiteReport {
    let outcomes = algebras
        .par_iter()
        .map(|a| {
            let dual = dual_space(a).map_err(|e| e.to_string())?;
            let space = &dual.space;
            let saturated = space
                .increasing_sets(usize::MAX)
                .map_err(|e| e.to_string())?
                .into_iter()
                .filter(|&y| space.is_saturated(y))
                .count();
            let from_space = congruence_lattice(a).map_err(|e| e.to_string())?.len();
            let direct = count_congruences(a);
            let image = image_congruence_count(a);
            if saturated == from_space && from_space == direct && direct == image {
                Ok(())
            } else {
                Err(format!(
                    "saturated {saturated}, dual congruences {from_space}, direct {direct}, image {image} on {}",
                    describe(a)
                ))
            }
        })
        .collect();
    SuiteReport::from_outcomes("congruences", outcomes)
}

/// Congruences by brute force: every principal congruence `Cg(a, b)` is
/// closed under the operations, and the lattice is generated under joins.
pub fn count_congruences(a: &FiniteMGAlgebra) -> usize {
    let n = a.size();
    let principal: Vec<Vec<usize>> =
        (0..n).flat_map(|x| (x + 1..n).map(move |y| (x, y))).map(|(x, y)| close(a, vec![(x, y)])).collect();
    let mut seen: Vec<Vec<usize>> = vec![(0..n).collect()];
    let mut frontier = seen.clone();
    while let Some(theta) = frontier.pop() {
        for p in &principal {
            let pairs: Vec<(usize, usize)> = (0..n)
                .flat_map(|x| (0..n).map(move |y| (x, y)))
                .filter(|&(x, y)| x < y && (theta[x] == theta[y] || p[x] == p[y]))
                .collect();
            let joined = close(a, pairs);
            if !seen.contains(&joined) {
                seen.push(joined.clone());
                frontier.push(joined);
            }
        }
    }
    seen.len()
}

/// The least congruence containing `pairs`, as canonical block labels.
fn close(a: &FiniteMGAlgebra, pairs: Vec<(usize, usize)>) -> Vec<usize> {
    let n = a.size();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for (x, y) in pairs {
        let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
        parent[rx.max(ry)] = rx.min(ry);
    }
    loop {
        let mut changed = false;
        let label: Vec<usize> = (0..n).map(|x| find(&mut parent, x)).collect();
        let mut merges = Vec::new();
        for x in 0..n {
            for y in x + 1..n {
                if label[x] != label[y] {
                    continue;
                }
                merges.push((a.exists(x), a.exists(y)));
                merges.push((a.forall(x), a.forall(y)));
                for z in 0..n {
                    merges.push((a.meet(x, z), a.meet(y, z)));
                    merges.push((a.join(x, z), a.join(y, z)));
                    merges.push((a.imp(x, z), a.imp(y, z)));
                    merges.push((a.imp(z, x), a.imp(z, y)));
                }
            }
        }
        for (u, v) in merges {
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            if ru != rv {
                parent[ru.max(rv)] = ru.min(rv);
                changed = true;
            }
        }
        if !changed {
            let mut canon = vec![usize::MAX; n];
            let mut out = vec![0; n];
            let mut next = 0;
            for x in 0..n {
                let r = find(&mut parent, x);
                if canon[r] == usize::MAX {
                    canon[r] = next;
                    next += 1;
                }
                out[x] = canon[r];
            }
            return out;
        }
    }
}

/// Parameters predicted from the dual space: the width is the largest
/// number of minimal points of `Sat[K)` over classes `K` (the dual of an
/// f.s.i. quotient), the heights come from the largest `[x)` and the most
/// classes meeting one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DualPrediction {
    pub width: usize,
    pub n_h: usize,
    pub n_he: usize,
}

pub fn dual_prediction(space: &MGSpace) -> DualPrediction {
    let mut width = 0;
    for c in 0..space.classes().len() {
        let y = space.saturate(space.up_closure(space.class_set(c)));
        let minimal = (0..space.size())
            .filter(|&x| y >> x & 1 == 1)
            .filter(|&x| (space.down(x) & y) == 1 << x)
            .count();
        width = width.max(minimal);
    }
    let mut up = 0;
    let mut classes = 0;
    for x in 0..space.size() {
        let u: PointSet = space.up(x);
        up = up.max(u.count_ones() as usize);
        classes = classes.max((0..space.classes().len()).filter(|&c| space.class_set(c) & u != 0).count());
    }
    DualPrediction { width, n_h: (up + 1).max(2), n_he: (classes + 1).max(2) }
}

/// Equational membership in `W_k`, `H_n`, `H_n^∃` for parameters up to
/// `max_parameter` against the dual prediction.
pub fn variety_suite(algebras: &[FiniteMGAlgebra], max_parameter: usize, config: &Config) -> SuiteReport {
    let outcomes = algebras
        .par_iter()
        .map(|a| {
            let dual = dual_space(a).map_err(|e| e.to_string())?;
            let p = dual_prediction(&dual.space);
            for family in [Family::W, Family::H, Family::HExists] {
                let (least, bound) = match family {
                    Family::W => (1, p.width),
                    Family::H => (2, p.n_h),
                    Family::HExists => (2, p.n_he),
                };
                for k in least..=max_parameter {
                    let tag = VarietyTag::new(family, k).map_err(|e| e.to_string())?;
                    let holds = membership(a, tag, config).map_err(|e| e.to_string())?.holds;
                    if holds != (bound <= k) {
                        return Err(format!("{tag}: equation gives {holds}, dual gives {bound} on {}", describe(a)));
                    }
                }
            }
            Ok(())
        })
        .collect();
    SuiteReport::from_outcomes("varieties", outcomes)
}

/// The four conditions on every interior operator of every distributive
/// lattice with at most `max_size` elements.
pub fn interior_suite(max_size: usize) -> SuiteReport {
    let mut report = SuiteReport::new("interior");
    for lattice in distributive_lattices(max_size) {
        for f in interior_operators(&lattice) {
            report.record(match interior_conditions(&lattice, &f) {
                Ok(c) if c.iter().all(|&b| b == c[0]) => Ok(()),
                Ok(c) => Err(format!("conditions {c:?} for {f:?} on {:?}", lattice.cover_pairs())),
                Err(e) => Err(e.to_string()),
            });
        }
    }
    report
}

/// The Glivenko construction on every corpus algebra in `W_1`.
pub fn glivenko_suite(algebras: &[FiniteMGAlgebra], config: &Config) -> SuiteReport {
    let w1 = VarietyTag::new(Family::W, 1).expect("valid");
    let outcomes = algebras
        .par_iter()
        .filter(|a| membership(a, w1, config).is_ok_and(|m| m.holds))
        .map(|a| {
            let r = glivenko(a).map_err(|e| format!("{e} on {}", describe(a)))?;
            let he2 = VarietyTag::new(Family::HExists, 2).expect("valid");
            let in_he2 = membership(&r.quotient, he2, config).map_err(|e| e.to_string())?.holds;
            match (r.g.surjective(), in_he2, r.semisimple) {
                (true, true, true) => Ok(()),
                other => Err(format!("(surjective, in HE_2, semisimple) = {other:?} on {}", describe(a))),
            }
        })
        .collect();
    SuiteReport::from_outcomes("glivenko", outcomes)
}

/// The discriminator on every simple corpus algebra, and its failure on
/// `C_(1,0,0)`.
pub fn discriminator_suite(algebras: &[FiniteMGAlgebra]) -> SuiteReport {
    let mut report = SuiteReport::new("discriminator");
    for a in algebras.iter().filter(|a| a.classify().simple) {
        report.record(match discriminator_failure(a) {
            None => Ok(()),
            Some(t) => Err(format!("fails at {t:?} on {}", describe(a))),
        });
    }
    let witness = build_chain(&ChainCoordinates::from_list(&[1, 0, 0]).expect("valid"));
    report.record(match discriminator_failure(&witness) {
        Some(_) => Ok(()),
        None => Err("the discriminator holds on C_(1,0,0)".into()),
    });
    report
}

/// `S` closed and `h` onto `C_coords` for every coordinates with `m ≤ max_m`.
pub fn characteristic_suite(max_m: usize) -> SuiteReport {
    let outcomes = (0..=max_m)
        .flat_map(coordinates_with_m)
        .map(|c| char_chain_embedding(&c).map(|_| ()).map_err(|e| format!("{c}: {e}")))
        .collect();
    SuiteReport::from_outcomes("characteristic", outcomes)
}

/// Ten distinct exact vectors for `k = 10`, `T = 12`.
pub fn witness_suite() -> SuiteReport {
    let mut report = SuiteReport::new("witness");
    report.record(match non_local_finite_witness::<num_rational::Rational64>(10, 12) {
        Ok(v) if v.len() == 10 => Ok(()),
        Ok(v) => Err(format!("{} vectors", v.len())),
        Err(e) => Err(e.to_string()),
    });
    report
}

/// Count checks for `n = 1, 2` and the 72-element algebra for `n = 1`.
pub fn free_suite(config: &Config) -> SuiteReport {
    let mut report = SuiteReport::new("free");
    for (n, nodes, points) in [(1, 7, 9), (2, 71, 101)] {
        report.record((|| {
            let p = FreePresentation::build(n, config).map_err(|e| e.to_string())?;
            let counts = count_checks(&p.exists_pi, config).map_err(|e| e.to_string())?;
            if counts.exists_pi != nodes || counts.pi != points || !counts.all_pass {
                return Err(format!("n = {n}: {counts:?}"));
            }
            Ok(())
        })());
    }
    report.record(match free_algebra(1, config, 1 << 12) {
        Ok(f) if f.algebra.algebra.size() == 72 => Ok(()),
        Ok(f) => Err(format!("F(1) has {} elements", f.algebra.algebra.size())),
        Err(e) => Err(e.to_string()),
    });
    report
}

/// Every suite at the given corpus size. Space sampling goes to 10 points,
/// interior operators to lattices of 5 elements, chains to `m ≤ 5`.
pub fn run_paper_suite(max_size: usize, config: &Config) -> Result<VerifyReport, String> {
    let algebras = corpus(max_size, config)?;
    let suites = vec![
        identity_suite(5, &algebras, config),
        width_suite(&algebras, config),
        duality_suite(&algebras, config),
        space_suite(&algebras, 10, config),
        congruence_suite(&algebras),
        variety_suite(&algebras, 4, config),
        interior_suite(5),
        glivenko_suite(&algebras, config),
        discriminator_suite(&algebras),
        characteristic_suite(4),
        witness_suite(),
        free_suite(config),
    ];
    let passed = suites.iter().all(SuiteReport::passed);
    Ok(VerifyReport { suite: "paper".into(), max_size, suites, passed })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn congruences_of_small_chains() {
        let c = |l: &[usize]| build_chain(&ChainCoordinates::from_list(l).unwrap());
        // Monadic congruences correspond to filters of the image chain.
        assert_eq!(count_congruences(&c(&[0, 0])), 2);
        assert_eq!(count_congruences(&c(&[1, 1])), 2);
        assert_eq!(count_congruences(&c(&[1, 0, 0])), 3);
    }

    #[test]
    fn small_suite_passes() {
        let config = Config::default();
        let algebras = corpus(4, &config).unwrap();
        for r in [
            identity_suite(2, &algebras, &config),
            width_suite(&algebras, &config),
            duality_suite(&algebras, &config),
            space_suite(&algebras, 5, &config),
            congruence_suite(&algebras),
            variety_suite(&algebras, 3, &config),
            glivenko_suite(&algebras, &config),
            discriminator_suite(&algebras),
        ] {
            assert!(r.passed(), "{r:?}");
        }
    }
}
