use std::sync::OnceLock;

use mg_core::chains::{build_chain, char_chain_embedding, coordinates_with_m};
use mg_core::construct::MonadicFilter;
use mg_core::duality::{dual_space, image_congruence_count};
use mg_core::enumerate::enumerate_algebras;
use mg_core::glivenko::{double_negation_identity, special_elements};
use mg_core::terms::{catalog, check_identity};
use mg_core::varieties::{membership, Family, VarietyTag};
use mg_core::{find_isomorphism, Config, FiniteMGAlgebra};

fn corpus() -> &'static [FiniteMGAlgebra] {
    static CORPUS: OnceLock<Vec<FiniteMGAlgebra>> = OnceLock::new();
    CORPUS.get_or_init(|| enumerate_algebras(7, &Config::default()).unwrap())
}

fn holds(a: &FiniteMGAlgebra, family: Family, k: usize) -> bool {
    membership(a, VarietyTag::new(family, k).unwrap(), &Config::default()).unwrap().holds
}

#[test]
fn corpus_sizes() {
    let mut counts = [0usize; 8];
    for a in corpus() {
        counts[a.size()] += 1;
    }
    assert_eq!(counts[2..], [1, 2, 6, 11, 25, 49]);
}

#[test]
fn fsi_iff_image_is_a_chain() {
    for a in corpus() {
        assert_eq!(a.classify().fsi, a.lattice().is_chain(a.image()));
    }
}

#[test]
fn monadic_filters_match_congruences_of_the_image() {
    for a in corpus() {
        // Every filter of a finite lattice is principal.
        let monadic = a.elements().filter(|&x| MonadicFilter::principal(a, x).is_ok()).count();
        assert_eq!(monadic, image_congruence_count(a));
    }
}

#[test]
fn variety_families_are_nested() {
    for a in corpus() {
        for k in 1..4 {
            assert!(!holds(a, Family::W, k) || holds(a, Family::W, k + 1));
        }
        for n in 2..5 {
            assert!(!holds(a, Family::H, n) || holds(a, Family::H, n + 1));
            assert!(!holds(a, Family::HExists, n) || holds(a, Family::HExists, n + 1));
            assert!(!holds(a, Family::H, n) || holds(a, Family::HExists, n));
        }
        if a.classify().fsi {
            assert_eq!(holds(a, Family::HExists, 2), a.classify().simple);
        }
    }
}

#[test]
fn alpha_one_iff_one_minimal_point_per_class() {
    for a in corpus().iter().filter(|a| a.classify().fsi) {
        let space = dual_space(a).unwrap().space;
        let single = (0..space.classes().len()).all(|c| space.class_minima(c).len() == 1);
        assert_eq!(holds(a, Family::W, 1), single);
    }
}

#[test]
fn boolean_elements_are_regular_and_closed_under_quantifiers() {
    for a in corpus() {
        let s = special_elements(a).unwrap();
        assert_eq!(s.boolean, s.regular);
        for &x in &s.regular {
            assert!(s.regular.contains(&a.exists(x)) && s.regular.contains(&a.forall(x)));
        }
    }
}

#[test]
fn w1_satisfies_double_negation_law() {
    let law = double_negation_identity();
    for a in corpus().iter().filter(|a| holds(a, Family::W, 1)) {
        assert!(check_identity(a, &law).is_none());
    }
}

/// `∃p` is join-irreducible for join-irreducible `p` throughout `W_1`; the
/// Boolean square with the two-element image shows it fails outside.
#[test]
fn exists_of_a_prime_is_prime_in_w1() {
    let mut outside = 0;
    for a in corpus() {
        let primes = a.lattice().join_irreducibles();
        let all = primes.iter().all(|&p| primes.contains(&a.exists(p)));
        if holds(a, Family::W, 1) {
            assert!(all);
        } else if !all {
            outside += 1;
        }
    }
    assert!(outside > 0);
}

#[test]
fn chains_satisfy_m1_to_m6() {
    let laws: Vec<_> = ["M1", "M2", "M3", "M4", "M5", "M6"].iter().map(|n| catalog(n, None).unwrap()).collect();
    for m in 0..=5 {
        for c in coordinates_with_m(m) {
            let chain = build_chain(&c);
            for law in &laws {
                assert!(check_identity(&chain, law).is_none(), "{} on {c}", law.name);
            }
        }
    }
}

#[test]
fn distinct_coordinates_give_distinct_chains() {
    for m in 0..=4 {
        let chains: Vec<_> = coordinates_with_m(m).into_iter().map(|c| build_chain(&c)).collect();
        for i in 0..chains.len() {
            for j in i + 1..chains.len() {
                assert!(find_isomorphism(&chains[i], &chains[j]).is_none());
            }
        }
    }
}

#[test]
fn characteristic_subuniverse_size() {
    for m in 0..=4 {
        for c in coordinates_with_m(m) {
            let e = char_chain_embedding(&c).unwrap();
            let expected: usize = c.parts().iter().map(|p| p + 1).sum::<usize>() + 2;
            assert_eq!(e.points.len(), expected, "{c}");
        }
    }
}
