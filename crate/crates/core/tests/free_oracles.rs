use std::collections::BTreeSet;

use mg_core::chains::{build_chain, coordinates_with_m, ChainCoordinates};
use mg_core::construct::{
    generate_subalgebra, ordinal_sum, product, quotient_by_filter, MonadicFilter, OrdinalSumLayout,
};
use mg_core::duality::algebra_from_space;
use mg_core::free::{
    check_segments, components, count_checks, free_algebra, generates_space, lambda, required_values, restrict,
    surjections, FreePresentation,
};
use mg_core::{find_isomorphism, find_isomorphism_with, Config, FiniteMGAlgebra};

fn assignments(k: usize, n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..k.pow(n as u32)).map(move |code| (0..n).map(|j| code / k.pow(j as u32) % k).collect())
}

#[test]
fn lambda_matches_closure_over_all_coordinates() {
    for (n, expected) in [(0, 1), (1, 7), (2, 71)] {
        let mut found = BTreeSet::new();
        for m in 0..=3 * n + 1 {
            for c in coordinates_with_m(m) {
                let chain = build_chain(&c);
                for values in assignments(chain.size(), n) {
                    if generate_subalgebra(&chain, &values).len() == chain.size() {
                        found.insert((c.clone(), values));
                    }
                }
            }
        }
        let listed: BTreeSet<_> =
            lambda(n).unwrap().into_iter().map(|f| (f.coords().clone(), f.values().to_vec())).collect();
        assert_eq!(found.len(), expected);
        assert_eq!(found, listed);
    }
}

#[test]
fn image_criterion_matches_closure() {
    for n in 0..=2 {
        for m in 0..=6 {
            for c in coordinates_with_m(m) {
                let chain = build_chain(&c);
                let needed = required_values(&c);
                for values in assignments(chain.size(), n) {
                    let by_criterion = needed.iter().all(|v| values.contains(v));
                    let by_closure = generate_subalgebra(&chain, &values).len() == chain.size();
                    assert_eq!(by_criterion, by_closure, "{c} {values:?}");
                }
            }
        }
    }
}

#[test]
fn surjections_by_brute_force() {
    for n in 0..=6 {
        for k in 0..=7 {
            let brute = if k == 0 {
                u64::from(n == 0)
            } else {
                assignments(k, n).filter(|v| v.iter().collect::<BTreeSet<_>>().len() == k).count() as u64
            };
            assert_eq!(surjections(n, k), brute, "S({n},{k})");
        }
    }
}

#[test]
fn principal_quotients_are_the_node_chains() {
    let config = Config::default();
    let free = free_algebra(1, &config, 1 << 12).unwrap();
    let a = &free.algebra.algebra;
    for (i, f) in free.presentation.exists_pi.nodes.iter().enumerate() {
        let filter = MonadicFilter::principal(a, free.node_element(i)).unwrap();
        let (q, h) = quotient_by_filter(a, &filter).unwrap();
        let chain = build_chain(f.coords());
        let g = h.apply(free.generators[0]);
        assert!(find_isomorphism_with(&q, &chain, &[(g, f.values()[0])]).is_some(), "{f}");
    }
}

/// `F(1) ≅ A1 × A2` with `A2 = 2 ⊕ A1`: the largest component of `Π(1)` is
/// the dual of `A2`, the rest is the dual of `A1`.
#[test]
fn one_generator_factors() {
    let config = Config::default();
    let p = FreePresentation::build(1, &config).unwrap();
    let mut parts = components(&p.pi);
    parts.sort_by_key(|c| c.len());
    let sizes: Vec<usize> = parts.iter().map(Vec::len).collect();
    assert_eq!(sizes, vec![1, 3, 5]);
    let big = parts.pop().unwrap();
    let rest: Vec<usize> = parts.concat();
    let algebra = |points: &[usize]| -> FiniteMGAlgebra {
        algebra_from_space(&restrict(&p.pi, points).unwrap(), 20, 1 << 12).unwrap().algebra
    };
    let (a1, a2) = (algebra(&rest), algebra(&big));
    assert_eq!((a1.size(), a2.size()), (8, 9));

    let two = build_chain(&ChainCoordinates::from_list(&[0, 0]).unwrap());
    let layout = OrdinalSumLayout::new(&two, &a1);
    let mut image = vec![two.bottom()];
    image.extend(a1.image().iter().map(|&c| layout.right(c)));
    let (sum, _) = ordinal_sum(&two, &a1, &image).unwrap();
    assert!(find_isomorphism(&sum, &a2).is_some());

    let (prod, _) = product(&[a1, a2]).unwrap();
    let free = free_algebra(1, &config, 1 << 12).unwrap();
    assert!(find_isomorphism(&prod, &free.algebra.algebra).is_some());
}

#[test]
fn two_generators() {
    let cfg = Config::default();
    let p = FreePresentation::build(2, &cfg).unwrap();
    assert_eq!(p.exists_pi.len(), 71);
    assert_eq!(p.pi.size(), 101);
    assert_eq!(p.exists_pi.minimal().len(), 11);
    let g = generates_space(&p.pi.space, &p.generators, 1 << 20);
    assert!(g.separated);
    let r = count_checks(&p.exists_pi, &cfg).unwrap();
    assert!(r.all_pass, "{r:?}");
    assert_eq!(r.simple_product_size, 62208);
    assert_eq!(check_segments(&p.exists_pi).unwrap(), 25);
}
