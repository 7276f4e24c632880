//! One line per acceptance criterion. Runs without the test harness so the
//! lines are always printed; exits non-zero if any criterion fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_rational::Rational64;

use mg_core::chains::{build_chain, coordinates_with_m};
use mg_core::construct::generate_subalgebra;
use mg_core::free::{
    build_exists_pi, enumerate_im, free_algebra, lambda, simple_function_count, surjections, FreePresentation,
};
use mg_core::verify::{
    characteristic_suite, congruence_suite, corpus, discriminator_suite, duality_suite, glivenko_suite,
    identity_suite, interior_suite, space_suite, variety_suite, width_suite, SuiteReport,
};
use mg_core::{build_algebra, find_isomorphism_with, non_local_finite_witness, Config, FiniteMGAlgebra};

type Outcome = Result<String, String>;
type Check<'a> = Box<dyn Fn() -> Outcome + 'a>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, format!("took {t:?}, limit {limit:?}"))
}

fn suites(reports: &[SuiteReport]) -> Outcome {
    for r in reports {
        ensure(r.checked > 0, format!("{}: nothing checked", r.name))?;
        ensure(r.passed(), format!("{}: {} of {} failed, first {:?}", r.name, r.failed, r.checked, r.failures.first()))?;
    }
    Ok(reports.iter().map(|r| format!("{} {}", r.name, r.checked)).collect::<Vec<_>>().join(", "))
}

/// Labeled functions counted by closure alone, over every coordinates with
/// `m ≤ max_m`.
fn brute_force_lambda(n: usize, max_m: usize) -> usize {
    let mut count = 0;
    for m in 0..=max_m {
        for c in coordinates_with_m(m) {
            let chain = build_chain(&c);
            let k = chain.size();
            for code in 0..k.pow(n as u32) {
                let values: Vec<usize> = (0..n).map(|j| code / k.pow(j as u32) % k).collect();
                if generate_subalgebra(&chain, &values).len() == k {
                    count += 1;
                }
            }
        }
    }
    count
}

fn brute_force_surjections(n: usize, k: usize) -> u64 {
    if k == 0 {
        return u64::from(n == 0);
    }
    (0..k.pow(n as u32))
        .filter(|&code| {
            let hit: BTreeSet<usize> = (0..n).map(|j| code / k.pow(j as u32) % k).collect();
            hit.len() == k
        })
        .count() as u64
}

fn criterion_1(config: &Config) -> Outcome {
    let start = Instant::now();
    let expected: BTreeSet<&str> =
        ["(0,0;a0)", "(0,0;a1)", "(1,1;a1)", "(1,0,0;a1)", "(2,1,0;a1)", "(2,0,1;a2)", "(3,0,1,0;a2)"].into();
    let got: BTreeSet<String> = lambda(1).map_err(|e| e.to_string())?.iter().map(|f| f.to_string()).collect();
    ensure(got.iter().map(String::as_str).collect::<BTreeSet<_>>() == expected, format!("Λ(1) = {got:?}"))?;
    let one = build_exists_pi(1, config).map_err(|e| e.to_string())?;
    ensure(one.len() == 7, format!("|∃Π(1)| = {}", one.len()))?;
    let two = FreePresentation::build(2, config).map_err(|e| e.to_string())?;
    ensure(two.exists_pi.len() == 71, format!("|∃Π(2)| = {}", two.exists_pi.len()))?;
    ensure(two.pi.size() == 101, format!("|Π(2)| = {}", two.pi.size()))?;
    let oracle = brute_force_lambda(2, 7);
    ensure(oracle == 71, format!("closure count over m ≤ 7 gives {oracle}"))?;
    within(start, Duration::from_secs(60))?;
    Ok(format!("|∃Π(1)|=7, |∃Π(2)|=71 (closure oracle {oracle}), |Π(2)|=101 in {:?}", start.elapsed()))
}

fn criterion_2(config: &Config) -> Outcome {
    let mut parts = Vec::new();
    for (n, total) in [(1, 3), (2, 11)] {
        let pi = build_exists_pi(n, config).map_err(|e| e.to_string())?;
        let minimal = pi.minimal();
        ensure(minimal.len() == total, format!("|min Λ({n})| = {}", minimal.len()))?;
        let mut by_m = Vec::new();
        for m in 0..=n {
            let count = minimal.iter().filter(|&&i| pi.nodes[i].m() == m).count() as u64;
            let oracle = brute_force_surjections(n, m) + 2 * brute_force_surjections(n, m + 1) + brute_force_surjections(n, m + 2);
            ensure(count == oracle && oracle == simple_function_count(n, m), format!("n={n} m={m}: {count} vs {oracle}"))?;
            ensure(surjections(n, m) == brute_force_surjections(n, m), format!("S({n},{m})"))?;
            by_m.push(count.to_string());
        }
        parts.push(format!("|min Λ({n})|={total}={}", by_m.join("+")));
    }
    Ok(parts.join(", "))
}

fn criterion_3() -> Outcome {
    let paper: [&[&[usize]]; 4] = [&[&[0]], &[&[1], &[0, 0]], &[&[1, 0], &[0, 1]], &[&[0, 1, 0]]];
    for (m, lists) in paper.iter().enumerate() {
        let got: BTreeSet<Vec<usize>> = enumerate_im(1, m).map_err(|e| e.to_string())?.into_iter().collect();
        let want: BTreeSet<Vec<usize>> = lists.iter().map(|l| l.to_vec()).collect();
        ensure(got == want, format!("I_{m}(1) = {got:?}"))?;
    }
    Ok("I_0(1)..I_3(1) match".into())
}

/// Closure of the diagonal generator in `∏_{f ∈ Λ(1)} C_coords(f)`, built
/// here from the factor tables alone.
fn product_closure() -> Result<(FiniteMGAlgebra, usize), String> {
    let nodes = lambda(1).map_err(|e| e.to_string())?;
    let factors: Vec<FiniteMGAlgebra> = nodes.iter().map(|f| build_chain(f.coords())).collect();
    let gen: Vec<usize> = nodes.iter().map(|f| f.values()[0]).collect();
    let bottom: Vec<usize> = factors.iter().map(|f| f.bottom()).collect();
    let top: Vec<usize> = factors.iter().map(|f| f.top()).collect();
    let mut set: BTreeSet<Vec<usize>> = [bottom, top, gen.clone()].into();
    loop {
        let items: Vec<Vec<usize>> = set.iter().cloned().collect();
        let before = set.len();
        for x in &items {
            set.insert(factors.iter().enumerate().map(|(i, f)| f.exists(x[i])).collect());
            set.insert(factors.iter().enumerate().map(|(i, f)| f.forall(x[i])).collect());
            for y in &items {
                set.insert(factors.iter().enumerate().map(|(i, f)| f.meet(x[i], y[i])).collect());
                set.insert(factors.iter().enumerate().map(|(i, f)| f.join(x[i], y[i])).collect());
                set.insert(factors.iter().enumerate().map(|(i, f)| f.imp(x[i], y[i])).collect());
            }
        }
        if set.len() == before {
            break;
        }
    }
    let items: Vec<Vec<usize>> = set.into_iter().collect();
    let leq = |x: &[usize], y: &[usize]| factors.iter().enumerate().all(|(i, f)| f.leq(x[i], y[i]));
    let mut pairs = Vec::new();
    for (a, x) in items.iter().enumerate() {
        for (b, y) in items.iter().enumerate() {
            if leq(x, y) {
                pairs.push((a, b));
            }
        }
    }
    let image: Vec<usize> = (0..items.len())
        .filter(|&a| items[a].iter().enumerate().all(|(i, &v)| factors[i].exists(v) == v))
        .collect();
    let algebra = build_algebra(items.len(), &pairs, &image).map_err(|e| e.to_string())?;
    let g = items.iter().position(|x| *x == gen).expect("generator is in its closure");
    Ok((algebra, g))
}

fn criterion_4(config: &Config) -> Outcome {
    let start = Instant::now();
    let (product, g) = product_closure()?;
    ensure(product.size() == 72, format!("closure has {} elements", product.size()))?;
    let free = free_algebra(1, config, 1 << 12).map_err(|e| e.to_string())?;
    let f = &free.algebra.algebra;
    ensure(f.size() == 72, format!("F(1) has {} elements", f.size()))?;
    find_isomorphism_with(&product, f, &[(g, free.generators[0])])
        .ok_or("no isomorphism sending the diagonal to the generator")?;
    within(start, Duration::from_secs(60))?;
    Ok(format!("72 elements, isomorphism pins diagonal to generator, {:?}", start.elapsed()))
}

fn criterion_14() -> Outcome {
    let v = non_local_finite_witness::<Rational64>(10, 12).map_err(|e| e.to_string())?;
    ensure(v.len() == 10, format!("{} vectors", v.len()))?;
    for (i, row) in v.iter().enumerate() {
        let k = i as i64 + 1;
        for (j, x) in row.iter().enumerate() {
            let n = j as i64 + 1;
            let closed = if n < k { Rational64::from_integer(1) } else { Rational64::new(n - 1, n) };
            ensure(*x == closed, format!("a_{k}({n}) = {x}, closed form {closed}"))?;
        }
    }
    let distinct: BTreeSet<&Vec<Rational64>> = v.iter().collect();
    ensure(distinct.len() == 10, "vectors repeat")?;
    Ok("10 distinct vectors over 12 coordinates equal the closed form".into())
}

fn main() -> ExitCode {
    let config = Config::default();
    let six = corpus(6, &config).expect("corpus of size 6");
    let seven = corpus(7, &config).expect("corpus of size 7");
    let timed = |limit: Duration, f: &dyn Fn() -> Outcome| -> Outcome {
        let start = Instant::now();
        let r = f()?;
        within(start, limit)?;
        Ok(format!("{r} in {:?}", start.elapsed()))
    };
    let criteria: Vec<(&str, Check)> = vec![
        ("free-algebra counts", Box::new(|| criterion_1(&config))),
        ("minimal nodes and surjection formula", Box::new(|| criterion_2(&config))),
        ("I_m(1) lists", Box::new(criterion_3)),
        ("freeness oracle n=1", Box::new(|| criterion_4(&config))),
        ("identity suite", Box::new(|| suites(&[identity_suite(5, &six, &config)]))),
        (
            "width equivalence, size <= 7",
            Box::new(|| timed(Duration::from_secs(600), &|| suites(&[width_suite(&seven, &config)]))),
        ),
        (
            "duality round trips",
            Box::new(|| suites(&[duality_suite(&seven, &config), space_suite(&seven, 10, &config)])),
        ),
        ("congruence counts", Box::new(|| suites(&[congruence_suite(&seven)]))),
        ("variety membership vs dual counts", Box::new(|| suites(&[variety_suite(&seven, 4, &config)]))),
        ("interior operator conditions", Box::new(|| suites(&[interior_suite(5)]))),
        ("Glivenko", Box::new(|| suites(&[glivenko_suite(&seven, &config)]))),
        ("discriminator", Box::new(|| suites(&[discriminator_suite(&six)]))),
        ("characteristic chain", Box::new(|| suites(&[characteristic_suite(4)]))),
        ("non-local-finiteness witness", Box::new(criterion_14)),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
