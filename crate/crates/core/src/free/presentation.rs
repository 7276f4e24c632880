//! The poset `∃Π(n)`, its expansion to `⟨Π(n), E⟩`, the generator down-sets
//! and the free algebra itself.

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;

use super::labeled::{covers, lambda, LabeledFunction};
use super::FreeError;
use crate::chains::{build_chain, ChainCoordinates};
use crate::config::Config;
use crate::construct::generate_subalgebra;
use crate::duality::{algebra_from_space, space_from_prime_order, MGSpace, PointSet, SpaceAlgebra, MAX_POINTS};
use crate::lattice::Elem;

/// `Λ(n)` ordered as `∃Π(n)` (the order of join-irreducibles in the
/// algebra, so minimal nodes are roots and the forest grows upward).
#[derive(Clone, Debug)]
pub struct ExistsPi {
    pub n: usize,
    pub nodes: Vec<LabeledFunction>,
    leq: Vec<bool>,
    lower_cover: Vec<Option<usize>>,
    upper_covers: Vec<Vec<usize>>,
}

impl ExistsPi {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i * self.len() + j]
    }

    pub fn lower_cover(&self, i: usize) -> Option<usize> {
        self.lower_cover[i]
    }

    pub fn upper_covers(&self, i: usize) -> &[usize] {
        &self.upper_covers[i]
    }

    pub fn minimal(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.lower_cover[i].is_none()).collect()
    }

    pub fn maximal(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.upper_covers[i].is_empty()).collect()
    }

    pub fn index_of(&self, f: &LabeledFunction) -> Option<usize> {
        self.nodes.binary_search(f).ok()
    }

    /// `[i)` in the node order.
    pub fn up_set(&self, i: usize) -> Vec<usize> {
        (0..self.len()).filter(|&j| self.leq(i, j)).collect()
    }

    /// Covering pairs `(lower, upper)`.
    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.len()).filter_map(|j| self.lower_cover[j].map(|i| (i, j))).collect()
    }
}

fn check_generators(n: usize, config: &Config) -> Result<(), FreeError> {
    let cap = config.max_generators();
    if n > cap {
        return Err(FreeError::BoundExceeded { n, cap });
    }
    Ok(())
}

/// Builds `Λ(n)` with the covering relation and checks the forest shape,
/// the description of minimal nodes, and the maximality criterion.
pub fn build_exists_pi(n: usize, config: &Config) -> Result<ExistsPi, FreeError> {
    check_generators(n, config)?;
    let nodes = lambda(n)?;
    let k = nodes.len();
    let lower: Vec<Vec<usize>> = (0..k)
        .into_par_iter()
        .map(|j| (0..k).filter(|&i| covers(&nodes[i], &nodes[j])).collect())
        .collect();
    let mut lower_cover = vec![None; k];
    let mut upper_covers = vec![Vec::new(); k];
    for (j, below) in lower.iter().enumerate() {
        match below.as_slice() {
            [] => {}
            [i] => {
                lower_cover[j] = Some(*i);
                upper_covers[*i].push(j);
            }
            _ => {
                return Err(FreeError::MalformedForest(format!("{} covers {} nodes", nodes[j], below.len())));
            }
        }
    }
    // Each node's ancestors are its chain of lower covers.
    let mut leq = vec![false; k * k];
    for j in 0..k {
        let mut cur = Some(j);
        while let Some(i) = cur {
            leq[i * k + j] = true;
            cur = lower_cover[i];
        }
    }
    let exists_pi = ExistsPi { n, nodes, leq, lower_cover, upper_covers };
    for i in 0..k {
        let f = &exists_pi.nodes[i];
        let is_min = exists_pi.lower_cover[i].is_none();
        let simple_shape = f.coords().is_simple() && f.m() <= n;
        if is_min != simple_shape {
            return Err(FreeError::Inconsistent(format!("{f}: minimal is {is_min}, coordinates say {simple_shape}")));
        }
        let is_max = exists_pi.upper_covers[i].is_empty();
        let criterion = f.misses_top_under_exists(&build_chain(f.coords()));
        if is_max != criterion {
            return Err(FreeError::Inconsistent(format!("{f}: maximal is {is_max}, criterion says {criterion}")));
        }
    }
    Ok(exists_pi)
}

/// `⟨Π(n), E⟩`. Points are numbered node by node: the inserted non-∃
/// points from bottom to top, then the node itself.
#[derive(Clone, Debug)]
pub struct Pi {
    /// The space in the filter order.
    pub space: MGSpace,
    /// Point of each node.
    pub node_point: Vec<usize>,
    /// Node whose class contains each point.
    pub point_node: Vec<usize>,
    prime_leq: Vec<bool>,
}

impl Pi {
    pub fn size(&self) -> usize {
        self.point_node.len()
    }

    /// Order of join-irreducibles in the algebra.
    pub fn prime_leq(&self, x: usize, y: usize) -> bool {
        self.prime_leq[x * self.size() + y]
    }

    /// `(x]_Π`, ascending.
    pub fn chain_below(&self, x: usize) -> Vec<usize> {
        let mut below: Vec<usize> = (0..self.size()).filter(|&y| self.prime_leq(y, x)).collect();
        below.sort_by_key(|&y| (0..self.size()).filter(|&z| self.prime_leq(z, y)).count());
        below
    }

    /// Whether `x` is a node of `∃Π(n)` rather than an inserted point.
    pub fn is_exists_point(&self, x: usize) -> bool {
        self.node_point[self.point_node[x]] == x
    }

    /// Cover pairs `(x, y)` with `x < y` in the algebra order.
    pub fn prime_cover_pairs(&self) -> Vec<(usize, usize)> {
        self.space.cover_pairs().into_iter().map(|(a, b)| (b, a)).collect()
    }
}

/// Inserts the non-∃ points of every node: `m_r` of them between a node
/// with coordinates `(m, m0, …, mr)` and its lower cover, or `m` below a
/// minimal node `(m, m)`. The coordinates of every node are then read back
/// from the expanded poset and compared.
pub fn expand_to_pi(exists_pi: &ExistsPi, scan_cap: usize) -> Result<Pi, FreeError> {
    let mut node_point = Vec::with_capacity(exists_pi.len());
    let mut point_node = Vec::new();
    let mut inserted: Vec<Vec<usize>> = Vec::with_capacity(exists_pi.len());
    for (i, f) in exists_pi.nodes.iter().enumerate() {
        let count = *f.coords().parts().last().expect("coordinates have a part");
        if exists_pi.lower_cover(i).is_none() && count != f.m() {
            return Err(FreeError::MalformedForest(format!("minimal node {f} is not of the form (m,m)")));
        }
        let start = point_node.len();
        point_node.extend(std::iter::repeat_n(i, count + 1));
        inserted.push((start..start + count).collect());
        node_point.push(start + count);
    }
    let size = point_node.len();
    if size > MAX_POINTS {
        return Err(FreeError::TooManyPoints { size, cap: MAX_POINTS });
    }
    let mut prime_leq = vec![false; size * size];
    for x in 0..size {
        prime_leq[x * size + x] = true;
    }
    let mut pairs = Vec::new();
    for i in 0..exists_pi.len() {
        let mut chain: Vec<usize> = exists_pi.lower_cover(i).map(|l| node_point[l]).into_iter().collect();
        chain.extend(&inserted[i]);
        chain.push(node_point[i]);
        pairs.extend(chain.windows(2).map(|w| (w[0], w[1])));
    }
    for &(a, b) in &pairs {
        prime_leq[a * size + b] = true;
    }
    for k in 0..size {
        for a in 0..size {
            if prime_leq[a * size + k] {
                for b in 0..size {
                    if prime_leq[k * size + b] {
                        prime_leq[a * size + b] = true;
                    }
                }
            }
        }
    }
    let classes: Vec<Vec<usize>> =
        (0..exists_pi.len()).map(|i| inserted[i].iter().copied().chain([node_point[i]]).collect()).collect();
    let space = space_from_prime_order(size, &prime_leq, classes)?;
    space.validate(scan_cap)?;
    let pi = Pi { space, node_point, point_node, prime_leq };
    for (i, f) in exists_pi.nodes.iter().enumerate() {
        let read = read_coordinates(&pi, pi.node_point[i])?;
        if &read != f.coords() {
            return Err(FreeError::Inconsistent(format!("{f} reads back as {read}")));
        }
    }
    Ok(pi)
}

fn read_coordinates(pi: &Pi, x: usize) -> Result<ChainCoordinates, FreeError> {
    let chain = pi.chain_below(x);
    let mut parts = Vec::new();
    let mut gap = 0;
    for &y in &chain {
        if pi.is_exists_point(y) {
            parts.push(gap);
            gap = 0;
        } else {
            gap += 1;
        }
    }
    Ok(ChainCoordinates::new(chain.len() - 1, parts)?)
}

/// Down-set of `Π(n)` for generator `j`: `p_i` (position `i` in the chain
/// below a maximal node `f`) belongs to it iff `f(g_j) = a_l` with `l ≥ i`.
/// Every maximal node above a point must give the same answer.
pub fn generator_sets(exists_pi: &ExistsPi, pi: &Pi) -> Result<Vec<PointSet>, FreeError> {
    let size = pi.size();
    let mut decided: Vec<Vec<Option<bool>>> = vec![vec![None; size]; exists_pi.n];
    for top in exists_pi.maximal() {
        let f = &exists_pi.nodes[top];
        let chain = pi.chain_below(pi.node_point[top]);
        for (j, &value) in f.values().iter().enumerate() {
            for (pos, &x) in chain.iter().enumerate() {
                let member = value > pos;
                match decided[j][x] {
                    None => decided[j][x] = Some(member),
                    Some(prev) if prev != member => {
                        return Err(FreeError::Inconsistent(format!(
                            "generator {j} at point {x}: maximal nodes disagree"
                        )));
                    }
                    Some(_) => {}
                }
            }
        }
    }
    let mut out = Vec::with_capacity(exists_pi.n);
    for row in decided {
        let mut set: PointSet = 0;
        for (x, d) in row.into_iter().enumerate() {
            match d {
                Some(true) => set |= 1 << x,
                Some(false) => {}
                None => return Err(FreeError::Inconsistent(format!("point {x} lies below no maximal node"))),
            }
        }
        if !pi.space.is_increasing(set) {
            return Err(FreeError::Inconsistent("a generator set is not a down-set".into()));
        }
        out.push(set);
    }
    Ok(out)
}

/// `∃Π(n)`, `⟨Π(n), E⟩` and the generators. Algebra elements are down-sets
/// of `Π(n)` (increasing sets of the space) and the operations below work
/// on them directly, so nothing is materialized.
#[derive(Clone, Debug)]
pub struct FreePresentation {
    pub exists_pi: ExistsPi,
    pub pi: Pi,
    pub generators: Vec<PointSet>,
}

impl FreePresentation {
    pub fn build(n: usize, config: &Config) -> Result<Self, FreeError> {
        let exists_pi = build_exists_pi(n, config)?;
        let pi = expand_to_pi(&exists_pi, config.subset_scan_cap)?;
        let generators = generator_sets(&exists_pi, &pi)?;
        Ok(FreePresentation { exists_pi, pi, generators })
    }

    pub fn n(&self) -> usize {
        self.exists_pi.n
    }

    pub fn is_element(&self, set: PointSet) -> bool {
        set & !self.pi.space.all() == 0 && self.pi.space.is_increasing(set)
    }

    pub fn top(&self) -> PointSet {
        self.pi.space.all()
    }

    pub fn meet(&self, a: PointSet, b: PointSet) -> PointSet {
        a & b
    }

    pub fn join(&self, a: PointSet, b: PointSet) -> PointSet {
        a | b
    }

    pub fn imp(&self, a: PointSet, b: PointSet) -> PointSet {
        self.pi.space.implies(a, b)
    }

    pub fn neg(&self, a: PointSet) -> PointSet {
        self.pi.space.implies(a, 0)
    }

    pub fn exists(&self, a: PointSet) -> PointSet {
        self.pi.space.saturate(a)
    }

    pub fn forall(&self, a: PointSet) -> PointSet {
        self.pi.space.interior(a)
    }

    /// The value of `\bar f` on `a` for node `i`: `a_l` with `l` the number
    /// of points of the chain below the node that lie in `a`.
    pub fn evaluate_at_node(&self, i: usize, a: PointSet) -> Elem {
        let chain = self.pi.chain_below(self.pi.node_point[i]);
        chain.iter().take_while(|&&x| a >> x & 1 == 1).count()
    }
}

/// Outcome of [`generates_space`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Generation {
    /// Elements produced before stopping.
    pub produced: usize,
    /// Whether the produced elements separate points, which proves that the
    /// seeds generate the whole algebra of increasing sets.
    pub separated: bool,
}

/// Closes `seeds` under the operations until, for all points `x ≰ y` of the
/// space, some produced set contains `x` but not `y`, or until `cap`
/// elements exist. Such a family generates every `[x)` by meets, hence the
/// whole algebra; lattice operations alone never add separation, so they
/// are applied only to build arguments for implication and the quantifiers.
pub fn generates_space(space: &MGSpace, seeds: &[PointSet], cap: usize) -> Generation {
    let size = space.size();
    // pending[x]: points y with x ≰ y not yet separated from x.
    let mut pending: Vec<PointSet> = (0..size).map(|x| space.all() & !space.up(x)).collect();
    let mut left = pending.iter().filter(|&&p| p != 0).count();
    let mut seen: HashSet<PointSet> = HashSet::new();
    let mut items: Vec<PointSet> = Vec::new();
    let mut record = |s: PointSet, items: &mut Vec<PointSet>, left: &mut usize| {
        if seen.insert(s) {
            items.push(s);
            for x in 0..size {
                if s >> x & 1 == 1 && pending[x] != 0 {
                    pending[x] &= s;
                    if pending[x] == 0 {
                        *left -= 1;
                    }
                }
            }
        }
    };
    for &s in [0, space.all()].iter().chain(seeds) {
        record(s, &mut items, &mut left);
    }
    let mut done = 0;
    'outer: while left > 0 && done < items.len() && items.len() < cap {
        let x = items[done];
        done += 1;
        let mut fresh = vec![space.saturate(x), space.interior(x)];
        for &y in &items[..done] {
            fresh.extend([space.implies(x, y), space.implies(y, x), x & y, x | y]);
        }
        for s in fresh {
            record(s, &mut items, &mut left);
            if left == 0 || items.len() >= cap {
                break 'outer;
            }
        }
    }
    Generation { produced: items.len(), separated: left == 0 }
}

/// The materialized free algebra with its generators.
#[derive(Clone, Debug)]
pub struct FreeAlgebra {
    pub presentation: FreePresentation,
    pub algebra: SpaceAlgebra,
    pub generators: Vec<Elem>,
}

impl FreeAlgebra {
    /// Element for the down-set below node `i`: the principal `↓p_f`.
    pub fn node_element(&self, i: usize) -> Elem {
        let x = self.presentation.pi.node_point[i];
        self.algebra.element_of(self.presentation.pi.space.up(x)).expect("principal sets are elements")
    }
}

/// `F(n)` as the algebra of down-sets of `Π(n)`. Materialization stops
/// once `max_elements` sets have been produced. Generation by the
/// generators is checked by full closure.
pub fn free_algebra(n: usize, config: &Config, max_elements: usize) -> Result<FreeAlgebra, FreeError> {
    let presentation = FreePresentation::build(n, config)?;
    let algebra = algebra_from_space(&presentation.pi.space, config.subset_scan_cap, max_elements)?;
    let generators: Vec<Elem> = presentation
        .generators
        .iter()
        .map(|&s| algebra.element_of(s).expect("generators are down-sets"))
        .collect();
    if generate_subalgebra(&algebra.algebra, &generators).len() != algebra.algebra.size() {
        return Err(FreeError::Inconsistent("the generators do not generate the algebra".into()));
    }
    Ok(FreeAlgebra { presentation, algebra, generators })
}

/// The free algebra as a subalgebra of `∏_{f ∈ Λ(n)} C_coords(f)`.
#[derive(Clone, Debug)]
pub struct ProductFree {
    pub algebra: crate::algebra::FiniteMGAlgebra,
    /// The tuple behind each element.
    pub tuples: Vec<Vec<Elem>>,
    /// Generator `j` is `(f(g_j))_f`.
    pub generators: Vec<Vec<Elem>>,
}

/// Generated subalgebra of the product of the node chains: the free algebra
/// built without duality.
pub fn free_by_product(exists_pi: &ExistsPi) -> Result<ProductFree, FreeError> {
    let factors: Vec<_> = exists_pi.nodes.iter().map(|f| build_chain(f.coords())).collect();
    let generators: Vec<Vec<Elem>> =
        (0..exists_pi.n).map(|j| exists_pi.nodes.iter().map(|f| f.values()[j]).collect()).collect();
    let (algebra, tuples) = crate::construct::generate_in_product(&factors, &generators)?;
    Ok(ProductFree { algebra, tuples, generators })
}

/// For a minimal `f` and each node `h` covering it, maps `[h)` onto `[f_1)`
/// by `u ↦ v` with `v(g) = 0` when `u(g) = a_i`, `i ≤ m`, and
/// `v(g) = a_{i-m-1}` otherwise, and checks that this is an order
/// isomorphism onto an up-set of a minimal node. Returns the number of
/// covers checked.
pub fn check_segments(exists_pi: &ExistsPi) -> Result<usize, FreeError> {
    let mut checked = 0;
    for f in exists_pi.minimal() {
        let m = exists_pi.nodes[f].m();
        for &h in exists_pi.upper_covers(f) {
            let up = exists_pi.up_set(h);
            let mut image = Vec::with_capacity(up.len());
            for &u in &up {
                let node = &exists_pi.nodes[u];
                let parts = node.coords().parts();
                let shifted = ChainCoordinates::new(node.m() - m - 1, parts[1..].to_vec())?;
                let values = node.values().iter().map(|&v| if v <= m { 0 } else { v - m - 1 }).collect();
                let v = LabeledFunction::new(shifted, values)?;
                let index = exists_pi
                    .index_of(&v)
                    .ok_or_else(|| FreeError::Inconsistent(format!("{v} is not a node")))?;
                image.push(index);
            }
            let root = image[0];
            if exists_pi.lower_cover(root).is_some() {
                return Err(FreeError::Inconsistent(format!("{} is not minimal", exists_pi.nodes[root])));
            }
            let mut target = exists_pi.up_set(root);
            let mut sorted = image.clone();
            sorted.sort_unstable();
            target.sort_unstable();
            if sorted != target {
                return Err(FreeError::Inconsistent("segment map is not onto".into()));
            }
            for (a, &u) in up.iter().enumerate() {
                for (b, &w) in up.iter().enumerate() {
                    if exists_pi.leq(u, w) != exists_pi.leq(image[a], image[b]) {
                        return Err(FreeError::Inconsistent("segment map does not preserve order".into()));
                    }
                }
            }
            checked += 1;
        }
    }
    Ok(checked)
}

/// Connected components of `Π(n)` as point lists.
pub fn components(pi: &Pi) -> Vec<Vec<usize>> {
    let size = pi.size();
    let mut comp = vec![usize::MAX; size];
    let mut out: Vec<Vec<usize>> = Vec::new();
    for start in 0..size {
        if comp[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut stack = vec![start];
        let mut members = Vec::new();
        comp[start] = id;
        while let Some(x) = stack.pop() {
            members.push(x);
            for y in 0..size {
                if comp[y] == usize::MAX && (pi.prime_leq(x, y) || pi.prime_leq(y, x)) {
                    comp[y] = id;
                    stack.push(y);
                }
            }
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}

/// Sub-space of `pi` on `points`, with its own numbering.
pub fn restrict(pi: &Pi, points: &[usize]) -> Result<MGSpace, FreeError> {
    let local: HashMap<usize, usize> = points.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let k = points.len();
    let mut leq = vec![false; k * k];
    for (i, &x) in points.iter().enumerate() {
        for (j, &y) in points.iter().enumerate() {
            leq[i * k + j] = pi.space.leq(x, y);
        }
    }
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for class in pi.space.classes() {
        let inside: Vec<usize> = class.iter().filter_map(|x| local.get(x).copied()).collect();
        if !inside.is_empty() {
            if inside.len() != class.len() {
                return Err(FreeError::Inconsistent("a class straddles two parts".into()));
            }
            classes.push(inside);
        }
    }
    Ok(MGSpace::from_matrix(k, leq, classes)?)
}
