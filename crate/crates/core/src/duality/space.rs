//! MG-spaces, their validation, and the algebra of increasing sets.

use super::DualityError;
use crate::algebra::FiniteMGAlgebra;
use crate::lattice::{Elem, FiniteLattice};

/// A set of points as a bit mask.
pub type PointSet = u128;

/// Largest number of points a [`PointSet`] can hold.
pub const MAX_POINTS: usize = 128;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MGSpace {
    size: usize,
    leq: Vec<bool>,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    up: Vec<PointSet>,
    down: Vec<PointSet>,
}

/// Outcome of a successful validation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Validation {
    /// Whether every increasing set was visited, in addition to the local
    /// criteria.
    pub exhaustive: bool,
    pub increasing_sets: Option<usize>,
}

impl MGSpace {
    /// Builds a space from generating order pairs `a ≤ b` and a partition.
    /// Classes are normalized: each sorted, ordered by least point.
    pub fn new(size: usize, leq: &[(usize, usize)], classes: Vec<Vec<usize>>) -> Result<Self, DualityError> {
        let mut m = vec![false; size * size];
        for i in 0..size {
            m[i * size + i] = true;
        }
        for &(a, b) in leq {
            for index in [a, b] {
                if index >= size {
                    return Err(DualityError::PointOutOfRange { index, size });
                }
            }
            m[a * size + b] = true;
        }
        for k in 0..size {
            for i in 0..size {
                if m[i * size + k] {
                    for j in 0..size {
                        if m[k * size + j] {
                            m[i * size + j] = true;
                        }
                    }
                }
            }
        }
        Self::from_matrix(size, m, classes)
    }

    /// Builds a space from a full reflexive, transitive order matrix.
    pub fn from_matrix(size: usize, leq: Vec<bool>, classes: Vec<Vec<usize>>) -> Result<Self, DualityError> {
        if size > MAX_POINTS {
            return Err(DualityError::TooLarge { size, cap: MAX_POINTS });
        }
        for a in 0..size {
            for b in a + 1..size {
                if leq[a * size + b] && leq[b * size + a] {
                    return Err(DualityError::NotPartialOrder { a, b });
                }
            }
        }
        let mut class_of = vec![usize::MAX; size];
        let mut classes: Vec<Vec<usize>> = classes
            .into_iter()
            .map(|mut c| {
                c.sort_unstable();
                c
            })
            .collect();
        classes.sort();
        for (id, class) in classes.iter().enumerate() {
            if class.is_empty() {
                return Err(DualityError::BadPartition("empty class".into()));
            }
            for &x in class {
                if x >= size {
                    return Err(DualityError::PointOutOfRange { index: x, size });
                }
                if class_of[x] != usize::MAX {
                    return Err(DualityError::BadPartition(format!("point {x} is in two classes")));
                }
                class_of[x] = id;
            }
        }
        if let Some(x) = class_of.iter().position(|&c| c == usize::MAX) {
            return Err(DualityError::BadPartition(format!("point {x} is in no class")));
        }
        let up = (0..size)
            .map(|x| (0..size).filter(|&y| leq[x * size + y]).fold(0, |acc, y| acc | 1 << y))
            .collect();
        let down = (0..size)
            .map(|x| (0..size).filter(|&y| leq[y * size + x]).fold(0, |acc, y| acc | 1 << y))
            .collect();
        Ok(MGSpace { size, leq, classes, class_of, up, down })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.size + b]
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn all(&self) -> PointSet {
        if self.size == MAX_POINTS {
            PointSet::MAX
        } else {
            (1 << self.size) - 1
        }
    }

    /// `[x)`
    pub fn up(&self, x: usize) -> PointSet {
        self.up[x]
    }

    /// `(x]`
    pub fn down(&self, x: usize) -> PointSet {
        self.down[x]
    }

    pub fn class_set(&self, id: usize) -> PointSet {
        self.classes[id].iter().fold(0, |acc, &x| acc | 1 << x)
    }

    pub fn up_closure(&self, set: PointSet) -> PointSet {
        points(set).fold(0, |acc, x| acc | self.up[x])
    }

    pub fn down_closure(&self, set: PointSet) -> PointSet {
        points(set).fold(0, |acc, x| acc | self.down[x])
    }

    pub fn is_increasing(&self, set: PointSet) -> bool {
        self.up_closure(set) == set
    }

    /// `∃U`: union of the classes meeting `U`.
    pub fn saturate(&self, set: PointSet) -> PointSet {
        (0..self.classes.len())
            .map(|c| self.class_set(c))
            .filter(|&c| c & set != 0)
            .fold(0, |acc, c| acc | c)
    }

    /// `∀U`: union of the classes contained in `U`.
    pub fn interior(&self, set: PointSet) -> PointSet {
        (0..self.classes.len())
            .map(|c| self.class_set(c))
            .filter(|&c| c & !set == 0)
            .fold(0, |acc, c| acc | c)
    }

    pub fn is_saturated(&self, set: PointSet) -> bool {
        self.saturate(set) == set
    }

    /// `U → V = X ∖ (U ∖ V]`
    pub fn implies(&self, u: PointSet, v: PointSet) -> PointSet {
        self.all() & !self.down_closure(u & !v)
    }

    /// Minimal points of class `id`.
    pub fn class_minima(&self, id: usize) -> Vec<usize> {
        let class = &self.classes[id];
        class
            .iter()
            .copied()
            .filter(|&x| !class.iter().any(|&y| y != x && self.leq(y, x)))
            .collect()
    }

    /// Increasing sets, sorted by size then mask. Fails once more than
    /// `limit` sets have been produced.
    pub fn increasing_sets(&self, limit: usize) -> Result<Vec<PointSet>, DualityError> {
        // Every point above x must be decided before x.
        let mut order: Vec<usize> = (0..self.size).collect();
        order.sort_by_key(|&x| (self.up[x].count_ones(), x));
        let mut out = Vec::new();
        self.grow(&order, 0, 0, limit, &mut out)?;
        out.sort_by_key(|&s| (s.count_ones(), s));
        Ok(out)
    }

    fn grow(
        &self,
        order: &[usize],
        i: usize,
        set: PointSet,
        limit: usize,
        out: &mut Vec<PointSet>,
    ) -> Result<(), DualityError> {
        if i == order.len() {
            if out.len() == limit {
                return Err(DualityError::TooLarge { size: limit + 1, cap: limit });
            }
            out.push(set);
            return Ok(());
        }
        let x = order[i];
        self.grow(order, i + 1, set, limit, out)?;
        let strictly_above = self.up[x] & !(1 << x);
        if strictly_above & !set == 0 {
            self.grow(order, i + 1, set | 1 << x, limit, out)?;
        }
        Ok(())
    }

    /// Checks the chain condition and the two saturation conditions.
    ///
    /// The saturation conditions are decided by exact local criteria:
    /// `∃U` is increasing for all increasing `U` iff `∃[x)` is increasing
    /// for every point `x`; `∀U` is increasing for all increasing `U` iff for
    /// all `x ≤ y` every point in the class of `y` lies above some point in
    /// the class of `x`. When the space has at most `scan_cap` points every
    /// increasing set is also checked directly and the two verdicts must
    /// agree.
    pub fn validate(&self, scan_cap: usize) -> Result<Validation, DualityError> {
        for x in 0..self.size {
            let above: Vec<usize> = points(self.up[x]).collect();
            for (i, &a) in above.iter().enumerate() {
                if above[i + 1..].iter().any(|&b| !self.leq(a, b) && !self.leq(b, a)) {
                    return Err(DualityError::UpSetNotChain { point: x });
                }
            }
        }
        let local = self.local_saturation_check();
        if self.size > scan_cap {
            return local.map(|()| Validation { exhaustive: false, increasing_sets: None });
        }
        let sets = self.increasing_sets(usize::MAX)?;
        let mut exhaustive = Ok(());
        for &u in &sets {
            if !self.is_increasing(self.saturate(u)) {
                exhaustive = Err(DualityError::SaturationNotIncreasing { set: points(u).collect() });
                break;
            }
            if !self.is_increasing(self.interior(u)) {
                exhaustive = Err(DualityError::InteriorNotIncreasing { set: points(u).collect() });
                break;
            }
        }
        match (&exhaustive, &local) {
            (Ok(()), Ok(())) => Ok(Validation { exhaustive: true, increasing_sets: Some(sets.len()) }),
            (Err(e), Err(_)) => Err(e.clone()),
            _ => panic!("local and exhaustive saturation checks disagree: {exhaustive:?} vs {local:?}"),
        }
    }

    fn local_saturation_check(&self) -> Result<(), DualityError> {
        for x in 0..self.size {
            if !self.is_increasing(self.saturate(self.up[x])) {
                return Err(DualityError::SaturationNotIncreasing { set: points(self.up[x]).collect() });
            }
        }
        for x in 0..self.size {
            let cx = self.class_set(self.class_of[x]);
            let above_cx = self.up_closure(cx);
            for y in points(self.up[x]) {
                let cy = self.class_set(self.class_of[y]);
                if cy & !above_cx != 0 {
                    return Err(DualityError::InteriorNotIncreasing { set: points(above_cx).collect() });
                }
            }
        }
        Ok(())
    }

    /// Covering pairs `(a, b)`, `a` covered by `b`, for serialization.
    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        let mut pairs = Vec::new();
        for a in 0..self.size {
            for b in 0..self.size {
                if a != b
                    && self.leq(a, b)
                    && !(0..self.size).any(|c| c != a && c != b && self.leq(a, c) && self.leq(c, b))
                {
                    pairs.push((a, b));
                }
            }
        }
        pairs
    }
}

/// Iterates over the members of a point set in increasing order.
pub(crate) fn points(set: PointSet) -> impl Iterator<Item = usize> {
    let mut rest = set;
    std::iter::from_fn(move || {
        if rest == 0 {
            None
        } else {
            let x = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(x)
        }
    })
}

/// The algebra of increasing sets together with the set behind each element.
#[derive(Clone, Debug)]
pub struct SpaceAlgebra {
    pub algebra: FiniteMGAlgebra,
    /// `sets[i]` is the increasing set represented by element `i`.
    pub sets: Vec<PointSet>,
}

impl SpaceAlgebra {
    pub fn element_of(&self, set: PointSet) -> Option<Elem> {
        self.sets.binary_search_by_key(&(set.count_ones(), set), |&s| (s.count_ones(), s)).ok()
    }
}

/// Increasing sets ordered by inclusion, with `U → V = X ∖ (U ∖ V]` and the
/// class saturation and class interior as quantifiers.
///
/// The algebra constructor computes implication and quantifiers on its own
/// from the order and the image (the saturated sets); both are compared with
/// the set formulas here.
pub fn algebra_from_space(space: &MGSpace, scan_cap: usize, max_elements: usize) -> Result<SpaceAlgebra, DualityError> {
    space
        .validate(scan_cap)
        .map_err(|e| DualityError::InvalidSpace(e.to_string()))?;
    let sets = space.increasing_sets(max_elements)?;
    let k = sets.len();
    let mut leq = vec![false; k * k];
    for i in 0..k {
        for j in 0..k {
            leq[i * k + j] = sets[i] & !sets[j] == 0;
        }
    }
    let lattice = FiniteLattice::from_matrix(k, leq)?;
    let image: Vec<Elem> = (0..k).filter(|&i| space.is_saturated(sets[i])).collect();
    let algebra = FiniteMGAlgebra::new(lattice, &image)?;
    let result = SpaceAlgebra { algebra, sets };
    let a = &result.algebra;
    let index = |s: PointSet| result.element_of(s).expect("operation results are increasing");
    for u in 0..k {
        let su = result.sets[u];
        if a.exists(u) != index(space.saturate(su)) || a.forall(u) != index(space.interior(su)) {
            return Err(DualityError::InvalidSpace(format!("quantifiers disagree on set {su:#b}")));
        }
        for v in 0..k {
            if a.imp(u, v) != index(space.implies(su, result.sets[v])) {
                return Err(DualityError::InvalidSpace(format!("implication disagrees at ({u}, {v})")));
            }
        }
    }
    Ok(result)
}

/// An order and class preserving bijection from `a` onto `b` whose inverse
/// also preserves both, if one exists.
pub fn find_space_isomorphism(a: &MGSpace, b: &MGSpace) -> Option<Vec<usize>> {
    if a.size() != b.size() || a.classes().len() != b.classes().len() {
        return None;
    }
    let signature = |s: &MGSpace, x: usize| {
        (
            s.down(x).count_ones(),
            s.up(x).count_ones(),
            s.classes()[s.class_of(x)].len(),
        )
    };
    let sa: Vec<_> = (0..a.size()).map(|x| signature(a, x)).collect();
    let sb: Vec<_> = (0..b.size()).map(|x| signature(b, x)).collect();
    let order: Vec<usize> = {
        let mut o: Vec<usize> = (0..a.size()).collect();
        o.sort_by_key(|&x| (sa[x], x));
        o
    };
    let (mut ka, mut kb) = (sa.clone(), sb.clone());
    ka.sort();
    kb.sort();
    if ka != kb {
        return None;
    }
    let mut map = vec![usize::MAX; a.size()];
    let mut used = vec![false; b.size()];
    #[allow(clippy::too_many_arguments)]
    fn search(
        a: &MGSpace,
        b: &MGSpace,
        order: &[usize],
        i: usize,
        sa: &[(u32, u32, usize)],
        sb: &[(u32, u32, usize)],
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if i == order.len() {
            return true;
        }
        let x = order[i];
        for y in 0..b.size() {
            if used[y] || sa[x] != sb[y] {
                continue;
            }
            let ok = order[..i].iter().all(|&x2| {
                let y2 = map[x2];
                a.leq(x, x2) == b.leq(y, y2)
                    && a.leq(x2, x) == b.leq(y2, y)
                    && (a.class_of(x) == a.class_of(x2)) == (b.class_of(y) == b.class_of(y2))
            });
            if !ok {
                continue;
            }
            map[x] = y;
            used[y] = true;
            if search(a, b, order, i + 1, sa, sb, map, used) {
                return true;
            }
            used[y] = false;
        }
        map[x] = usize::MAX;
        false
    }
    search(a, b, &order, 0, &sa, &sb, &mut map, &mut used).then_some(map)
}
