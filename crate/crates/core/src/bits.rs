//! Fixed-universe bitsets used for point sets, open sets and order rows.

use std::cmp::Ordering;
use std::fmt;

use fixedbitset::FixedBitSet;

/// A subset of `0..universe`.
///
/// Ordering is canonical: first by cardinality, then lexicographically by the
/// sorted member list. Families of sets sorted this way list `∅` first and the
/// full set last.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PointSet(FixedBitSet);

impl PointSet {
    pub fn empty(universe: usize) -> Self {
        PointSet(FixedBitSet::with_capacity(universe))
    }

    pub fn full(universe: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(universe);
        bits.insert_range(..);
        PointSet(bits)
    }

    pub fn singleton(universe: usize, x: usize) -> Self {
        let mut s = PointSet::empty(universe);
        s.insert(x);
        s
    }

    pub fn from_iter(universe: usize, items: impl IntoIterator<Item = usize>) -> Self {
        let mut s = PointSet::empty(universe);
        for x in items {
            s.insert(x);
        }
        s
    }

    pub fn universe(&self) -> usize {
        self.0.len()
    }

    pub fn len(&self) -> usize {
        self.0.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_clear()
    }

    pub fn is_full(&self) -> bool {
        self.0.is_full()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.0.contains(x)
    }

    pub fn insert(&mut self, x: usize) {
        self.0.insert(x);
    }

    pub fn remove(&mut self, x: usize) {
        self.0.set(x, false);
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.ones()
    }

    pub fn first(&self) -> Option<usize> {
        self.0.minimum()
    }

    pub fn is_subset(&self, other: &PointSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn is_disjoint(&self, other: &PointSet) -> bool {
        self.0.is_disjoint(&other.0)
    }

    pub fn intersects(&self, other: &PointSet) -> bool {
        !self.0.is_disjoint(&other.0)
    }

    pub fn union_with(&mut self, other: &PointSet) {
        self.0.union_with(&other.0);
    }

    pub fn intersect_with(&mut self, other: &PointSet) {
        self.0.intersect_with(&other.0);
    }

    pub fn difference_with(&mut self, other: &PointSet) {
        self.0.difference_with(&other.0);
    }

    pub fn union(&self, other: &PointSet) -> PointSet {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    pub fn intersection(&self, other: &PointSet) -> PointSet {
        let mut s = self.clone();
        s.intersect_with(other);
        s
    }

    pub fn difference(&self, other: &PointSet) -> PointSet {
        let mut s = self.clone();
        s.difference_with(other);
        s
    }

    pub fn complement(&self) -> PointSet {
        let mut s = self.clone();
        s.0.toggle_range(..);
        s
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Member labels, in index order.
    pub fn labels(&self, names: &[String]) -> Vec<String> {
        self.iter().map(|i| names[i].clone()).collect()
    }

    /// `{a,b,c}` rendering used as an element label for open sets.
    pub fn braced(&self, names: &[String]) -> String {
        format!("{{{}}}", self.labels(names).join(","))
    }
}

impl Ord for PointSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.iter().cmp(other.iter()))
            .then_with(|| self.universe().cmp(&other.universe()))
    }
}

impl PartialOrd for PointSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Iterates over all subsets of `0..n` of size `k` in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut current: Option<Vec<usize>> = if k <= n { Some((0..k).collect()) } else { None };
    std::iter::from_fn(move || {
        let out = current.clone()?;
        let mut next = out.clone();
        let mut i = k;
        loop {
            if i == 0 {
                current = None;
                break;
            }
            i -= 1;
            if next[i] < n - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                current = Some(next);
                break;
            }
        }
        Some(out)
    })
}

/// All subsets of `0..n`, by increasing size then lexicographically.
pub(crate) fn subsets_by_size(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..=n).flat_map(move |k| combinations(n, k))
}
