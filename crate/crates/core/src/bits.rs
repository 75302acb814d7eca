//! Fixed-universe index sets.
//!
//! [`IndexSet`] is used both for subsets of poset elements and for sets of
//! objects (extents). Sets are ordered canonically by cardinality first and
//! then lexicographically by their sorted members, which is the ordering
//! every family in this crate is reported in.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use fixedbitset::FixedBitSet;

/// A subset of `0..universe`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IndexSet(FixedBitSet);

impl IndexSet {
    pub fn empty(universe: usize) -> Self {
        IndexSet(FixedBitSet::with_capacity(universe))
    }

    pub fn full(universe: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(universe);
        bits.insert_range(..);
        IndexSet(bits)
    }

    pub fn singleton(universe: usize, index: usize) -> Self {
        let mut s = Self::empty(universe);
        s.insert(index);
        s
    }

    /// Panics if an index is outside the universe.
    pub fn from_indices<I: IntoIterator<Item = usize>>(universe: usize, indices: I) -> Self {
        let mut s = Self::empty(universe);
        for i in indices {
            s.insert(i);
        }
        s
    }

    /// The `k`-th subset of `0..universe` in binary counting order.
    pub fn from_mask(universe: usize, mask: u64) -> Self {
        Self::from_indices(universe, (0..universe).filter(|i| mask >> i & 1 == 1))
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

    pub fn contains(&self, index: usize) -> bool {
        self.0.contains(index)
    }

    pub fn insert(&mut self, index: usize) {
        assert!(index < self.universe(), "index {index} outside universe {}", self.universe());
        self.0.insert(index);
    }

    pub fn remove(&mut self, index: usize) {
        self.0.set(index, false);
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.ones()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.0.union_with(&other.0);
        out
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.0.intersect_with(&other.0);
        out
    }

    pub fn difference(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.0.difference_with(&other.0);
        out
    }

    pub fn union_with(&mut self, other: &Self) {
        self.0.union_with(&other.0);
    }

    pub fn intersect_with(&mut self, other: &Self) {
        self.0.intersect_with(&other.0);
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn is_superset(&self, other: &Self) -> bool {
        self.0.is_superset(&other.0)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.0.is_disjoint(&other.0)
    }

    /// Intersection of a family; the empty family yields the full universe.
    pub fn intersect_all<'a, I>(universe: usize, family: I) -> Self
    where
        I: IntoIterator<Item = &'a IndexSet>,
    {
        let mut acc = Self::full(universe);
        for s in family {
            acc.intersect_with(s);
        }
        acc
    }

    /// All subsets of `0..universe`, in binary counting order.
    ///
    /// Only meant for small universes (the caller enforces caps).
    pub fn all_subsets(universe: usize) -> impl Iterator<Item = IndexSet> {
        assert!(universe < 64, "subset enumeration over {universe} elements");
        (0..1u64 << universe).map(move |mask| Self::from_mask(universe, mask))
    }
}

impl Ord for IndexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.iter().cmp(other.iter()))
            .then_with(|| self.universe().cmp(&other.universe()))
    }
}

impl PartialOrd for IndexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
