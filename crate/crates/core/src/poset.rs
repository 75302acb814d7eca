//! Explicit finite posets.
//!
//! A [`FinitePoset`] stores the reflexive-transitive closure of its order as
//! dense bitset rows (one up-set and one down-set per element) plus the
//! derived Hasse diagram. Element identifiers are strings; elements are
//! indexed in lexicographic order of their identifiers, so every
//! [`IndexSet`] result iterates in identifier order.

use alloc::borrow::ToOwned;
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::bits::IndexSet;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinitePoset {
    ids: Vec<String>,
    index: BTreeMap<String, usize>,
    /// `up[i]` = { j | i <= j }
    up: Vec<IndexSet>,
    /// `down[i]` = { j | j <= i }
    down: Vec<IndexSet>,
    hasse: Vec<(usize, usize)>,
}

/// Multi-infima (or multi-suprema) of a subset, with the completeness flag
/// `S^l = down(minf(S))` (dually `S^u = up(msup(S))`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiBounds {
    pub members: IndexSet,
    pub complete: bool,
}

/// How much of the subset lattice the multilattice checks covered.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckCoverage {
    /// Every nonempty subset was checked.
    Exhaustive,
    /// Only nonempty subsets up to this size were checked.
    Sampled { max_subset_size: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationReport {
    pub is_chain: bool,
    pub is_antichain_poset: bool,
    pub has_top: bool,
    pub has_bottom: bool,
    pub is_meet_semilattice: bool,
    pub is_join_semilattice: bool,
    pub is_lattice: bool,
    pub is_complete_lattice: bool,
    pub is_benado_multilattice: bool,
    pub is_meet_multisemilattice: bool,
    pub is_join_multisemilattice: bool,
    pub is_multilattice: bool,
    /// The empty set has all its multi-infima, i.e. `P = down(max(P))`.
    pub has_all_maximal: bool,
    /// The empty set has all its multi-suprema, i.e. `P = up(min(P))`.
    pub has_all_minimal: bool,
    pub multilattice_coverage: CheckCoverage,
}

/// Posets up to this size get an exhaustive multilattice check.
pub const DEFAULT_EXHAUSTIVE_LIMIT: usize = 16;

impl FinitePoset {
    /// Builds the poset whose order is the reflexive-transitive closure of
    /// `relation` (pairs `(x, y)` meaning `x <= y`).
    pub fn build<S, T>(elements: &[S], relation: &[(T, T)]) -> Result<Self>
    where
        S: AsRef<str>,
        T: AsRef<str>,
    {
        let mut ids: Vec<String> = elements.iter().map(|e| e.as_ref().to_owned()).collect();
        ids.sort();
        if let Some(w) = ids.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateElement(w[0].clone()));
        }
        let index: BTreeMap<String, usize> =
            ids.iter().enumerate().map(|(i, id)| (id.clone(), i)).collect();
        let lookup = |id: &str| index.get(id).copied().ok_or_else(|| Error::UnknownElement(id.to_owned()));
        let mut pairs = Vec::with_capacity(relation.len());
        for (x, y) in relation {
            pairs.push((lookup(x.as_ref())?, lookup(y.as_ref())?));
        }
        Self::from_index_pairs(ids, index, &pairs)
    }

    /// Builds a poset from identifiers and an order predicate over their
    /// positions in `ids` (which need not be sorted). The predicate is closed
    /// reflexively and transitively.
    pub fn from_relation_fn<F>(ids: Vec<String>, leq: F) -> Result<Self>
    where
        F: Fn(usize, usize) -> bool,
    {
        let n = ids.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| ids[a].cmp(&ids[b]));
        let mut position = alloc::vec![0; n];
        for (new, &old) in order.iter().enumerate() {
            position[old] = new;
        }
        let sorted: Vec<String> = order.iter().map(|&old| ids[old].clone()).collect();
        let mut pairs = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a != b && leq(a, b) {
                    pairs.push((position[a], position[b]));
                }
            }
        }
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateElement(w[0].clone()));
        }
        let index = sorted.iter().enumerate().map(|(i, id)| (id.clone(), i)).collect();
        Self::from_index_pairs(sorted, index, &pairs)
    }

    fn from_index_pairs(
        ids: Vec<String>,
        index: BTreeMap<String, usize>,
        pairs: &[(usize, usize)],
    ) -> Result<Self> {
        let n = ids.len();
        let mut up: Vec<IndexSet> = (0..n).map(|i| IndexSet::singleton(n, i)).collect();
        for &(x, y) in pairs {
            up[x].insert(y);
        }
        // Warshall over bitset rows.
        for k in 0..n {
            let row_k = up[k].clone();
            for row in up.iter_mut() {
                if row.contains(k) {
                    row.union_with(&row_k);
                }
            }
        }
        for i in 0..n {
            for j in up[i].iter().filter(|&j| j > i) {
                if up[j].contains(i) {
                    return Err(Error::CycleDetected { a: ids[i].clone(), b: ids[j].clone() });
                }
            }
        }
        let mut down: Vec<IndexSet> = (0..n).map(|_| IndexSet::empty(n)).collect();
        for (i, row) in up.iter().enumerate() {
            for j in row.iter() {
                down[j].insert(i);
            }
        }
        let mut hasse = Vec::new();
        for i in 0..n {
            let mut strict = up[i].clone();
            strict.remove(i);
            let mut covers = strict.clone();
            for k in strict.iter() {
                let mut above_k = up[k].clone();
                above_k.remove(k);
                covers = covers.difference(&above_k);
            }
            hasse.extend(covers.iter().map(|j| (i, j)));
        }
        Ok(FinitePoset { ids, index, up, down, hasse })
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn id(&self, i: usize) -> &str {
        &self.ids[i]
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn subset<S: AsRef<str>>(&self, ids: &[S]) -> Result<IndexSet> {
        let mut s = self.empty_subset();
        for id in ids {
            let id = id.as_ref();
            s.insert(self.index_of(id).ok_or_else(|| Error::UnknownElement(id.to_owned()))?);
        }
        Ok(s)
    }

    pub fn ids_of<'a>(&'a self, s: &'a IndexSet) -> impl Iterator<Item = &'a str> + 'a {
        s.iter().map(move |i| self.ids[i].as_str())
    }

    /// `{x,y}` with members in identifier order.
    pub fn format_subset(&self, s: &IndexSet) -> String {
        let mut out = String::from("{");
        for (k, id) in self.ids_of(s).enumerate() {
            if k > 0 {
                out.push(',');
            }
            out.push_str(id);
        }
        out.push('}');
        out
    }

    pub fn empty_subset(&self) -> IndexSet {
        IndexSet::empty(self.len())
    }

    pub fn all(&self) -> IndexSet {
        IndexSet::full(self.len())
    }

    /// Covering pairs `(lower, upper)`, sorted.
    pub fn hasse_edges(&self) -> &[(usize, usize)] {
        &self.hasse
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.up[x].contains(y)
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }

    /// `up(x)`, the principal filter of `x`.
    pub fn up_set(&self, x: usize) -> &IndexSet {
        &self.up[x]
    }

    /// `down(x)`, the principal ideal of `x`.
    pub fn down_set(&self, x: usize) -> &IndexSet {
        &self.down[x]
    }

    pub fn down_closure(&self, s: &IndexSet) -> IndexSet {
        let mut out = self.empty_subset();
        for x in s.iter() {
            out.union_with(&self.down[x]);
        }
        out
    }

    pub fn up_closure(&self, s: &IndexSet) -> IndexSet {
        let mut out = self.empty_subset();
        for x in s.iter() {
            out.union_with(&self.up[x]);
        }
        out
    }

    /// `S^l`; the lower bounds of the empty set are the whole poset.
    pub fn lower_bounds(&self, s: &IndexSet) -> IndexSet {
        IndexSet::intersect_all(self.len(), s.iter().map(|x| &self.down[x]))
    }

    /// `S^u`; the upper bounds of the empty set are the whole poset.
    pub fn upper_bounds(&self, s: &IndexSet) -> IndexSet {
        IndexSet::intersect_all(self.len(), s.iter().map(|x| &self.up[x]))
    }

    pub fn minimal(&self, s: &IndexSet) -> IndexSet {
        IndexSet::from_indices(
            self.len(),
            s.iter().filter(|&x| self.down[x].intersection(s).len() == 1),
        )
    }

    pub fn maximal(&self, s: &IndexSet) -> IndexSet {
        IndexSet::from_indices(
            self.len(),
            s.iter().filter(|&x| self.up[x].intersection(s).len() == 1),
        )
    }

    pub fn is_antichain(&self, s: &IndexSet) -> bool {
        s.iter().all(|x| self.up[x].intersection(s).len() == 1)
    }

    pub fn is_chain(&self, s: &IndexSet) -> bool {
        let v = s.to_vec();
        v.iter().enumerate().all(|(k, &x)| v[k + 1..].iter().all(|&y| self.comparable(x, y)))
    }

    /// Greatest element of `s`, if any.
    pub fn maximum(&self, s: &IndexSet) -> Option<usize> {
        s.iter().find(|&m| s.is_subset(&self.down[m]))
    }

    /// Least element of `s`, if any.
    pub fn minimum(&self, s: &IndexSet) -> Option<usize> {
        s.iter().find(|&m| s.is_subset(&self.up[m]))
    }

    /// Infimum: the maximum of `S^l`. `meet(∅)` is the top when it exists.
    pub fn meet(&self, s: &IndexSet) -> Option<usize> {
        self.maximum(&self.lower_bounds(s))
    }

    /// Supremum: the minimum of `S^u`. `join(∅)` is the bottom when it exists.
    pub fn join(&self, s: &IndexSet) -> Option<usize> {
        self.minimum(&self.upper_bounds(s))
    }

    /// Every pair has a meet.
    pub fn is_meet_semilattice(&self) -> bool {
        let n = self.len();
        (0..n).all(|x| (x + 1..n).all(|y| self.meet(&IndexSet::from_indices(n, [x, y])).is_some()))
    }

    /// Every pair has a join.
    pub fn is_join_semilattice(&self) -> bool {
        let n = self.len();
        (0..n).all(|x| (x + 1..n).all(|y| self.join(&IndexSet::from_indices(n, [x, y])).is_some()))
    }

    pub fn is_lattice(&self) -> bool {
        self.is_meet_semilattice() && self.is_join_semilattice()
    }

    pub fn top(&self) -> Option<usize> {
        self.maximum(&self.all())
    }

    pub fn bottom(&self) -> Option<usize> {
        self.minimum(&self.all())
    }

    /// `minf(S) = max(S^l)`.
    pub fn multi_infima(&self, s: &IndexSet) -> MultiBounds {
        let lower = self.lower_bounds(s);
        let members = self.maximal(&lower);
        let complete = self.down_closure(&members) == lower;
        MultiBounds { members, complete }
    }

    /// `msup(S) = min(S^u)`.
    pub fn multi_suprema(&self, s: &IndexSet) -> MultiBounds {
        let upper = self.upper_bounds(s);
        let members = self.minimal(&upper);
        let complete = self.up_closure(&members) == upper;
        MultiBounds { members, complete }
    }

    /// `true` iff `x <= y ⇔ map(x) <= map(y)` for every pair of `self`.
    pub fn is_order_embedding<F>(&self, dst: &FinitePoset, map: F) -> bool
    where
        F: Fn(usize) -> usize,
    {
        let image: Vec<usize> = (0..self.len()).map(&map).collect();
        (0..self.len()).all(|x| {
            (0..self.len()).all(|y| self.leq(x, y) == dst.leq(image[x], image[y]))
        })
    }

    /// Every antichain (including `∅`), enumerated depth-first in index order.
    /// Fails once more than `limit` antichains have been produced.
    pub fn antichains(&self, limit: usize) -> Result<Vec<IndexSet>> {
        let n = self.len();
        let mut out = Vec::new();
        let mut current = self.empty_subset();
        // `blocked` holds every element comparable with a chosen one.
        fn walk(
            p: &FinitePoset,
            start: usize,
            current: &mut IndexSet,
            blocked: &IndexSet,
            out: &mut Vec<IndexSet>,
            limit: usize,
        ) -> Result<()> {
            out.push(current.clone());
            if out.len() > limit {
                return Err(Error::CapExceeded { what: "antichain", limit, actual: out.len() });
            }
            for x in start..p.len() {
                if blocked.contains(x) {
                    continue;
                }
                current.insert(x);
                let next_blocked = blocked.union(&p.up[x]).union(&p.down[x]);
                walk(p, x + 1, current, &next_blocked, out, limit)?;
                current.remove(x);
            }
            Ok(())
        }
        walk(self, 0, &mut current, &IndexSet::empty(n), &mut out, limit)?;
        Ok(out)
    }

    pub fn classify(&self) -> ClassificationReport {
        self.classify_with(DEFAULT_EXHAUSTIVE_LIMIT)
    }

    /// Structural classification. Posets with at most `exhaustive_limit`
    /// elements have every nonempty subset checked for multi-infima and
    /// multi-suprema; larger ones fall back to subsets of size at most 3.
    pub fn classify_with(&self, exhaustive_limit: usize) -> ClassificationReport {
        let n = self.len();
        let all = self.all();
        let top = self.top();
        let bottom = self.bottom();
        let pairs = || (0..n).flat_map(move |x| (x..n).map(move |y| IndexSet::from_indices(n, [x, y])));

        let is_meet_semilattice = self.is_meet_semilattice();
        let is_join_semilattice = self.is_join_semilattice();
        let is_lattice = is_meet_semilattice && is_join_semilattice;
        let is_benado_multilattice =
            pairs().all(|s| self.multi_infima(&s).complete && self.multi_suprema(&s).complete);

        let (subsets, coverage): (Vec<IndexSet>, CheckCoverage) = if n <= exhaustive_limit.min(24) {
            (IndexSet::all_subsets(n).filter(|s| !s.is_empty()).collect(), CheckCoverage::Exhaustive)
        } else {
            let mut v = Vec::new();
            for x in 0..n {
                for y in x..n {
                    for z in y..n {
                        v.push(IndexSet::from_indices(n, [x, y, z]));
                    }
                }
            }
            v.sort();
            v.dedup();
            (v, CheckCoverage::Sampled { max_subset_size: 3 })
        };
        let is_meet_multisemilattice = subsets.iter().all(|s| self.multi_infima(s).complete);
        let is_join_multisemilattice = subsets.iter().all(|s| self.multi_suprema(s).complete);

        ClassificationReport {
            is_chain: self.is_chain(&all),
            is_antichain_poset: self.is_antichain(&all),
            has_top: top.is_some(),
            has_bottom: bottom.is_some(),
            is_meet_semilattice,
            is_join_semilattice,
            is_lattice,
            is_complete_lattice: is_lattice && top.is_some() && bottom.is_some(),
            is_benado_multilattice,
            is_meet_multisemilattice,
            is_join_multisemilattice,
            is_multilattice: is_meet_multisemilattice && is_join_multisemilattice,
            has_all_maximal: self.multi_infima(&self.empty_subset()).complete,
            has_all_minimal: self.multi_suprema(&self.empty_subset()).complete,
            multilattice_coverage: coverage,
        }
    }
}
