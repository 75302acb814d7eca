//! Completions of posets and of pattern setups.
//!
//! - [`AntichainPoset`]: all antichains of a finite poset ordered by
//!   `A ≦ B ⇔ ↓A ⊆ ↓B`.
//! - [`AntichainCompletion`]: the setup lifted to antichains of
//!   descriptions, `g ↦ {delta(g)}`, with `ext(S) = ⋂ ext[S]`.
//! - [`DirectCompletion`]: the setup lifted to down-sets of descriptions,
//!   `g ↦ ↓delta(g)`.
//! - [`DedekindMacNeille`]: the cut lattice of a finite poset.
//!
//! Setup completions work over a finite universe `U` of descriptions: the
//! relevant fragment plus the witnesses needed to see every extent (a top or
//! a description realized by nothing). For explicit spaces `U` is the whole
//! space. Whether the lifted space has a greatest antichain (needed for
//! `A = ∅`) is taken from the base space, not from `U`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::bits::IndexSet;
use crate::descspace::{Description, DescriptionSpace, Fragment, MaxCover, SpaceKind};
use crate::poset::FinitePoset;
use crate::setup::{intersection_closure, Antichain, Cover, PatternSetup, SubsetReport};
use crate::structure::ConceptLattice;
use crate::{Error, Result};

/// Finite poset whose elements are `labels` and whose order is inclusion of
/// `sets`; `position[i]` is the index of `sets[i]` in it.
fn inclusion_poset(labels: Vec<String>, sets: &[IndexSet]) -> Result<(FinitePoset, Vec<usize>)> {
    let poset = FinitePoset::from_relation_fn(labels.clone(), |a, b| sets[a].is_subset(&sets[b]))?;
    let position = labels.iter().map(|l| poset.index_of(l).expect("label present")).collect();
    Ok((poset, position))
}

/// Hasse edges of `order`, renumbered through the inverse of `position`.
fn hasse_by_position(order: &FinitePoset, position: &[usize]) -> Vec<(usize, usize)> {
    let mut inverse = alloc::vec![0; position.len()];
    for (i, &p) in position.iter().enumerate() {
        inverse[p] = i;
    }
    let mut edges: Vec<(usize, usize)> = order.hasse_edges().iter().map(|&(a, b)| (inverse[a], inverse[b])).collect();
    edges.sort_unstable();
    edges
}

/// The antichain completion `(A(P), ≦)` of a finite poset.
#[derive(Clone, Debug)]
pub struct AntichainPoset {
    base: FinitePoset,
    /// Sorted canonically.
    antichains: Vec<IndexSet>,
    downs: Vec<IndexSet>,
    order: FinitePoset,
    position: Vec<usize>,
}

impl AntichainPoset {
    pub fn new(base: FinitePoset, max_antichains: usize) -> Result<Self> {
        let mut antichains = base.antichains(max_antichains)?;
        antichains.sort();
        let downs: Vec<IndexSet> = antichains.iter().map(|a| base.down_closure(a)).collect();
        let labels = antichains.iter().map(|a| base.format_subset(a)).collect();
        let (order, position) = inclusion_poset(labels, &downs)?;
        Ok(AntichainPoset { base, antichains, downs, order, position })
    }

    pub fn base(&self) -> &FinitePoset {
        &self.base
    }

    pub fn antichains(&self) -> &[IndexSet] {
        &self.antichains
    }

    pub fn len(&self) -> usize {
        self.antichains.len()
    }

    pub fn is_empty(&self) -> bool {
        self.antichains.is_empty()
    }

    pub fn index_of(&self, a: &IndexSet) -> Option<usize> {
        self.antichains.binary_search(a).ok()
    }

    /// The order as an explicit poset on antichain labels such as `{a,b}`.
    pub fn poset(&self) -> &FinitePoset {
        &self.order
    }

    /// Index of `antichains()[i]` in [`poset`](Self::poset).
    pub fn poset_index(&self, i: usize) -> usize {
        self.position[i]
    }

    /// Covering pairs as indices into `antichains()`.
    pub fn hasse(&self) -> Vec<(usize, usize)> {
        hasse_by_position(&self.order, &self.position)
    }

    /// `A ≦ B ⇔ ↓A ⊆ ↓B`. Defined for arbitrary subsets, where it is only a
    /// preorder.
    pub fn leqq(&self, a: &IndexSet, b: &IndexSet) -> bool {
        self.base.down_closure(a).is_subset(&self.base.down_closure(b))
    }

    /// `max(↓A ∩ ↓B)`, as an index into `antichains()`.
    pub fn meet(&self, i: usize, j: usize) -> usize {
        let m = self.base.maximal(&self.downs[i].intersection(&self.downs[j]));
        self.index_of(&m).expect("max of a set is an antichain")
    }

    /// `max(A ∪ B)`, as an index into `antichains()`.
    pub fn join(&self, i: usize, j: usize) -> usize {
        let m = self.base.maximal(&self.antichains[i].union(&self.antichains[j]));
        self.index_of(&m).expect("max of a set is an antichain")
    }

    /// `a ↦ {a}` is an order embedding of the base.
    pub fn singleton_embedding_holds(&self) -> bool {
        let n = self.base.len();
        let image: Vec<usize> = (0..n)
            .map(|a| self.position[self.index_of(&IndexSet::singleton(n, a)).expect("singletons are antichains")])
            .collect();
        self.base.is_order_embedding(&self.order, |a| image[a])
    }

    /// `x ∧ (y ∨ z) = (x ∧ y) ∨ (x ∧ z)` for all triples.
    pub fn is_distributive(&self) -> bool {
        let k = self.len();
        let table = |op: fn(&Self, usize, usize) -> usize| -> Vec<usize> {
            (0..k * k).map(|i| op(self, i / k, i % k)).collect()
        };
        let (meet, join) = (table(Self::meet), table(Self::join));
        (0..k).all(|x| {
            (0..k).all(|y| {
                (0..k).all(|z| meet[x * k + join[y * k + z]] == join[meet[x * k + y] * k + meet[x * k + z]])
            })
        })
    }
}

/// Outcome of the Boldi-Vigna condition: for all antichains `A, B` there is
/// an antichain `C` with `↓A ∩ ↓B = ↓C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoldiVignaReport {
    pub holds: bool,
    pub witness: Option<(IndexSet, IndexSet)>,
}

pub fn check_boldi_vigna(p: &FinitePoset, max_antichains: usize) -> Result<BoldiVignaReport> {
    let antichains = p.antichains(max_antichains)?;
    let by_down: BTreeMap<IndexSet, &IndexSet> =
        antichains.iter().map(|a| (p.down_closure(a), a)).collect();
    let downs: Vec<&IndexSet> = by_down.keys().collect();
    for (i, a) in downs.iter().enumerate() {
        for b in &downs[i..] {
            if !by_down.contains_key(&a.intersection(b)) {
                return Ok(BoldiVignaReport {
                    holds: false,
                    witness: Some((by_down[*a].clone(), by_down[*b].clone())),
                });
            }
        }
    }
    Ok(BoldiVignaReport { holds: true, witness: None })
}

/// The implication "`(A(P), ≦)` is a lattice ⇒ `P` is a meet-multisemilattice",
/// with both sides computed independently.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LatticeImpliesMultisemilattice {
    pub antecedent: bool,
    pub consequent: bool,
}

impl LatticeImpliesMultisemilattice {
    pub fn holds(&self) -> bool {
        !self.antecedent || self.consequent
    }
}

pub fn antichain_to_multilattice_check(
    p: &FinitePoset,
    max_antichains: usize,
) -> Result<LatticeImpliesMultisemilattice> {
    let completion = AntichainPoset::new(p.clone(), max_antichains)?;
    Ok(LatticeImpliesMultisemilattice {
        antecedent: completion.poset().is_lattice(),
        consequent: p.classify().is_meet_multisemilattice,
    })
}

/// The finite universe of descriptions a setup completion works over.
fn completion_universe(setup: &PatternSetup) -> Result<(Fragment, Vec<IndexSet>)> {
    let space = setup.space();
    if matches!(space.kind(), SpaceKind::Omega) {
        return Err(Error::UnsupportedCapability("completion of the omega space"));
    }
    let universe = Fragment::new(space, setup.extent_witnesses())?;
    let extents = universe
        .descriptions()
        .iter()
        .map(|d| setup.ext(d))
        .collect::<Result<Vec<_>>>()?;
    Ok((universe, extents))
}

fn singleton_index(universe: &Fragment, d: &Description) -> usize {
    universe.index_of(d).expect("object descriptions lie in the universe")
}

/// Whether `(A(D), ≦)` has a greatest element, i.e. `D = ↓C` for an
/// antichain `C`.
fn lifted_space_has_top(space: &DescriptionSpace) -> bool {
    !matches!(space.max_cover(), MaxCover::Uncovered)
}

/// The antichain completion of a pattern setup.
#[derive(Clone, Debug)]
pub struct AntichainCompletion {
    setup: PatternSetup,
    universe: Fragment,
    extents: Vec<IndexSet>,
    antichains: Vec<IndexSet>,
    downs: Vec<IndexSet>,
}

impl AntichainCompletion {
    pub fn new(setup: &PatternSetup) -> Result<Self> {
        let (universe, extents) = completion_universe(setup)?;
        let mut antichains = universe.poset().antichains(setup.caps().max_antichains)?;
        antichains.sort();
        let downs = antichains.iter().map(|a| universe.poset().down_closure(a)).collect();
        Ok(AntichainCompletion { setup: setup.clone(), universe, extents, antichains, downs })
    }

    pub fn setup(&self) -> &PatternSetup {
        &self.setup
    }

    pub fn universe(&self) -> &Fragment {
        &self.universe
    }

    pub fn antichains(&self) -> &[IndexSet] {
        &self.antichains
    }

    pub fn descriptions_of(&self, s: &IndexSet) -> Antichain {
        Antichain::from_members(s.iter().map(|i| self.universe.description(i).clone()).collect())
    }

    /// `{delta(g)}` as a subset of the universe.
    pub fn delta(&self, g: usize) -> IndexSet {
        IndexSet::singleton(self.universe.len(), singleton_index(&self.universe, self.setup.delta(g)))
    }

    /// `ext(S) = ⋂ ext[S]`, with `ext(∅) = G`.
    pub fn ext_of(&self, s: &IndexSet) -> IndexSet {
        IndexSet::intersect_all(self.setup.len(), s.iter().map(|i| &self.extents[i]))
    }

    /// Extent of an antichain given by its descriptions.
    pub fn ext(&self, antichain: &Antichain) -> Result<IndexSet> {
        let mut s = IndexSet::empty(self.universe.len());
        for d in antichain.iter() {
            match self.universe.index_of(d) {
                Some(i) => s.insert(i),
                // Outside the universe: realized by no object.
                None => {
                    self.setup.space().check(d)?;
                    return Ok(IndexSet::empty(self.setup.len()));
                }
            }
        }
        Ok(self.ext_of(&s))
    }

    /// The completed extent family, sorted.
    pub fn extents(&self) -> Vec<IndexSet> {
        let mut v: Vec<IndexSet> = self.antichains.iter().map(|s| self.ext_of(s)).collect();
        v.sort();
        v.dedup();
        v
    }

    /// Index of the greatest antichain `S` (under `≦`) with `A ⊆ ext(S)`,
    /// for nonempty `A`.
    fn greatest_cover(&self, a: &IndexSet) -> Option<usize> {
        let candidates: Vec<usize> =
            (0..self.antichains.len()).filter(|&i| a.is_subset(&self.ext_of(&self.antichains[i]))).collect();
        let mut union = IndexSet::empty(self.universe.len());
        for &i in &candidates {
            union.union_with(&self.downs[i]);
        }
        candidates.into_iter().find(|&i| self.downs[i] == union)
    }

    /// Whether the completed setup is a pattern structure, subset by subset.
    pub fn is_structure(&self) -> Result<SubsetReport> {
        let mut failures = Vec::new();
        for a in self.setup.object_subsets()? {
            let ok = if a.is_empty() {
                lifted_space_has_top(self.setup.space())
            } else {
                self.greatest_cover(&a).is_some()
            };
            if !ok {
                failures.push(a);
            }
        }
        Ok(SubsetReport { holds: failures.is_empty(), failures })
    }

    /// Intent in the completion: the greatest covering antichain.
    pub fn int(&self, a: &IndexSet) -> Result<Antichain> {
        if a.is_empty() {
            return match self.setup.space().max_cover() {
                MaxCover::Finite(v) => Ok(Antichain::from_members(v)),
                MaxCover::Infinite => Err(Error::UndefinedForSpace(format!(
                    "the greatest antichain of the {} space is infinite",
                    self.setup.space().kind_name()
                ))),
                MaxCover::Uncovered => Err(Error::NotAStructure { witness: String::from("{}") }),
            };
        }
        match self.greatest_cover(a) {
            Some(i) => Ok(self.descriptions_of(&self.antichains[i])),
            None => Err(Error::NotAStructure { witness: self.setup.format_objects(a) }),
        }
    }

    pub fn concept_lattice(&self) -> Result<ConceptLattice<Antichain>> {
        let report = self.is_structure()?;
        if let Some(w) = report.witness() {
            return Err(Error::NotAStructure { witness: self.setup.format_objects(w) });
        }
        ConceptLattice::from_extents(self.extents(), |e| self.int(e))
    }

    /// The completion as an ordinary setup over the explicit finite space
    /// `(A(U), ≦)`, with elements named by antichain literals.
    pub fn to_setup(&self) -> Result<PatternSetup> {
        let labels: Vec<String> =
            self.antichains.iter().map(|s| format!("{}", self.descriptions_of(s))).collect();
        let (poset, _) = inclusion_poset(labels, &self.downs)?;
        let objects: Vec<(String, Description)> = (0..self.setup.len())
            .map(|g| {
                let label = format!("{}", Antichain::from_members(alloc::vec![self.setup.delta(g).clone()]));
                (self.setup.objects()[g].clone(), Description::Explicit(label))
            })
            .collect();
        Ok(PatternSetup::new(DescriptionSpace::explicit(poset), objects)?.with_caps(self.setup.caps()))
    }
}

/// The direct completion: down-sets of descriptions ordered by inclusion.
#[derive(Clone, Debug)]
pub struct DirectCompletion {
    setup: PatternSetup,
    universe: Fragment,
    extents: Vec<IndexSet>,
    ideals: Vec<IndexSet>,
}

impl DirectCompletion {
    pub fn new(setup: &PatternSetup) -> Result<Self> {
        let (universe, extents) = completion_universe(setup)?;
        let poset = universe.poset();
        let mut ideals: Vec<IndexSet> = poset
            .antichains(setup.caps().max_antichains)?
            .iter()
            .map(|a| poset.down_closure(a))
            .collect();
        ideals.sort();
        Ok(DirectCompletion { setup: setup.clone(), universe, extents, ideals })
    }

    pub fn universe(&self) -> &Fragment {
        &self.universe
    }

    /// Down-sets of the universe, sorted.
    pub fn ideals(&self) -> &[IndexSet] {
        &self.ideals
    }

    /// `↓delta(g)`.
    pub fn delta(&self, g: usize) -> IndexSet {
        let i = singleton_index(&self.universe, self.setup.delta(g));
        self.universe.poset().down_set(i).clone()
    }

    /// `{g | I ⊆ ↓delta(g)}`.
    pub fn ext_of_ideal(&self, ideal: &IndexSet) -> IndexSet {
        IndexSet::intersect_all(self.setup.len(), ideal.iter().map(|i| &self.extents[i]))
    }

    pub fn extents(&self) -> Vec<IndexSet> {
        let mut v: Vec<IndexSet> = self.ideals.iter().map(|i| self.ext_of_ideal(i)).collect();
        v.sort();
        v.dedup();
        v
    }

    /// The intent of `A` is `cov(A)` itself.
    pub fn int(&self, a: &IndexSet) -> Result<Cover> {
        self.setup.cov(a)
    }

    pub fn concept_lattice(&self) -> Result<ConceptLattice<Cover>> {
        ConceptLattice::from_extents(self.extents(), |e| self.int(e))
    }
}

/// How a Dedekind-MacNeille completion relates to its base.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DmComparison {
    /// The base is already a complete lattice.
    Isomorphic,
    /// The base plus a synthetic bottom (the empty cut).
    IsomorphicWithBottom,
    /// New cuts beyond the empty one were added.
    Larger,
}

/// The Dedekind-MacNeille completion: principal ideals and `P` closed under
/// intersection, ordered by inclusion.
#[derive(Clone, Debug)]
pub struct DedekindMacNeille {
    base: FinitePoset,
    cuts: Vec<IndexSet>,
    order: FinitePoset,
    position: Vec<usize>,
}

impl DedekindMacNeille {
    pub fn new(base: FinitePoset, max_cuts: usize) -> Result<Self> {
        let principal: Vec<IndexSet> = (0..base.len()).map(|x| base.down_set(x).clone()).collect();
        let cuts = intersection_closure(base.len(), &principal);
        if cuts.len() > max_cuts {
            return Err(Error::CapExceeded { what: "cut", limit: max_cuts, actual: cuts.len() });
        }
        let labels = cuts.iter().map(|c| base.format_subset(c)).collect();
        let (order, position) = inclusion_poset(labels, &cuts)?;
        Ok(DedekindMacNeille { base, cuts, order, position })
    }

    pub fn base(&self) -> &FinitePoset {
        &self.base
    }

    /// Sorted canonically.
    pub fn cuts(&self) -> &[IndexSet] {
        &self.cuts
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.order
    }

    /// Covering pairs as indices into `cuts()`.
    pub fn hasse(&self) -> Vec<(usize, usize)> {
        hasse_by_position(&self.order, &self.position)
    }

    /// Index in [`poset`](Self::poset) of the cut `↓x`.
    pub fn embed(&self, x: usize) -> usize {
        let i = self.cuts.binary_search(self.base.down_set(x)).expect("principal ideals are cuts");
        self.position[i]
    }

    pub fn embedding_holds(&self) -> bool {
        self.base.is_order_embedding(&self.order, |x| self.embed(x))
    }

    pub fn compare_with_base(&self) -> DmComparison {
        let n = self.base.len();
        let has_empty = self.cuts.first().is_some_and(IndexSet::is_empty);
        if self.cuts.len() == n {
            DmComparison::Isomorphic
        } else if self.cuts.len() == n + 1 && has_empty {
            DmComparison::IsomorphicWithBottom
        } else {
            DmComparison::Larger
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CompletionKind {
    Antichain,
    Direct,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompletionReport {
    pub kind: CompletionKind,
    pub base_extent_count: usize,
    pub completed_extent_count: usize,
    /// Completed extents that are not base extents, sorted.
    pub new_extents: Vec<IndexSet>,
    pub is_structure_after: bool,
}

impl CompletionReport {
    pub fn compute(setup: &PatternSetup, kind: CompletionKind) -> Result<Self> {
        let base = setup.definable_extents()?;
        let (completed, is_structure_after) = match kind {
            CompletionKind::Antichain => {
                let c = AntichainCompletion::new(setup)?;
                (c.extents(), c.is_structure()?.holds)
            }
            CompletionKind::Direct => (DirectCompletion::new(setup)?.extents(), true),
        };
        let new_extents = completed.iter().filter(|e| !base.contains(e)).cloned().collect();
        Ok(CompletionReport {
            kind,
            base_extent_count: base.len(),
            completed_extent_count: completed.len(),
            new_extents,
            is_structure_after,
        })
    }
}

/// Both sides of "the antichain completion is a pattern structure iff the
/// setup is a pattern multistructure", computed independently.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IffTheoremReport {
    pub multistructure: SubsetReport,
    /// `None` when the setup cannot be completed (omega space).
    pub completion_structure: Option<SubsetReport>,
    /// Completed extents equal `{⋂S | S ⊆ P_ext}`.
    pub extents_are_intersections: Option<bool>,
}

impl IffTheoremReport {
    pub fn compute(setup: &PatternSetup) -> Result<Self> {
        let multistructure = setup.is_multistructure()?;
        let completion = match AntichainCompletion::new(setup) {
            Ok(c) => Some(c),
            Err(Error::UnsupportedCapability(_)) => None,
            Err(e) => return Err(e),
        };
        let (completion_structure, extents_are_intersections) = match completion {
            Some(c) => {
                let base = setup.definable_extents()?;
                let closed = intersection_closure(setup.len(), &base.extents);
                (Some(c.is_structure()?), Some(c.extents() == closed))
            }
            None => (None, None),
        };
        Ok(IffTheoremReport { multistructure, completion_structure, extents_are_intersections })
    }

    /// Whether both sides agree; `None` if the completion side is missing.
    pub fn equivalent(&self) -> Option<bool> {
        self.completion_structure.as_ref().map(|c| c.holds == self.multistructure.holds)
    }
}
