//! Pattern structures and concept lattices.
//!
//! A pattern structure is a setup in which every object subset has a
//! greatest common description `int(A)`. [`ConceptLattice`] is generic over
//! the intent type so the same container serves plain structures
//! (descriptions), antichain completions (antichains) and direct completions
//! (down-sets).

use alloc::string::String;
use alloc::vec::Vec;

use crate::bits::IndexSet;
use crate::descspace::{Description, MaxCover};
use crate::poset::FinitePoset;
use crate::setup::{intersection_closure, PatternSetup, SubsetReport};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Concept<I> {
    pub extent: IndexSet,
    pub intent: I,
}

/// Concepts sorted by extent (size, then object indices), with the Hasse
/// diagram of extent inclusion as index pairs `(lower, upper)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConceptLattice<I> {
    pub concepts: Vec<Concept<I>>,
    pub hasse: Vec<(usize, usize)>,
}

impl<I> ConceptLattice<I> {
    /// Builds the lattice over `extents` (deduplicated and sorted here),
    /// computing each intent with `intent`.
    pub fn from_extents<F>(mut extents: Vec<IndexSet>, mut intent: F) -> Result<Self>
    where
        F: FnMut(&IndexSet) -> Result<I>,
    {
        extents.sort();
        extents.dedup();
        let hasse = inclusion_hasse(&extents);
        let concepts = extents
            .into_iter()
            .map(|extent| intent(&extent).map(|i| Concept { extent, intent: i }))
            .collect::<Result<_>>()?;
        Ok(ConceptLattice { concepts, hasse })
    }

    pub fn len(&self) -> usize {
        self.concepts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.concepts.is_empty()
    }

    pub fn find(&self, extent: &IndexSet) -> Option<&Concept<I>> {
        self.concepts.iter().find(|c| c.extent == *extent)
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.concepts[i].extent.is_subset(&self.concepts[j].extent)
    }

    /// The concept order as a [`FinitePoset`], one element per concept,
    /// named by `label`.
    pub fn to_poset<F>(&self, label: F) -> Result<FinitePoset>
    where
        F: Fn(&Concept<I>) -> String,
    {
        let ids = self.concepts.iter().map(label).collect();
        FinitePoset::from_relation_fn(ids, |a, b| self.leq(a, b))
    }
}

/// Covering pairs `(i, j)` with `sets[i] ⊊ sets[j]` and nothing in between.
pub(crate) fn inclusion_hasse(sets: &[IndexSet]) -> Vec<(usize, usize)> {
    let strictly = |a: &IndexSet, b: &IndexSet| a != b && a.is_subset(b);
    let mut out = Vec::new();
    for (i, a) in sets.iter().enumerate() {
        for (j, b) in sets.iter().enumerate() {
            if strictly(a, b) && !sets.iter().any(|c| strictly(a, c) && strictly(c, b)) {
                out.push((i, j));
            }
        }
    }
    out
}

/// Checks that every `A ⊆ G` has a greatest common description: `cov*(A)`
/// is a singleton generating `cov(A)`. `A = ∅` asks for a top of the space.
pub fn is_pattern_structure(setup: &PatternSetup) -> Result<SubsetReport> {
    let mut failures = Vec::new();
    for a in setup.object_subsets()? {
        let ok = if a.is_empty() {
            matches!(setup.space().max_cover(), MaxCover::Finite(v) if v.len() == 1)
        } else {
            setup.cov_star(&a)?.len() == 1 && setup.has_all_multi_infima(&a)?
        };
        if !ok {
            failures.push(a);
        }
    }
    Ok(SubsetReport { holds: failures.is_empty(), failures })
}

/// A setup verified to be a pattern structure.
#[derive(Clone, Debug)]
pub struct PatternStructure {
    setup: PatternSetup,
}

impl PatternStructure {
    pub fn new(setup: PatternSetup) -> Result<Self> {
        let report = is_pattern_structure(&setup)?;
        match report.witness() {
            None => Ok(PatternStructure { setup }),
            Some(w) => Err(Error::NotAStructure { witness: setup.format_objects(w) }),
        }
    }

    pub fn setup(&self) -> &PatternSetup {
        &self.setup
    }

    pub fn into_setup(self) -> PatternSetup {
        self.setup
    }

    /// `int(A)`, the greatest common description of `A`.
    pub fn int(&self, a: &IndexSet) -> Result<Description> {
        let star = self.setup.cov_star(a)?;
        match star.members() {
            [d] => Ok(d.clone()),
            _ => Err(Error::NotAStructure { witness: self.setup.format_objects(a) }),
        }
    }

    /// `ext(int(A))`, the smallest extent containing `A`.
    pub fn closure(&self, a: &IndexSet) -> Result<IndexSet> {
        self.setup.ext(&self.int(a)?)
    }

    /// All concepts `(ext(d), d)`; extents are `P_ext` closed under
    /// intersection.
    pub fn concept_lattice(&self) -> Result<ConceptLattice<Description>> {
        let base = self.setup.definable_extents()?;
        let extents = intersection_closure(self.setup.len(), &base.extents);
        ConceptLattice::from_extents(extents, |e| {
            let d = self.int(e)?;
            if self.setup.ext(&d)? != *e {
                return Err(Error::InvariantViolated(alloc::format!(
                    "{} is not closed",
                    self.setup.format_objects(e)
                )));
            }
            Ok(d)
        })
    }
}
