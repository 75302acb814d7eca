//! Pattern setups `(G, D, delta)`.
//!
//! Objects are indexed by declaration order and object sets are
//! [`IndexSet`]s over that universe. Whenever every `delta(g)` has a finite
//! principal ideal, the setup keeps the relevant fragment `↓delta[G]`
//! together with the extent of each of its members, and all cover
//! computations happen inside it. The omega space is handled symbolically.

use alloc::borrow::ToOwned;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::bits::IndexSet;
use crate::descspace::{Description, DescriptionSpace, Fragment, MaxCover, OmegaSymbol, SpaceKind};
use crate::poset::FinitePoset;
use crate::{Error, Result};

/// Enumeration limits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Largest object count for which `2^|G|` loops run.
    pub max_objects: usize,
    pub max_antichains: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { max_objects: 20, max_antichains: 1_000_000 }
    }
}

/// A set of pairwise incomparable descriptions, sorted by literal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Antichain(Vec<Description>);

impl Antichain {
    pub fn new(space: &DescriptionSpace, members: Vec<Description>) -> Result<Self> {
        for (i, x) in members.iter().enumerate() {
            space.check(x)?;
            for y in &members[i + 1..] {
                if space.leq(x, y) || space.leq(y, x) {
                    return Err(Error::InvalidDescription(format!("{x} and {y} are comparable")));
                }
            }
        }
        Ok(Self::from_members(members))
    }

    pub fn empty() -> Self {
        Antichain(Vec::new())
    }

    pub(crate) fn from_members(mut members: Vec<Description>) -> Self {
        members.sort_by_cached_key(ToString::to_string);
        members.dedup();
        Antichain(members)
    }

    pub fn members(&self) -> &[Description] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, d: &Description) -> bool {
        self.0.contains(d)
    }

    pub fn iter(&self) -> core::slice::Iter<'_, Description> {
        self.0.iter()
    }

    pub fn into_vec(self) -> Vec<Description> {
        self.0
    }
}

impl fmt::Display for Antichain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, d) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{d}")?;
        }
        f.write_str("}")
    }
}

/// Finite representation of `cov(A)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cover {
    /// `cov(∅)`: the whole space.
    All,
    /// An explicit finite set, sorted by literal.
    Finite(Vec<Description>),
    /// `tops ∪ {c(i) | i ∈ ℕ}` in the omega space.
    OmegaChain { tops: Vec<Description> },
}

impl Cover {
    /// Whether `d` belongs to the cover.
    pub fn contains(&self, d: &Description) -> bool {
        match self {
            Cover::All => true,
            Cover::Finite(v) => v.contains(d),
            Cover::OmegaChain { tops } => {
                matches!(d, Description::Omega(OmegaSymbol::C(_))) || tops.contains(d)
            }
        }
    }
}

impl fmt::Display for Cover {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cover::All => f.write_str("ALL"),
            Cover::Finite(v) => {
                f.write_str("{")?;
                for (k, d) in v.iter().enumerate() {
                    if k > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{d}")?;
                }
                f.write_str("}")
            }
            Cover::OmegaChain { tops } => {
                f.write_str("{")?;
                for d in tops {
                    write!(f, "{d},")?;
                }
                f.write_str("c(0),c(1),...}")
            }
        }
    }
}

/// `P_ext` with one witnessing description per extent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtentFamily {
    /// Sorted by (size, object indices).
    pub extents: Vec<IndexSet>,
    pub witnesses: Vec<Description>,
}

impl ExtentFamily {
    pub fn len(&self) -> usize {
        self.extents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.extents.is_empty()
    }

    pub fn contains(&self, e: &IndexSet) -> bool {
        self.extents.binary_search(e).is_ok()
    }
}

/// Pattern implications over the relevant fragment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImplicationReport {
    /// Descriptions grouped by extent; groups sorted by extent.
    pub classes: Vec<(IndexSet, Vec<Description>)>,
    /// Every `c -> d` with `c != d` and `ext(c) ⊆ ext(d)`.
    pub holds: Vec<(Description, Description)>,
}

/// Outcome of a check quantified over all object subsets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetReport {
    pub holds: bool,
    /// Failing subsets in (size, indices) order.
    pub failures: Vec<IndexSet>,
}

impl SubsetReport {
    pub fn witness(&self) -> Option<&IndexSet> {
        self.failures.first()
    }
}

#[derive(Clone, Debug)]
struct Relevant {
    fragment: Fragment,
    /// `extents[i] = ext(fragment[i])`
    extents: Vec<IndexSet>,
}

#[derive(Clone, Debug)]
pub struct PatternSetup {
    objects: Vec<String>,
    space: DescriptionSpace,
    deltas: Vec<Description>,
    caps: Caps,
    relevant: Option<Relevant>,
}

impl PatternSetup {
    /// Builds a setup from `(object id, description)` pairs. Interval and ray
    /// spaces get the data values added to their grid.
    pub fn new<I, S>(mut space: DescriptionSpace, objects: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, Description)>,
        S: Into<String>,
    {
        let (ids, deltas): (Vec<String>, Vec<Description>) =
            objects.into_iter().map(|(g, d)| (g.into(), d)).unzip();
        if ids.is_empty() {
            return Err(Error::EmptyObjects);
        }
        let mut seen = BTreeSet::new();
        for g in &ids {
            if !seen.insert(g.as_str()) {
                return Err(Error::DuplicateObject(g.clone()));
            }
        }
        for d in &deltas {
            space.check(d)?;
        }
        let mut values = Vec::new();
        for d in &deltas {
            match d {
                Description::Interval { lo, hi } => values.extend([*lo, *hi]),
                Description::Ray(r) => values.push(match r {
                    crate::Ray::Eq(v) | crate::Ray::AtMost(v) | crate::Ray::AtLeast(v) => *v,
                }),
                _ => {}
            }
        }
        space.extend_grid(values);
        let relevant = match space.kind() {
            SpaceKind::Omega => None,
            _ => {
                let fragment = space.restrict_to_relevant(&deltas)?;
                let extents = fragment
                    .descriptions()
                    .iter()
                    .map(|c| ext_in(&space, &deltas, c))
                    .collect();
                Some(Relevant { fragment, extents })
            }
        };
        Ok(PatternSetup { objects: ids, space, deltas, caps: Caps::default(), relevant })
    }

    pub fn with_caps(mut self, caps: Caps) -> Self {
        self.caps = caps;
        self
    }

    pub fn caps(&self) -> Caps {
        self.caps
    }

    pub fn space(&self) -> &DescriptionSpace {
        &self.space
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    /// Always `false`: setups have at least one object.
    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn deltas(&self) -> &[Description] {
        &self.deltas
    }

    pub fn delta(&self, g: usize) -> &Description {
        &self.deltas[g]
    }

    pub fn object_index(&self, id: &str) -> Option<usize> {
        self.objects.iter().position(|g| g == id)
    }

    pub fn object_set<S: AsRef<str>>(&self, ids: &[S]) -> Result<IndexSet> {
        let mut out = IndexSet::empty(self.len());
        for id in ids {
            let id = id.as_ref();
            out.insert(self.object_index(id).ok_or_else(|| Error::UnknownObject(id.to_owned()))?);
        }
        Ok(out)
    }

    pub fn all_objects(&self) -> IndexSet {
        IndexSet::full(self.len())
    }

    pub fn object_ids<'a>(&'a self, a: &'a IndexSet) -> impl Iterator<Item = &'a str> + 'a {
        a.iter().map(|g| self.objects[g].as_str())
    }

    /// `{g1,g2}`
    pub fn format_objects(&self, a: &IndexSet) -> String {
        let mut s = String::from("{");
        for (k, g) in self.object_ids(a).enumerate() {
            if k > 0 {
                s.push(',');
            }
            s.push_str(g);
        }
        s.push('}');
        s
    }

    /// The relevant fragment `↓delta[G]`; unavailable for the omega space.
    pub fn fragment(&self) -> Result<&Fragment> {
        self.relevant
            .as_ref()
            .map(|r| &r.fragment)
            .ok_or_else(|| Error::InfiniteIdeal(String::from("the relevant fragment of an omega setup")))
    }

    /// Extents of the fragment members, aligned with [`Fragment::descriptions`].
    pub fn fragment_extents(&self) -> Result<&[IndexSet]> {
        self.fragment()?;
        Ok(&self.relevant.as_ref().expect("fragment present").extents)
    }

    fn check_objects(&self, a: &IndexSet) -> Result<()> {
        if a.universe() == self.len() {
            Ok(())
        } else {
            Err(Error::InvariantViolated(format!(
                "object set over {} objects used with a setup of {}",
                a.universe(),
                self.len()
            )))
        }
    }

    /// All object subsets in (size, indices) order, subject to the object cap.
    pub fn object_subsets(&self) -> Result<Vec<IndexSet>> {
        if self.len() > self.caps.max_objects {
            return Err(Error::CapExceeded { what: "object", limit: self.caps.max_objects, actual: self.len() });
        }
        let mut v: Vec<IndexSet> = IndexSet::all_subsets(self.len()).collect();
        v.sort();
        Ok(v)
    }

    /// `ext(d) = {g | d ⊑ delta(g)}`.
    pub fn ext(&self, d: &Description) -> Result<IndexSet> {
        self.space.check(d)?;
        if let Some(r) = &self.relevant {
            if let Some(i) = r.fragment.index_of(d) {
                return Ok(r.extents[i].clone());
            }
        }
        Ok(ext_in(&self.space, &self.deltas, d))
    }

    pub fn support(&self, d: &Description) -> Result<usize> {
        Ok(self.ext(d)?.len())
    }

    /// Fragment indices of `cov(A)` for nonempty `A`.
    fn cov_indices(&self, r: &Relevant, a: &IndexSet) -> IndexSet {
        IndexSet::from_indices(r.fragment.len(), (0..r.fragment.len()).filter(|&i| a.is_subset(&r.extents[i])))
    }

    /// `cov(A) = delta[A]^l`, the descriptions common to every object of `A`.
    pub fn cov(&self, a: &IndexSet) -> Result<Cover> {
        self.check_objects(a)?;
        if a.is_empty() {
            return Ok(Cover::All);
        }
        if let Some(r) = &self.relevant {
            let idx = self.cov_indices(r, a);
            return Ok(Cover::Finite(idx.iter().map(|i| r.fragment.description(i).clone()).collect()));
        }
        self.omega_cov(a)
    }

    fn omega_cov(&self, a: &IndexSet) -> Result<Cover> {
        let symbols: BTreeSet<&Description> = a.iter().map(|g| &self.deltas[g]).collect();
        if symbols.contains(&Description::Top) && symbols.len() == 1 {
            return Ok(Cover::All);
        }
        let lowest_c = symbols
            .iter()
            .filter_map(|d| match d {
                Description::Omega(OmegaSymbol::C(i)) => Some(*i),
                _ => None,
            })
            .min();
        if let Some(m) = lowest_c {
            let mut v: Vec<Description> = (0..=m).map(|i| Description::Omega(OmegaSymbol::C(i))).collect();
            v.sort_by_cached_key(ToString::to_string);
            return Ok(Cover::Finite(v));
        }
        let mut maximal: Vec<&Description> = symbols.into_iter().filter(|d| **d != Description::Top).collect();
        match maximal.len() {
            1 => Ok(Cover::OmegaChain { tops: alloc::vec![maximal.remove(0).clone()] }),
            _ => {
                let pair = self.space.minf_of_pair(maximal[0], maximal[1])?;
                debug_assert!(pair.members.is_empty());
                Ok(Cover::OmegaChain { tops: pair.members })
            }
        }
    }

    /// `cov*(A) = max(cov(A))`. For `A = ∅` this is `max(D)`, which is
    /// undefined when the space's maximal elements are infinitely many.
    pub fn cov_star(&self, a: &IndexSet) -> Result<Antichain> {
        self.check_objects(a)?;
        if a.is_empty() {
            return match self.space.max_cover() {
                MaxCover::Finite(v) => Ok(Antichain::from_members(v)),
                MaxCover::Infinite => Err(Error::UndefinedForSpace(format!(
                    "max of the {} space is infinite",
                    self.space.kind_name()
                ))),
                // Words: every word has a strict extension, so max(D) = ∅.
                MaxCover::Uncovered => Ok(Antichain::empty()),
            };
        }
        if let Some(r) = &self.relevant {
            let max = r.fragment.poset().maximal(&self.cov_indices(r, a));
            return Ok(Antichain::from_members(max.iter().map(|i| r.fragment.description(i).clone()).collect()));
        }
        Ok(match self.omega_cov(a)? {
            Cover::Finite(v) => Antichain::from_members(self.space.maximal(&v)),
            Cover::OmegaChain { tops } => Antichain::from_members(tops),
            Cover::All => Antichain::from_members(alloc::vec![Description::Top]),
        })
    }

    /// `d` is support-closed iff `d ∈ cov*(ext(d))`.
    pub fn is_support_closed(&self, d: &Description) -> Result<bool> {
        let e = self.ext(d)?;
        if e.is_empty() {
            // cov*(∅) = max(D), possibly infinite.
            return self.space.is_maximal(d);
        }
        Ok(self.cov_star(&e)?.contains(d))
    }

    /// `D* = ⋃ cov*(A)` over all object subsets, sorted by literal.
    pub fn support_closed_set(&self) -> Result<Vec<Description>> {
        let mut all = BTreeSet::new();
        for a in self.object_subsets()? {
            all.extend(self.cov_star(&a)?.into_vec());
        }
        Ok(Antichain::from_members(all.into_iter().collect()).into_vec())
    }

    /// Descriptions that together realize every extent of the space.
    pub(crate) fn extent_witnesses(&self) -> Vec<Description> {
        let mut out: Vec<Description> = match &self.relevant {
            Some(r) => r.fragment.descriptions().to_vec(),
            None => Vec::new(),
        };
        for w in self.space.extent_witnesses(&self.deltas) {
            if !out.contains(&w) {
                out.push(w);
            }
        }
        out
    }

    /// `P_ext = ext[D]`.
    pub fn definable_extents(&self) -> Result<ExtentFamily> {
        let mut map: BTreeMap<IndexSet, Description> = BTreeMap::new();
        for w in self.extent_witnesses() {
            let e = self.ext(&w)?;
            map.entry(e).or_insert(w);
        }
        let (extents, witnesses) = map.into_iter().unzip();
        Ok(ExtentFamily { extents, witnesses })
    }

    /// `min(↑A ∩ P_ext)`, the minimal definable supersets of `A`.
    pub fn upper_approximations(&self, a: &IndexSet) -> Result<Vec<IndexSet>> {
        self.check_objects(a)?;
        let fam = self.definable_extents()?;
        let above: Vec<&IndexSet> = fam.extents.iter().filter(|e| a.is_subset(e)).collect();
        Ok(above
            .iter()
            .filter(|e| !above.iter().any(|f| f != *e && f.is_subset(e)))
            .map(|e| (*e).clone())
            .collect())
    }

    /// Pattern implication `c -> d`: `ext(c) ⊆ ext(d)`.
    pub fn implies(&self, c: &Description, d: &Description) -> Result<bool> {
        Ok(self.ext(c)?.is_subset(&self.ext(d)?))
    }

    /// Object implication `A -> B`: `cov(A) ⊆ cov(B)`, decided as
    /// `B ⊆ ⋂(↑A ∩ P_ext)`.
    pub fn object_implies(&self, a: &IndexSet, b: &IndexSet) -> Result<bool> {
        self.check_objects(a)?;
        self.check_objects(b)?;
        let fam = self.definable_extents()?;
        let hull = IndexSet::intersect_all(self.len(), fam.extents.iter().filter(|e| a.is_subset(e)));
        Ok(b.is_subset(&hull))
    }

    pub fn implications(&self) -> Result<ImplicationReport> {
        let fragment = self.fragment()?;
        let extents = self.fragment_extents()?;
        let mut classes: BTreeMap<IndexSet, Vec<Description>> = BTreeMap::new();
        for (d, e) in fragment.descriptions().iter().zip(extents) {
            classes.entry(e.clone()).or_default().push(d.clone());
        }
        let mut holds = Vec::new();
        for (c, ec) in fragment.descriptions().iter().zip(extents) {
            for (d, ed) in fragment.descriptions().iter().zip(extents) {
                if c != d && ec.is_subset(ed) {
                    holds.push((c.clone(), d.clone()));
                }
            }
        }
        Ok(ImplicationReport { classes: classes.into_iter().collect(), holds })
    }

    /// The minimal representation: the same objects over the explicit space
    /// `(P_ext, ⊇)` with `g ↦ ⋂(↑{g} ∩ P_ext)`.
    pub fn minimal_representation(&self) -> Result<PatternSetup> {
        let fam = self.definable_extents()?;
        let labels: Vec<String> = fam.extents.iter().map(|e| self.format_objects(e)).collect();
        let poset = FinitePoset::from_relation_fn(labels.clone(), |a, b| {
            fam.extents[b].is_subset(&fam.extents[a])
        })?;
        let space = DescriptionSpace::explicit(poset);
        let mut objects = Vec::with_capacity(self.len());
        for g in 0..self.len() {
            let single = IndexSet::singleton(self.len(), g);
            let hull = IndexSet::intersect_all(self.len(), fam.extents.iter().filter(|e| single.is_subset(e)));
            let pos = fam.extents.binary_search(&hull).map_err(|_| {
                Error::InvariantViolated(format!("{} is not an extent", self.format_objects(&hull)))
            })?;
            objects.push((self.objects[g].clone(), Description::Explicit(labels[pos].clone())));
        }
        let rep = PatternSetup::new(space, objects)?.with_caps(self.caps);
        if rep.definable_extents()?.extents != fam.extents {
            return Err(Error::InvariantViolated("the representation changed the extents".into()));
        }
        Ok(rep)
    }

    /// Every object subset has all its multi-infima: `cov(A) = ↓cov*(A)`.
    /// For `A = ∅` this asks whether `max(D)` covers the whole space.
    pub fn is_multistructure(&self) -> Result<SubsetReport> {
        let mut failures = Vec::new();
        for a in self.object_subsets()? {
            if !self.has_all_multi_infima(&a)? {
                failures.push(a);
            }
        }
        Ok(SubsetReport { holds: failures.is_empty(), failures })
    }

    pub(crate) fn has_all_multi_infima(&self, a: &IndexSet) -> Result<bool> {
        if a.is_empty() {
            return Ok(!matches!(self.space.max_cover(), MaxCover::Uncovered));
        }
        if let Some(r) = &self.relevant {
            let cov = self.cov_indices(r, a);
            let poset = r.fragment.poset();
            return Ok(poset.down_closure(&poset.maximal(&cov)) == cov);
        }
        Ok(match self.omega_cov(a)? {
            Cover::OmegaChain { tops } => !tops.is_empty(),
            Cover::Finite(_) | Cover::All => true,
        })
    }
}

fn ext_in(space: &DescriptionSpace, deltas: &[Description], d: &Description) -> IndexSet {
    IndexSet::from_indices(deltas.len(), (0..deltas.len()).filter(|&g| space.leq(d, &deltas[g])))
}

/// Whether `family` is `P_ext` for some setup over `universe` objects: for
/// every object `g`, `⋂{S ∈ family | g ∈ S}` belongs to the family (the
/// empty intersection being the full object set).
pub fn is_extent_system(universe: usize, family: &[IndexSet]) -> bool {
    (0..universe).all(|g| {
        let hull = IndexSet::intersect_all(universe, family.iter().filter(|s| s.contains(g)));
        family.contains(&hull)
    })
}

/// `{⋂S | S ⊆ family}`, including the full set as `⋂∅`, sorted.
pub fn intersection_closure(universe: usize, family: &[IndexSet]) -> Vec<IndexSet> {
    let mut closed: BTreeSet<IndexSet> = BTreeSet::new();
    closed.insert(IndexSet::full(universe));
    for s in family {
        let new: Vec<IndexSet> = closed.iter().map(|c| c.intersection(s)).collect();
        closed.extend(new);
    }
    closed.into_iter().collect()
}
