//! Description spaces `(D, ⊑)`.
//!
//! `c ⊑ d` reads "c is less restrictive than d": every object realizing `d`
//! also realizes `c`. Each concrete space fixes its own law:
//!
//! | space     | `c ⊑ d`                                             |
//! |-----------|-----------------------------------------------------|
//! | itemsets  | `c ⊆ d`                                             |
//! | words     | `c` is a contiguous substring of `d` (nonempty)     |
//! | intervals | `c ⊇ d` as subsets of the line; `[]` is the top     |
//! | rays      | region of `c` contains region of `d`                |
//! | explicit  | the order of a [`FinitePoset`]                      |
//! | omega     | `c(i) ⊑ c(j)` iff `i <= j`, `c(i) ⊑ a`, `c(i) ⊑ b`  |
//!
//! Interval and ray spaces are continuous; their principal ideals are taken
//! over a finite grid of values (the values occurring in the data). Extents
//! only change at data values, so the grid loses no extent.
//!
//! Any space can be augmented with a synthetic top `TOP` above everything.

use alloc::borrow::ToOwned;
use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::poset::FinitePoset;
use crate::{Error, Rational, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Ray {
    /// `value = v`
    Eq(Rational),
    /// `value <= v`
    AtMost(Rational),
    /// `value >= v`
    AtLeast(Rational),
}

/// Elements of the omega space: two incomparable maximal symbols above an
/// infinite ascending chain `c(0) ⊑ c(1) ⊑ ...`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OmegaSymbol {
    A,
    B,
    C(u64),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Description {
    Itemset(BTreeSet<String>),
    /// Closed interval `[lo, hi]` with `lo <= hi`.
    Interval { lo: Rational, hi: Rational },
    /// The empty interval, top of the interval space.
    EmptyInterval,
    Ray(Ray),
    Word(String),
    Explicit(String),
    Omega(OmegaSymbol),
    /// Synthetic top added by [`DescriptionSpace::augment_with_top`].
    Top,
}

impl Description {
    pub fn itemset<I, S>(items: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Description::Itemset(items.into_iter().map(Into::into).collect())
    }

    pub fn word(w: &str) -> Self {
        Description::Word(w.to_owned())
    }

    pub fn interval(lo: Rational, hi: Rational) -> Self {
        Description::Interval { lo, hi }
    }

    pub fn point(v: Rational) -> Self {
        Description::Interval { lo: v, hi: v }
    }
}

fn fmt_rational(r: &Rational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if *r.denom() == 1 {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Ray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (op, v) = match self {
            Ray::Eq(v) => ("=", v),
            Ray::AtMost(v) => ("<=", v),
            Ray::AtLeast(v) => (">=", v),
        };
        write!(f, "value{op}")?;
        fmt_rational(v, f)
    }
}

impl fmt::Display for OmegaSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OmegaSymbol::A => f.write_str("a"),
            OmegaSymbol::B => f.write_str("b"),
            OmegaSymbol::C(i) => write!(f, "c({i})"),
        }
    }
}

/// Canonical literal; distinct descriptions of one space render differently.
impl fmt::Display for Description {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Description::Itemset(items) => {
                f.write_str("{")?;
                for (k, item) in items.iter().enumerate() {
                    if k > 0 {
                        f.write_str(",")?;
                    }
                    f.write_str(item)?;
                }
                f.write_str("}")
            }
            Description::Interval { lo, hi } => {
                f.write_str("[")?;
                fmt_rational(lo, f)?;
                f.write_str(",")?;
                fmt_rational(hi, f)?;
                f.write_str("]")
            }
            Description::EmptyInterval => f.write_str("[]"),
            Description::Ray(r) => r.fmt(f),
            Description::Word(w) => f.write_str(w),
            Description::Explicit(id) => f.write_str(id),
            Description::Omega(s) => s.fmt(f),
            Description::Top => f.write_str("TOP"),
        }
    }
}

/// Parses `3`, `-2`, `3.25` or `7/2`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::InvalidDescription(format!("not a rational number: `{s}`"));
    if let Some((n, d)) = s.split_once('/') {
        let n: i64 = n.trim().parse().map_err(|_| bad())?;
        let d: i64 = d.trim().parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(bad());
        }
        return Ok(Rational::new(n, d));
    }
    let (int_part, frac_part) = s.split_once('.').unwrap_or((s, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    let negative = int_part.starts_with('-');
    let digits = int_part.trim_start_matches(['-', '+']);
    if !digits.chars().all(|c| c.is_ascii_digit()) || !frac_part.chars().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let scale = 10i64.checked_pow(frac_part.len() as u32).ok_or_else(bad)?;
    let whole: i64 = if digits.is_empty() { 0 } else { digits.parse().map_err(|_| bad())? };
    let frac: i64 = if frac_part.is_empty() { 0 } else { frac_part.parse().map_err(|_| bad())? };
    let numer = whole.checked_mul(scale).and_then(|w| w.checked_add(frac)).ok_or_else(bad)?;
    Ok(Rational::new(if negative { -numer } else { numer }, scale))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpaceKind {
    Itemset { attributes: BTreeSet<String> },
    Words { alphabet: BTreeSet<char> },
    Intervals { grid: BTreeSet<Rational> },
    Rays { grid: BTreeSet<Rational> },
    Explicit(FinitePoset),
    Omega,
}

/// Whether the space contains a description realized by no object.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EmptyExtent {
    Yes,
    No,
    /// Depends on the object descriptions of a concrete setup.
    PerSetup,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpaceCaps {
    pub has_top: bool,
    pub supports_minf_oracle: bool,
    pub principal_ideals_finite: bool,
    pub has_empty_extent_description: EmptyExtent,
}

/// The maximal elements of the whole space and whether they cover it
/// (`D = down(max(D))`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MaxCover {
    /// `max(D)` is this finite antichain and `D = down(max(D))`.
    Finite(Vec<Description>),
    /// `D = down(max(D))` holds but `max(D)` is infinite.
    Infinite,
    /// Some chain of `D` has no upper bound; `max(D)` does not cover `D`.
    Uncovered,
}

/// Result of the pairwise multi-infima oracle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairInfima {
    pub members: Vec<Description>,
    /// `{c, d}^l = down(members)`.
    pub complete: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescriptionSpace {
    kind: SpaceKind,
    top: bool,
}

impl DescriptionSpace {
    pub fn new(kind: SpaceKind) -> Self {
        DescriptionSpace { kind, top: false }
    }

    pub fn itemsets<I, S>(attributes: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Self::new(SpaceKind::Itemset { attributes: attributes.into_iter().map(Into::into).collect() })
    }

    pub fn words(alphabet: &str) -> Self {
        Self::new(SpaceKind::Words { alphabet: alphabet.chars().collect() })
    }

    pub fn intervals() -> Self {
        Self::new(SpaceKind::Intervals { grid: BTreeSet::new() })
    }

    pub fn rays() -> Self {
        Self::new(SpaceKind::Rays { grid: BTreeSet::new() })
    }

    pub fn explicit(poset: FinitePoset) -> Self {
        Self::new(SpaceKind::Explicit(poset))
    }

    pub fn omega() -> Self {
        Self::new(SpaceKind::Omega)
    }

    pub fn kind(&self) -> &SpaceKind {
        &self.kind
    }

    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            SpaceKind::Itemset { .. } => "itemset",
            SpaceKind::Words { .. } => "words",
            SpaceKind::Intervals { .. } => "intervals",
            SpaceKind::Rays { .. } => "rays",
            SpaceKind::Explicit(_) => "explicit",
            SpaceKind::Omega => "omega",
        }
    }

    pub fn is_top_augmented(&self) -> bool {
        self.top
    }

    /// Adds a synthetic `TOP` above every description. A second
    /// augmentation is rejected.
    pub fn augment_with_top(mut self) -> Result<Self> {
        if self.top {
            return Err(Error::AlreadyAugmented);
        }
        self.top = true;
        Ok(self)
    }

    pub fn caps(&self) -> SpaceCaps {
        let (native_top, finite, empty) = match &self.kind {
            SpaceKind::Itemset { .. } => (true, true, EmptyExtent::PerSetup),
            SpaceKind::Words { .. } => (false, true, EmptyExtent::Yes),
            SpaceKind::Intervals { .. } => (true, true, EmptyExtent::Yes),
            SpaceKind::Rays { .. } => (false, true, EmptyExtent::Yes),
            SpaceKind::Explicit(p) => (p.top().is_some(), true, EmptyExtent::PerSetup),
            SpaceKind::Omega => (false, false, EmptyExtent::PerSetup),
        };
        SpaceCaps {
            has_top: native_top || self.top,
            supports_minf_oracle: true,
            principal_ideals_finite: finite,
            has_empty_extent_description: if self.top { EmptyExtent::Yes } else { empty },
        }
    }

    /// Adds data values to the grid of an interval or ray space.
    pub fn extend_grid<I: IntoIterator<Item = Rational>>(&mut self, values: I) {
        if let SpaceKind::Intervals { grid } | SpaceKind::Rays { grid } = &mut self.kind {
            grid.extend(values);
        }
    }

    pub fn grid(&self) -> Option<&BTreeSet<Rational>> {
        match &self.kind {
            SpaceKind::Intervals { grid } | SpaceKind::Rays { grid } => Some(grid),
            _ => None,
        }
    }

    /// Greatest element of the space, if it has one.
    pub fn top(&self) -> Option<Description> {
        if self.top {
            return Some(Description::Top);
        }
        match &self.kind {
            SpaceKind::Itemset { attributes } => Some(Description::Itemset(attributes.clone())),
            SpaceKind::Intervals { .. } => Some(Description::EmptyInterval),
            SpaceKind::Explicit(p) => p.top().map(|t| Description::Explicit(p.id(t).to_owned())),
            _ => None,
        }
    }

    pub fn max_cover(&self) -> MaxCover {
        if let Some(t) = self.top() {
            return MaxCover::Finite(alloc::vec![t]);
        }
        match &self.kind {
            SpaceKind::Explicit(p) => MaxCover::Finite(
                p.maximal(&p.all()).iter().map(|i| Description::Explicit(p.id(i).to_owned())).collect(),
            ),
            SpaceKind::Omega => {
                MaxCover::Finite(alloc::vec![Description::Omega(OmegaSymbol::A), Description::Omega(OmegaSymbol::B)])
            }
            // Every ray lies below a point `value = v`, but there are infinitely many points.
            SpaceKind::Rays { .. } => MaxCover::Infinite,
            // Every word extends to a longer one.
            SpaceKind::Words { .. } => MaxCover::Uncovered,
            SpaceKind::Itemset { .. } | SpaceKind::Intervals { .. } => unreachable!("spaces with a native top"),
        }
    }

    /// Whether `d` is maximal in the whole space (not only in a fragment).
    pub fn is_maximal(&self, d: &Description) -> Result<bool> {
        self.check(d)?;
        if let Some(t) = self.top() {
            return Ok(*d == t);
        }
        Ok(match (&self.kind, d) {
            (SpaceKind::Explicit(p), Description::Explicit(id)) => {
                let x = p.index_of(id).expect("checked");
                p.up_set(x).len() == 1
            }
            (SpaceKind::Omega, Description::Omega(s)) => !matches!(s, OmegaSymbol::C(_)),
            (SpaceKind::Rays { .. }, Description::Ray(r)) => matches!(r, Ray::Eq(_)),
            _ => false,
        })
    }

    fn mismatch(&self, d: &Description) -> Error {
        Error::SpaceMismatch { space: self.kind_name(), description: d.to_string() }
    }

    /// Checks that `d` is a well-formed member of this space.
    pub fn check(&self, d: &Description) -> Result<()> {
        match (&self.kind, d) {
            (_, Description::Top) if self.top => Ok(()),
            (SpaceKind::Itemset { attributes }, Description::Itemset(items)) => {
                match items.iter().find(|i| !attributes.contains(*i)) {
                    Some(i) => Err(Error::InvalidDescription(format!("unknown attribute `{i}`"))),
                    None => Ok(()),
                }
            }
            (SpaceKind::Words { alphabet }, Description::Word(w)) => {
                if w.is_empty() {
                    Err(Error::InvalidDescription("the empty word is not a description".into()))
                } else if let Some(c) = w.chars().find(|c| !alphabet.contains(c)) {
                    Err(Error::InvalidDescription(format!("letter `{c}` not in alphabet")))
                } else {
                    Ok(())
                }
            }
            (SpaceKind::Intervals { .. }, Description::Interval { lo, hi }) => {
                if lo <= hi {
                    Ok(())
                } else {
                    Err(Error::InvalidDescription(format!("interval {d} has lo > hi")))
                }
            }
            (SpaceKind::Intervals { .. }, Description::EmptyInterval) => Ok(()),
            (SpaceKind::Rays { .. }, Description::Ray(_)) => Ok(()),
            (SpaceKind::Explicit(p), Description::Explicit(id)) => {
                p.index_of(id).map(|_| ()).ok_or_else(|| Error::UnknownElement(id.clone()))
            }
            (SpaceKind::Omega, Description::Omega(_)) => Ok(()),
            _ => Err(self.mismatch(d)),
        }
    }

    /// `c ⊑ d`.
    pub fn subsumes(&self, c: &Description, d: &Description) -> Result<bool> {
        self.check(c)?;
        self.check(d)?;
        Ok(self.leq(c, d))
    }

    /// `c ⊑ d` for descriptions already known to belong to the space.
    pub(crate) fn leq(&self, c: &Description, d: &Description) -> bool {
        use Description as D;
        match (c, d) {
            (_, D::Top) => true,
            (D::Top, _) => false,
            (D::Itemset(a), D::Itemset(b)) => a.is_subset(b),
            (D::Word(a), D::Word(b)) => b.contains(a.as_str()),
            (_, D::EmptyInterval) => true,
            (D::EmptyInterval, _) => false,
            (D::Interval { lo: l1, hi: h1 }, D::Interval { lo: l2, hi: h2 }) => l1 <= l2 && h2 <= h1,
            (D::Ray(a), D::Ray(b)) => ray_leq(a, b),
            (D::Explicit(a), D::Explicit(b)) => match &self.kind {
                SpaceKind::Explicit(p) => match (p.index_of(a), p.index_of(b)) {
                    (Some(x), Some(y)) => p.leq(x, y),
                    _ => false,
                },
                _ => false,
            },
            (D::Omega(a), D::Omega(b)) => omega_leq(a, b),
            _ => false,
        }
    }

    /// `{c | c ⊑ d}` under the grid convention, sorted.
    pub fn principal_ideal(&self, d: &Description) -> Result<Vec<Description>> {
        self.check(d)?;
        let mut out: Vec<Description> = match d {
            Description::Top => match &self.kind {
                SpaceKind::Itemset { attributes } => {
                    let mut v = itemset_subsets(attributes);
                    v.push(Description::Top);
                    v
                }
                SpaceKind::Explicit(p) => {
                    let mut v: Vec<Description> =
                        p.ids().iter().map(|id| Description::Explicit(id.clone())).collect();
                    v.push(Description::Top);
                    v
                }
                _ => return Err(Error::InfiniteIdeal(d.to_string())),
            },
            Description::Itemset(items) => itemset_subsets(items),
            Description::Word(w) => {
                let mut set = BTreeSet::new();
                for (start, _) in w.char_indices() {
                    for (end, ch) in w[start..].char_indices() {
                        set.insert(w[start..start + end + ch.len_utf8()].to_owned());
                    }
                }
                set.into_iter().map(Description::Word).collect()
            }
            Description::Interval { lo, hi } => {
                let grid = self.grid().expect("interval space");
                let mut v = alloc::vec![d.clone()];
                for a in grid.iter().filter(|a| *a <= lo) {
                    for b in grid.iter().filter(|b| *b >= hi) {
                        v.push(Description::Interval { lo: *a, hi: *b });
                    }
                }
                v
            }
            Description::EmptyInterval => {
                let grid = self.grid().expect("interval space");
                let mut v = alloc::vec![Description::EmptyInterval];
                for a in grid.iter() {
                    for b in grid.iter().filter(|b| *b >= a) {
                        v.push(Description::Interval { lo: *a, hi: *b });
                    }
                }
                v
            }
            Description::Ray(r) => {
                let grid = self.grid().expect("ray space");
                let mut v = alloc::vec![d.clone()];
                for &g in grid {
                    for cand in [Ray::Eq(g), Ray::AtMost(g), Ray::AtLeast(g)] {
                        if ray_leq(&cand, r) {
                            v.push(Description::Ray(cand));
                        }
                    }
                }
                v
            }
            Description::Explicit(id) => {
                let SpaceKind::Explicit(p) = &self.kind else { unreachable!() };
                let x = p.index_of(id).expect("checked");
                p.ids_of(p.down_set(x)).map(|s| Description::Explicit(s.to_owned())).collect()
            }
            Description::Omega(OmegaSymbol::C(i)) => {
                (0..=*i).map(|k| Description::Omega(OmegaSymbol::C(k))).collect()
            }
            Description::Omega(_) => return Err(Error::InfiniteIdeal(d.to_string())),
        };
        if self.top && *d == Description::Top && !out.contains(&Description::Top) {
            out.push(Description::Top);
        }
        out.sort();
        out.dedup();
        Ok(out)
    }

    /// `minf({c, d}) = max({c, d}^l)` with the flag `{c, d}^l = down(minf)`.
    pub fn minf_of_pair(&self, c: &Description, d: &Description) -> Result<PairInfima> {
        self.check(c)?;
        self.check(d)?;
        if !self.caps().supports_minf_oracle {
            return Err(Error::UnsupportedCapability("the multi-infima oracle"));
        }
        if self.leq(c, d) {
            return Ok(PairInfima { members: alloc::vec![c.clone()], complete: true });
        }
        if self.leq(d, c) {
            return Ok(PairInfima { members: alloc::vec![d.clone()], complete: true });
        }
        match (c, d) {
            (Description::Omega(x), Description::Omega(y)) => {
                // Incomparable omega symbols are exactly `a` and `b`: their
                // lower bounds form the whole chain, which has no maximum.
                debug_assert!(matches!((x, y), (OmegaSymbol::A, OmegaSymbol::B) | (OmegaSymbol::B, OmegaSymbol::A)));
                Ok(PairInfima { members: Vec::new(), complete: false })
            }
            (Description::Itemset(a), Description::Itemset(b)) => Ok(PairInfima {
                members: alloc::vec![Description::Itemset(a.intersection(b).cloned().collect())],
                complete: true,
            }),
            (Description::Interval { lo: l1, hi: h1 }, Description::Interval { lo: l2, hi: h2 }) => {
                Ok(PairInfima {
                    members: alloc::vec![Description::Interval { lo: *l1.min(l2), hi: *h1.max(h2) }],
                    complete: true,
                })
            }
            _ => {
                let ic = self.principal_ideal(c)?;
                let id = self.principal_ideal(d)?;
                let common: Vec<Description> = ic.into_iter().filter(|x| id.contains(x)).collect();
                Ok(PairInfima { members: self.maximal(&common), complete: true })
            }
        }
    }

    /// Maximal elements of a finite set of descriptions, sorted.
    pub fn maximal(&self, set: &[Description]) -> Vec<Description> {
        let mut out: Vec<Description> = set
            .iter()
            .filter(|x| !set.iter().any(|y| y != *x && self.leq(x, y)))
            .cloned()
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Minimal elements of a finite set of descriptions, sorted.
    pub fn minimal(&self, set: &[Description]) -> Vec<Description> {
        let mut out: Vec<Description> = set
            .iter()
            .filter(|x| !set.iter().any(|y| y != *x && self.leq(y, x)))
            .cloned()
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// `↓δ[G]` as an explicit finite poset: every description realized by
    /// at least one of `deltas`.
    pub fn restrict_to_relevant(&self, deltas: &[Description]) -> Result<Fragment> {
        let mut all = BTreeSet::new();
        for d in deltas {
            all.extend(self.principal_ideal(d)?);
        }
        Fragment::new(self, all.into_iter().collect())
    }

    /// Descriptions outside `↓δ[G]` that are needed to see every extent of
    /// the space: a description with empty extent where one exists, and for
    /// the omega space a finite stand-in for the infinite chain.
    pub(crate) fn extent_witnesses(&self, deltas: &[Description]) -> Vec<Description> {
        let mut out = Vec::new();
        if self.top {
            out.push(Description::Top);
        }
        match &self.kind {
            SpaceKind::Itemset { attributes } => out.push(Description::Itemset(attributes.clone())),
            SpaceKind::Words { alphabet } => {
                // Longer than every object description, so it covers nothing.
                let longest = deltas
                    .iter()
                    .filter_map(|d| match d {
                        Description::Word(w) => Some(w.chars().count()),
                        _ => None,
                    })
                    .max()
                    .unwrap_or(0);
                if let Some(&letter) = alphabet.iter().next() {
                    out.push(Description::Word(core::iter::repeat_n(letter, longest + 1).collect()));
                }
            }
            SpaceKind::Intervals { .. } => out.push(Description::EmptyInterval),
            SpaceKind::Rays { grid } => {
                let beyond = grid.iter().next_back().map_or(Rational::from_integer(0), |m| m + 1);
                out.push(Description::Ray(Ray::AtLeast(beyond)));
            }
            SpaceKind::Explicit(p) => {
                out.extend(p.ids().iter().map(|id| Description::Explicit(id.clone())));
            }
            SpaceKind::Omega => {
                let highest = deltas
                    .iter()
                    .filter_map(|d| match d {
                        Description::Omega(OmegaSymbol::C(i)) => Some(*i),
                        _ => None,
                    })
                    .max()
                    .unwrap_or(0);
                out.push(Description::Omega(OmegaSymbol::A));
                out.push(Description::Omega(OmegaSymbol::B));
                out.extend((0..=highest + 1).map(|i| Description::Omega(OmegaSymbol::C(i))));
            }
        }
        out
    }

    /// Parses a canonical literal (the [`Display`](fmt::Display) form) in
    /// this space.
    pub fn parse(&self, literal: &str) -> Result<Description> {
        let s = literal.trim();
        if s == "TOP" && self.top {
            return Ok(Description::Top);
        }
        let bad = || Error::InvalidDescription(format!("cannot parse `{s}` in the {} space", self.kind_name()));
        let d = match &self.kind {
            SpaceKind::Itemset { .. } => {
                let inner = s.strip_prefix('{').and_then(|r| r.strip_suffix('}')).ok_or_else(bad)?;
                Description::Itemset(
                    inner.split(',').map(str::trim).filter(|x| !x.is_empty()).map(str::to_owned).collect(),
                )
            }
            SpaceKind::Words { .. } => Description::Word(s.to_owned()),
            SpaceKind::Intervals { .. } => {
                if s == "[]" {
                    Description::EmptyInterval
                } else if let Some(inner) = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
                    let (lo, hi) = inner.split_once(',').ok_or_else(bad)?;
                    Description::Interval { lo: parse_rational(lo)?, hi: parse_rational(hi)? }
                } else {
                    Description::point(parse_rational(s)?)
                }
            }
            SpaceKind::Rays { .. } => {
                let body = s.strip_prefix("value").unwrap_or(s).trim_start();
                if let Some(v) = body.strip_prefix("<=") {
                    Description::Ray(Ray::AtMost(parse_rational(v)?))
                } else if let Some(v) = body.strip_prefix(">=") {
                    Description::Ray(Ray::AtLeast(parse_rational(v)?))
                } else if let Some(v) = body.strip_prefix('=') {
                    Description::Ray(Ray::Eq(parse_rational(v)?))
                } else {
                    Description::Ray(Ray::Eq(parse_rational(body)?))
                }
            }
            SpaceKind::Explicit(_) => Description::Explicit(s.to_owned()),
            SpaceKind::Omega => match s {
                "a" => Description::Omega(OmegaSymbol::A),
                "b" => Description::Omega(OmegaSymbol::B),
                _ => {
                    let idx = s
                        .strip_prefix("c(")
                        .and_then(|r| r.strip_suffix(')'))
                        .or_else(|| s.strip_prefix('c'))
                        .ok_or_else(bad)?;
                    Description::Omega(OmegaSymbol::C(idx.parse().map_err(|_| bad())?))
                }
            },
        };
        self.check(&d)?;
        Ok(d)
    }
}

fn ray_leq(c: &Ray, d: &Ray) -> bool {
    match (c, d) {
        (Ray::Eq(a), Ray::Eq(b)) => a == b,
        (Ray::AtMost(a), Ray::AtMost(b)) => a >= b,
        (Ray::AtLeast(a), Ray::AtLeast(b)) => a <= b,
        (Ray::AtMost(a), Ray::Eq(v)) => v <= a,
        (Ray::AtLeast(a), Ray::Eq(v)) => v >= a,
        _ => false,
    }
}

fn omega_leq(c: &OmegaSymbol, d: &OmegaSymbol) -> bool {
    match (c, d) {
        (OmegaSymbol::C(i), OmegaSymbol::C(j)) => i <= j,
        (OmegaSymbol::C(_), _) => true,
        (x, y) => x == y,
    }
}

fn itemset_subsets(items: &BTreeSet<String>) -> Vec<Description> {
    let v: Vec<&String> = items.iter().collect();
    assert!(v.len() < 32, "itemset with {} items", v.len());
    (0..1u32 << v.len())
        .map(|mask| {
            Description::Itemset(
                v.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, s)| (*s).clone()).collect(),
            )
        })
        .collect()
}

/// A finite set of descriptions together with the induced order, indexed
/// like the underlying [`FinitePoset`] (by canonical literal).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fragment {
    descriptions: Vec<Description>,
    poset: FinitePoset,
}

impl Fragment {
    pub fn new(space: &DescriptionSpace, descriptions: Vec<Description>) -> Result<Self> {
        let ids: Vec<String> = descriptions.iter().map(ToString::to_string).collect();
        let poset = FinitePoset::from_relation_fn(ids, |a, b| space.leq(&descriptions[a], &descriptions[b]))?;
        let mut ordered = descriptions;
        ordered.sort_by_cached_key(ToString::to_string);
        Ok(Fragment { descriptions: ordered, poset })
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn descriptions(&self) -> &[Description] {
        &self.descriptions
    }

    pub fn description(&self, i: usize) -> &Description {
        &self.descriptions[i]
    }

    pub fn len(&self) -> usize {
        self.descriptions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.descriptions.is_empty()
    }

    pub fn index_of(&self, d: &Description) -> Option<usize> {
        self.poset.index_of(&d.to_string())
    }
}
