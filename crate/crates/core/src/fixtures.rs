//! Small reference datasets.
//!
//! | name       | space                     | objects                                   |
//! |------------|---------------------------|-------------------------------------------|
//! | `SEQ`      | words over `abc`          | `cab`, `cbba`, `a`, `bbc`                 |
//! | `ITEM`     | itemsets over `{a,b,c}`   | `{a,b,c}`, `{a}`, `{a}`, `{b,c}`          |
//! | `NUM`      | rays                      | `value=1`, `value=3`, `value=5`, `value=9`|
//! | `INTERVAL` | intervals                 | `[1,1]`, `[3,3]`, `[5,5]`, `[9,9]`        |
//! | `OMEGA`    | omega                     | `a`, `b`                                  |
//! | `EXP(n)`   | explicit `{{i}} ∪ {[n]∖{i}}` | `g_i ↦ [n]∖{i}`                        |
//!
//! Objects are named `g1, g2, ...`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::descspace::{Description, DescriptionSpace, OmegaSymbol, Ray};
use crate::poset::FinitePoset;
use crate::setup::PatternSetup;
use crate::{Error, Rational, Result};

/// Fixture names accepted by [`by_name`].
pub const NAMES: &[&str] = &["SEQ", "ITEM", "NUM", "INTERVAL", "OMEGA", "EXP"];

fn named(descs: Vec<Description>) -> Vec<(String, Description)> {
    descs.into_iter().enumerate().map(|(i, d)| (format!("g{}", i + 1), d)).collect()
}

fn build(space: DescriptionSpace, descs: Vec<Description>) -> PatternSetup {
    PatternSetup::new(space, named(descs)).expect("fixture is well-formed")
}

fn seq_words() -> Vec<Description> {
    ["cab", "cbba", "a", "bbc"].iter().map(|w| Description::word(w)).collect()
}

pub fn seq() -> PatternSetup {
    build(DescriptionSpace::words("abc"), seq_words())
}

/// `SEQ` with a synthetic top.
pub fn seq_top() -> PatternSetup {
    build(DescriptionSpace::words("abc").augment_with_top().expect("fresh space"), seq_words())
}

pub fn item() -> PatternSetup {
    build(
        DescriptionSpace::itemsets(["a", "b", "c"]),
        alloc::vec![
            Description::itemset(["a", "b", "c"]),
            Description::itemset(["a"]),
            Description::itemset(["a"]),
            Description::itemset(["b", "c"]),
        ],
    )
}

const VALUES: [i64; 4] = [1, 3, 5, 9];

pub fn num() -> PatternSetup {
    build(
        DescriptionSpace::rays(),
        VALUES.iter().map(|&v| Description::Ray(Ray::Eq(Rational::from_integer(v)))).collect(),
    )
}

pub fn interval() -> PatternSetup {
    build(
        DescriptionSpace::intervals(),
        VALUES.iter().map(|&v| Description::point(Rational::from_integer(v))).collect(),
    )
}

fn omega_symbols() -> Vec<Description> {
    alloc::vec![Description::Omega(OmegaSymbol::A), Description::Omega(OmegaSymbol::B)]
}

pub fn omega() -> PatternSetup {
    build(DescriptionSpace::omega(), omega_symbols())
}

pub fn omega_top() -> PatternSetup {
    build(DescriptionSpace::omega().augment_with_top().expect("fresh space"), omega_symbols())
}

fn set_label(items: impl Iterator<Item = usize>) -> String {
    let parts: Vec<String> = items.map(|i| format!("{i}")).collect();
    format!("{{{}}}", parts.join(","))
}

/// The explicit space `{{i} | i ∈ [n]} ∪ {[n]∖{i} | i ∈ [n]}` ordered by
/// inclusion, for `n >= 3`.
pub fn exp_space(n: usize) -> Result<FinitePoset> {
    if !(3..=64).contains(&n) {
        return Err(Error::InvalidDescription(format!("EXP needs 3 <= n <= 64, got {n}")));
    }
    let singletons: Vec<String> = (1..=n).map(|i| set_label(core::iter::once(i))).collect();
    let coatoms: Vec<String> = (1..=n).map(|i| set_label((1..=n).filter(move |&j| j != i))).collect();
    let mut relation = Vec::new();
    for i in 1..=n {
        for j in (1..=n).filter(|&j| j != i) {
            relation.push((singletons[j - 1].clone(), coatoms[i - 1].clone()));
        }
    }
    let elements: Vec<String> = singletons.into_iter().chain(coatoms).collect();
    FinitePoset::build(&elements, &relation)
}

/// `g_i ↦ [n]∖{i}` over [`exp_space`].
pub fn exp(n: usize) -> Result<PatternSetup> {
    let space = exp_space(n)?;
    let descs = (1..=n).map(|i| Description::Explicit(set_label((1..=n).filter(|&j| j != i)))).collect();
    PatternSetup::new(DescriptionSpace::explicit(space), named(descs))
}

/// The common-substring poset of `ab` and `ba`: `eps` below `a` and `b`,
/// both of which lie below `ab` and `ba`.
pub fn ab_ba() -> FinitePoset {
    FinitePoset::build(
        &["eps", "a", "b", "ab", "ba"],
        &[("eps", "a"), ("eps", "b"), ("a", "ab"), ("a", "ba"), ("b", "ab"), ("b", "ba")],
    )
    .expect("fixture is well-formed")
}

/// Looks a fixture up by name (case-insensitive). `EXP` takes `n`.
pub fn by_name(name: &str, n: Option<usize>, augment_top: bool) -> Result<PatternSetup> {
    let upper = name.to_ascii_uppercase();
    let setup = match (upper.as_str(), augment_top) {
        ("SEQ", false) => seq(),
        ("SEQ", true) => seq_top(),
        ("OMEGA", false) => omega(),
        ("OMEGA", true) => omega_top(),
        ("ITEM", _) => item(),
        ("NUM", _) => num(),
        ("INTERVAL", _) => interval(),
        ("EXP", _) => exp(n.unwrap_or(4))?,
        _ => return Err(Error::UnknownFixture(name.into())),
    };
    if augment_top && !matches!(upper.as_str(), "SEQ" | "OMEGA") {
        let space = setup.space().clone().augment_with_top()?;
        let objects: Vec<(String, Description)> =
            setup.objects().iter().cloned().zip(setup.deltas().iter().cloned()).collect();
        return PatternSetup::new(space, objects);
    }
    Ok(setup)
}
