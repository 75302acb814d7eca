//! Order-theoretic pattern mining over finite data.
//!
//! The crate is organised bottom-up:
//!
//! - [`poset`]: explicit finite posets (closure, Hasse diagram, bounds,
//!   minimal/maximal elements, meets, multi-infima, classification).
//! - [`descspace`]: description spaces (itemsets, words, intervals, rays,
//!   explicit posets and the intensional omega chain).
//! - [`setup`]: pattern setups `(G, D, delta)` with their extent and cover
//!   operators, support-closed descriptions, upper approximations and the
//!   multistructure test.
//! - [`structure`]: pattern structures, the intent operator and concept
//!   lattices.
//! - [`completion`]: antichain, direct and Dedekind-MacNeille completions.
//! - [`fixtures`]: small reference datasets.
//!
//! Everything here is `no_std` + `alloc`; file formats and the CLI live in
//! the `psetup` crate.
#![no_std]

extern crate alloc;

pub mod bits;
pub mod completion;
pub mod descspace;
mod error;
pub mod fixtures;
pub mod poset;
pub mod setup;
pub mod structure;

pub use bits::IndexSet;
pub use completion::{
    AntichainCompletion, AntichainPoset, CompletionReport, DedekindMacNeille, DirectCompletion,
    IffTheoremReport,
};
pub use descspace::{Description, DescriptionSpace, MaxCover, OmegaSymbol, Ray, SpaceCaps, SpaceKind};
pub use error::Error;
pub use poset::{ClassificationReport, FinitePoset};
pub use setup::{Antichain, Caps, Cover, ExtentFamily, PatternSetup};
pub use structure::{Concept, ConceptLattice, PatternStructure};

/// Rational numbers used by the interval and ray spaces.
pub type Rational = num_rational::Ratio<i64>;

pub type Result<T, E = Error> = core::result::Result<T, E>;
