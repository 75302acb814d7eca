//! JSON report shapes and DOT export.

use std::fmt::Write as _;

use psetup_core::completion::{CompletionKind, CompletionReport};
use psetup_core::poset::CheckCoverage;
use psetup_core::setup::SubsetReport;
use psetup_core::structure::ConceptLattice;
use psetup_core::{ClassificationReport, FinitePoset, IndexSet, PatternSetup};
use serde::Serialize;
use serde_json::Value;

pub fn objects(setup: &PatternSetup, a: &IndexSet) -> Vec<String> {
    setup.object_ids(a).map(str::to_owned).collect()
}

pub fn families(setup: &PatternSetup, sets: &[IndexSet]) -> Vec<Vec<String>> {
    sets.iter().map(|a| objects(setup, a)).collect()
}

#[derive(Serialize)]
pub struct ConceptJson {
    pub extent: Vec<String>,
    pub intent: Value,
}

#[derive(Serialize)]
pub struct LatticeJson {
    pub concepts: Vec<ConceptJson>,
    pub hasse: Vec<(usize, usize)>,
}

impl LatticeJson {
    pub fn new<I>(setup: &PatternSetup, lattice: &ConceptLattice<I>, intent: impl Fn(&I) -> Value) -> Self {
        LatticeJson {
            concepts: lattice
                .concepts
                .iter()
                .map(|c| ConceptJson { extent: objects(setup, &c.extent), intent: intent(&c.intent) })
                .collect(),
            hasse: lattice.hasse.clone(),
        }
    }

    /// Nodes labelled `extent` over `intent`, edges from lower to higher.
    pub fn to_dot(&self) -> String {
        let nodes = self.concepts.iter().map(|c| {
            let intent = match &c.intent {
                Value::String(s) => s.clone(),
                Value::Array(v) => {
                    let parts: Vec<String> = v.iter().map(|x| x.as_str().map_or_else(|| x.to_string(), str::to_owned)).collect();
                    format!("{{{}}}", parts.join(","))
                }
                other => other.to_string(),
            };
            vec![format!("{{{}}}", c.extent.join(",")), intent]
        });
        dot("concepts", nodes, &self.hasse)
    }
}

#[derive(Serialize)]
pub struct SubsetReportJson {
    pub holds: bool,
    pub witness: Option<Vec<String>>,
    pub failures: Vec<Vec<String>>,
}

impl SubsetReportJson {
    pub fn new(setup: &PatternSetup, r: &SubsetReport) -> Self {
        SubsetReportJson {
            holds: r.holds,
            witness: r.witness().map(|w| objects(setup, w)),
            failures: families(setup, &r.failures),
        }
    }
}

#[derive(Serialize)]
pub struct CompletionReportJson {
    pub kind: &'static str,
    pub base_extent_count: usize,
    pub completed_extent_count: usize,
    pub new_extents: Vec<Vec<String>>,
    pub is_structure_after: bool,
}

pub fn kind_name(kind: CompletionKind) -> &'static str {
    match kind {
        CompletionKind::Antichain => "antichain",
        CompletionKind::Direct => "direct",
    }
}

impl CompletionReportJson {
    pub fn new(setup: &PatternSetup, r: &CompletionReport) -> Self {
        CompletionReportJson {
            kind: kind_name(r.kind),
            base_extent_count: r.base_extent_count,
            completed_extent_count: r.completed_extent_count,
            new_extents: families(setup, &r.new_extents),
            is_structure_after: r.is_structure_after,
        }
    }
}

#[derive(Serialize)]
pub struct ClassificationJson {
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
    pub has_all_maximal: bool,
    pub has_all_minimal: bool,
    /// `"exhaustive"` or `"subsets<=k"`.
    pub multilattice_coverage: String,
}

impl From<&ClassificationReport> for ClassificationJson {
    fn from(r: &ClassificationReport) -> Self {
        ClassificationJson {
            is_chain: r.is_chain,
            is_antichain_poset: r.is_antichain_poset,
            has_top: r.has_top,
            has_bottom: r.has_bottom,
            is_meet_semilattice: r.is_meet_semilattice,
            is_join_semilattice: r.is_join_semilattice,
            is_lattice: r.is_lattice,
            is_complete_lattice: r.is_complete_lattice,
            is_benado_multilattice: r.is_benado_multilattice,
            is_meet_multisemilattice: r.is_meet_multisemilattice,
            is_join_multisemilattice: r.is_join_multisemilattice,
            is_multilattice: r.is_multilattice,
            has_all_maximal: r.has_all_maximal,
            has_all_minimal: r.has_all_minimal,
            multilattice_coverage: match r.multilattice_coverage {
                CheckCoverage::Exhaustive => "exhaustive".into(),
                CheckCoverage::Sampled { max_subset_size } => format!("subsets<={max_subset_size}"),
            },
        }
    }
}

/// Hasse diagram of a poset, nodes labelled by element id.
pub fn poset_dot(name: &str, p: &FinitePoset) -> String {
    dot(name, p.ids().iter().map(|id| vec![id.clone()]), p.hasse_edges())
}

/// `labels` give one or more lines per node.
fn dot(name: &str, labels: impl Iterator<Item = Vec<String>>, edges: &[(usize, usize)]) -> String {
    let mut out = format!("digraph {name} {{\n  rankdir=BT;\n  node [shape=box];\n");
    for (i, lines) in labels.enumerate() {
        let label: Vec<String> = lines.iter().map(|l| escape(l)).collect();
        let _ = writeln!(out, "  n{i} [label=\"{}\"];", label.join("\\n"));
    }
    for (a, b) in edges {
        let _ = writeln!(out, "  n{a} -> n{b};");
    }
    out.push_str("}\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}
