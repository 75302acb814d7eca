//! On-disk formats: poset and dataset JSON, plus CSV ingestion.

use std::collections::BTreeSet;
use std::io::Read;
use std::path::Path;

use psetup_core::descspace::Ray;
use psetup_core::{Description, DescriptionSpace, FinitePoset, PatternSetup, SpaceKind};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::CliError;

/// `{"elements": [...], "leq": [[x, y], ...]}`. The relation need not be
/// reflexive or transitive.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetFile {
    pub elements: Vec<String>,
    #[serde(default)]
    pub leq: Vec<(String, String)>,
}

impl PosetFile {
    pub fn to_poset(&self) -> Result<FinitePoset, CliError> {
        Ok(FinitePoset::build(&self.elements, &self.leq)?)
    }

    /// Canonical form: sorted elements and the Hasse edges.
    pub fn from_poset(p: &FinitePoset) -> Self {
        PosetFile {
            elements: p.ids().to_vec(),
            leq: p.hasse_edges().iter().map(|&(a, b)| (p.id(a).to_owned(), p.id(b).to_owned())).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SpaceKindFile {
    Itemset { attributes: Vec<String> },
    Words { alphabet: String },
    Intervals,
    Rays,
    Explicit { poset: PosetFile },
    Omega,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceFile {
    #[serde(flatten)]
    pub kind: SpaceKindFile,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub augment_top: bool,
}

impl SpaceFile {
    pub fn to_space(&self) -> Result<DescriptionSpace, CliError> {
        let space = match &self.kind {
            SpaceKindFile::Itemset { attributes } => DescriptionSpace::itemsets(attributes),
            SpaceKindFile::Words { alphabet } => DescriptionSpace::words(alphabet),
            SpaceKindFile::Intervals => DescriptionSpace::intervals(),
            SpaceKindFile::Rays => DescriptionSpace::rays(),
            SpaceKindFile::Explicit { poset } => DescriptionSpace::explicit(poset.to_poset()?),
            SpaceKindFile::Omega => DescriptionSpace::omega(),
        };
        Ok(if self.augment_top { space.augment_with_top()? } else { space })
    }

    pub fn from_space(space: &DescriptionSpace) -> Self {
        let kind = match space.kind() {
            SpaceKind::Itemset { attributes } => SpaceKindFile::Itemset { attributes: attributes.iter().cloned().collect() },
            SpaceKind::Words { alphabet } => SpaceKindFile::Words { alphabet: alphabet.iter().collect() },
            SpaceKind::Intervals { .. } => SpaceKindFile::Intervals,
            SpaceKind::Rays { .. } => SpaceKindFile::Rays,
            SpaceKind::Explicit(p) => SpaceKindFile::Explicit { poset: PosetFile::from_poset(p) },
            SpaceKind::Omega => SpaceKindFile::Omega,
        };
        SpaceFile { kind, augment_top: space.is_top_augmented() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ObjectFile {
    pub id: String,
    /// A literal string, or for itemsets also an array of attributes.
    pub desc: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DatasetFile {
    pub space: SpaceFile,
    pub objects: Vec<ObjectFile>,
}

impl DatasetFile {
    pub fn to_setup(&self, augment_top: bool) -> Result<PatternSetup, CliError> {
        let mut space = self.space.to_space()?;
        if augment_top && !space.is_top_augmented() {
            space = space.augment_with_top()?;
        }
        let objects = self
            .objects
            .iter()
            .map(|o| Ok((o.id.clone(), parse_desc(&space, &o.desc)?)))
            .collect::<Result<Vec<_>, CliError>>()?;
        Ok(PatternSetup::new(space, objects)?)
    }

    pub fn from_setup(setup: &PatternSetup) -> Self {
        let objects = setup
            .objects()
            .iter()
            .zip(setup.deltas())
            .map(|(id, d)| ObjectFile { id: id.clone(), desc: desc_value(d) })
            .collect();
        DatasetFile { space: SpaceFile::from_space(setup.space()), objects }
    }
}

fn parse_desc(space: &DescriptionSpace, v: &Value) -> Result<Description, CliError> {
    match v {
        Value::String(s) => Ok(space.parse(s)?),
        Value::Array(items) if matches!(space.kind(), SpaceKind::Itemset { .. }) => {
            let names = items
                .iter()
                .map(|x| x.as_str().map(str::to_owned).ok_or_else(|| CliError::parse("itemset members must be strings")))
                .collect::<Result<BTreeSet<String>, _>>()?;
            let d = Description::Itemset(names);
            space.check(&d)?;
            Ok(d)
        }
        other => Err(CliError::parse(format!("unsupported description value {other}"))),
    }
}

/// Itemsets as attribute arrays, everything else as its literal.
pub fn desc_value(d: &Description) -> Value {
    match d {
        Description::Itemset(items) => Value::from(items.iter().cloned().collect::<Vec<_>>()),
        other => Value::from(other.to_string()),
    }
}

/// Either kind of JSON input.
pub enum Input {
    Poset(PosetFile),
    Dataset(DatasetFile),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum CsvSpace {
    Itemset,
    Rays,
    Intervals,
}

pub fn read_source(path: &Path) -> Result<String, CliError> {
    let mut text = String::new();
    if path.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut text)?;
    } else {
        text = std::fs::read_to_string(path)?;
    }
    Ok(text)
}

fn is_csv(path: &Path) -> bool {
    path.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv"))
}

/// Reads a poset or dataset. CSV is chosen by the `.csv` extension or by
/// an explicit `csv_space`.
pub fn read_input(path: &Path, csv_space: Option<CsvSpace>) -> Result<Input, CliError> {
    let text = read_source(path)?;
    if csv_space.is_some() || is_csv(path) {
        return Ok(Input::Dataset(read_csv(&text, csv_space)?));
    }
    let value: Value = serde_json::from_str(&text).map_err(|e| CliError::parse(e.to_string()))?;
    if value.get("elements").is_some() {
        Ok(Input::Poset(serde_json::from_value(value).map_err(|e| CliError::parse(e.to_string()))?))
    } else {
        Ok(Input::Dataset(serde_json::from_value(value).map_err(|e| CliError::parse(e.to_string()))?))
    }
}

/// First column is the object id. A single further column named `value`
/// is numeric (rays unless told otherwise); otherwise every further column
/// is a 0/1 attribute.
pub fn read_csv(text: &str, space: Option<CsvSpace>) -> Result<DatasetFile, CliError> {
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
    let headers: Vec<String> = reader.headers().map_err(csv_err)?.iter().map(str::to_owned).collect();
    if headers.len() < 2 {
        return Err(CliError::parse("CSV needs an id column and at least one data column"));
    }
    let columns = &headers[1..];
    let space = space.unwrap_or(if columns == ["value"] { CsvSpace::Rays } else { CsvSpace::Itemset });
    let mut objects = Vec::new();
    for (line, record) in reader.records().enumerate() {
        let record = record.map_err(csv_err)?;
        let id = record.get(0).unwrap_or_default().to_owned();
        let cells: Vec<&str> = record.iter().skip(1).collect();
        let desc = match space {
            CsvSpace::Itemset => {
                let mut items = Vec::new();
                for (name, cell) in columns.iter().zip(&cells) {
                    match *cell {
                        "1" => items.push(name.clone()),
                        "0" => {}
                        other => {
                            return Err(CliError::parse(format!("row {}: `{other}` is not 0 or 1", line + 2)));
                        }
                    }
                }
                Value::from(items)
            }
            CsvSpace::Rays | CsvSpace::Intervals => {
                if cells.len() != 1 {
                    return Err(CliError::parse("numeric CSV takes exactly one value column"));
                }
                let v = psetup_core::descspace::parse_rational(cells[0])?;
                let d = match space {
                    CsvSpace::Rays => Description::Ray(Ray::Eq(v)),
                    _ => Description::point(v),
                };
                desc_value(&d)
            }
        };
        objects.push(ObjectFile { id, desc });
    }
    let kind = match space {
        CsvSpace::Itemset => SpaceKindFile::Itemset { attributes: columns.to_vec() },
        CsvSpace::Rays => SpaceKindFile::Rays,
        CsvSpace::Intervals => SpaceKindFile::Intervals,
    };
    Ok(DatasetFile { space: SpaceFile { kind, augment_top: false }, objects })
}

fn csv_err(e: csv::Error) -> CliError {
    CliError::parse(e.to_string())
}
