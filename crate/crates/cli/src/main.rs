//! `psetup`: analyse pattern setups and finite posets from the command line.
//!
//! Output is JSON on stdout (or DOT with `--output dot`). Failures print a
//! one-line JSON diagnostic on stderr and exit with 2 (invalid input) or 3
//! (a size cap was exceeded).

mod formats;
mod render;

use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use psetup_core::completion::{
    AntichainCompletion, AntichainPoset, CompletionKind, CompletionReport, DedekindMacNeille, DirectCompletion,
    DmComparison,
};
use psetup_core::setup::Caps;
use psetup_core::structure::PatternStructure;
use psetup_core::{fixtures, Cover, Description, Error, PatternSetup};
use serde::Serialize;
use serde_json::Value;

use formats::{CsvSpace, DatasetFile, Input, PosetFile};
use render::{families, objects, ClassificationJson, CompletionReportJson, LatticeJson, SubsetReportJson};

#[derive(Parser)]
#[command(name = "psetup", version, about = "Pattern setups, pattern structures and their completions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Lattice-theoretic properties of a poset file.
    ClassifyPoset(PosetArgs),
    /// The definable extents of a dataset.
    Extents(DataArgs),
    /// Minimal definable extents containing a set of objects.
    UpperApprox {
        #[command(flatten)]
        data: DataArgs,
        /// Comma-separated object ids.
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        objects: Vec<String>,
    },
    /// Descriptions that are maximal among those with the same support.
    SupportClosed(DataArgs),
    /// Descriptions grouped by extent, and the implications between them.
    Implications(DataArgs),
    /// The same objects over the poset of definable extents.
    MinimalRep(DataArgs),
    /// Whether every object subset has all its multi-infima.
    CheckMultistructure(DataArgs),
    /// Whether every object subset has a greatest common description.
    CheckStructure(DataArgs),
    /// The concept lattice, of the dataset itself or of a completion.
    Concepts(DataArgs),
    /// Completion report for a dataset, or the antichain completion of a poset.
    Complete(DataArgs),
    /// Dedekind-MacNeille completion of a poset file.
    Dm(PosetArgs),
    /// Extent counts before and after completion.
    Stats(DataArgs),
    /// Writes a built-in dataset; without a name, lists them.
    Fixtures {
        name: Option<String>,
        /// Size parameter for `EXP`.
        n: Option<usize>,
        #[arg(long)]
        augment_top: bool,
        #[arg(long)]
        pretty: bool,
    },
}

#[derive(Args)]
struct Common {
    #[arg(long, value_enum, default_value_t = Output::Json)]
    output: Output,
    #[arg(long)]
    pretty: bool,
    #[arg(long, default_value_t = Caps::default().max_objects)]
    max_objects: usize,
    #[arg(long, default_value_t = Caps::default().max_antichains)]
    max_antichains: usize,
}

#[derive(Args)]
struct PosetArgs {
    /// Poset JSON file, or `-` for stdin.
    input: PathBuf,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct DataArgs {
    /// Dataset JSON or CSV file (or a poset file for `complete`), `-` for stdin.
    input: PathBuf,
    /// Add a synthetic top element to the description space.
    #[arg(long)]
    augment_top: bool,
    #[arg(long, value_enum)]
    complete: Option<Completion>,
    /// Read the input as CSV with this kind of space.
    #[arg(long, value_enum)]
    csv: Option<CsvSpace>,
    #[command(flatten)]
    common: Common,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Json,
    Dot,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Completion {
    Antichain,
    Direct,
}

impl From<Completion> for CompletionKind {
    fn from(c: Completion) -> Self {
        match c {
            Completion::Antichain => CompletionKind::Antichain,
            Completion::Direct => CompletionKind::Direct,
        }
    }
}

/// A failure with its exit code.
#[derive(Debug)]
pub struct CliError {
    code: u8,
    kind: &'static str,
    message: String,
}

impl CliError {
    pub fn parse(message: impl Into<String>) -> Self {
        CliError { code: 2, kind: "parse", message: message.into() }
    }

    fn usage(message: impl Into<String>) -> Self {
        CliError { code: 2, kind: "usage", message: message.into() }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let (code, kind) = match e {
            Error::CapExceeded { .. } => (3, "cap_exceeded"),
            Error::NotAStructure { .. } => (2, "not_a_structure"),
            Error::UnknownFixture(_) => (2, "unknown_fixture"),
            _ => (2, "validation"),
        };
        CliError { code, kind, message: e.to_string() }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError { code: 2, kind: "io", message: e.to_string() }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

type CliResult<T = String> = Result<T, CliError>;

fn json<T: Serialize>(value: &T, pretty: bool) -> CliResult {
    let text = if pretty { serde_json::to_string_pretty(value) } else { serde_json::to_string(value) };
    text.map(|mut s| {
        s.push('\n');
        s
    })
    .map_err(|e| CliError::parse(e.to_string()))
}

impl Common {
    fn caps(&self) -> Caps {
        Caps { max_objects: self.max_objects, max_antichains: self.max_antichains }
    }

    /// Builds the setup, rejecting datasets with more than `max_objects`
    /// objects up front.
    fn load(&self, d: &DatasetFile, augment_top: bool) -> CliResult<PatternSetup> {
        if d.objects.len() > self.max_objects {
            return Err(Error::CapExceeded { what: "object", limit: self.max_objects, actual: d.objects.len() }.into());
        }
        Ok(d.to_setup(augment_top)?.with_caps(self.caps()))
    }

    fn emit<T: Serialize>(&self, value: &T, dot: impl FnOnce() -> CliResult) -> CliResult {
        match self.output {
            Output::Json => json(value, self.pretty),
            Output::Dot => dot(),
        }
    }

    fn json_only<T: Serialize>(&self, value: &T) -> CliResult {
        self.emit(value, || Err(CliError::usage("this command has no DOT output")))
    }
}

fn read_poset(path: &Path) -> CliResult<PosetFile> {
    match formats::read_input(path, None)? {
        Input::Poset(p) => Ok(p),
        Input::Dataset(_) => Err(CliError::usage("expected a poset file with `elements` and `leq`")),
    }
}

impl DataArgs {
    fn setup(&self) -> CliResult<PatternSetup> {
        match formats::read_input(&self.input, self.csv)? {
            Input::Dataset(d) => self.common.load(&d, self.augment_top),
            Input::Poset(_) => Err(CliError::usage("expected a dataset file with `space` and `objects`")),
        }
    }

    fn kind(&self) -> CompletionKind {
        self.complete.unwrap_or(Completion::Antichain).into()
    }
}

fn literals<'a>(ds: impl IntoIterator<Item = &'a Description>) -> Value {
    Value::from(ds.into_iter().map(ToString::to_string).collect::<Vec<_>>())
}

fn cover_value(c: &Cover) -> Value {
    match c {
        Cover::Finite(v) => literals(v),
        other => Value::from(other.to_string()),
    }
}

#[derive(Serialize)]
struct ExtentsJson {
    count: usize,
    extents: Vec<Vec<String>>,
}

#[derive(Serialize)]
struct UpperApproxJson {
    objects: Vec<String>,
    upper_approximations: Vec<Vec<String>>,
}

#[derive(Serialize)]
struct SupportClosedJson {
    support_closed: Value,
}

#[derive(Serialize)]
struct ClassJson {
    extent: Vec<String>,
    descriptions: Value,
}

#[derive(Serialize)]
struct ImplicationsJson {
    classes: Vec<ClassJson>,
    implications: Vec<(String, String)>,
}

#[derive(Serialize)]
struct StatsJson {
    base_extents: usize,
    completed_extents: usize,
}

#[derive(Serialize)]
struct AntichainPosetJson {
    antichains: Vec<String>,
    hasse: Vec<(usize, usize)>,
    is_lattice: bool,
    is_distributive: bool,
    boldi_vigna: bool,
}

#[derive(Serialize)]
struct DmJson {
    cuts: Vec<Vec<String>>,
    hasse: Vec<(usize, usize)>,
    comparison: &'static str,
    embedding_holds: bool,
}

fn concepts(args: &DataArgs) -> CliResult {
    let setup = args.setup()?;
    let lattice = match args.complete {
        None => {
            let s = PatternStructure::new(setup.clone())?;
            LatticeJson::new(&setup, &s.concept_lattice()?, |d| Value::from(d.to_string()))
        }
        Some(Completion::Antichain) => {
            let c = AntichainCompletion::new(&setup)?;
            LatticeJson::new(&setup, &c.concept_lattice()?, |a| literals(a.iter()))
        }
        Some(Completion::Direct) => {
            let c = DirectCompletion::new(&setup)?;
            LatticeJson::new(&setup, &c.concept_lattice()?, cover_value)
        }
    };
    args.common.emit(&lattice, || Ok(lattice.to_dot()))
}

fn complete(args: &DataArgs) -> CliResult {
    match formats::read_input(&args.input, args.csv)? {
        Input::Poset(file) => {
            let p = file.to_poset()?;
            let ac = AntichainPoset::new(p.clone(), args.common.max_antichains)?;
            let order = ac.poset();
            let report = AntichainPosetJson {
                antichains: ac.antichains().iter().map(|a| p.format_subset(a)).collect(),
                hasse: ac.hasse(),
                is_lattice: order.is_lattice(),
                is_distributive: ac.is_distributive(),
                boldi_vigna: psetup_core::completion::check_boldi_vigna(&p, args.common.max_antichains)?.holds,
            };
            args.common.emit(&report, || Ok(render::poset_dot("antichains", order)))
        }
        Input::Dataset(d) => {
            let setup = args.common.load(&d, args.augment_top)?;
            let report = CompletionReport::compute(&setup, args.kind())?;
            args.common.json_only(&CompletionReportJson::new(&setup, &report))
        }
    }
}

fn dm(args: &PosetArgs) -> CliResult {
    let p = read_poset(&args.input)?.to_poset()?;
    let dm = DedekindMacNeille::new(p.clone(), args.common.max_antichains)?;
    let order = dm.poset();
    let report = DmJson {
        cuts: dm.cuts().iter().map(|c| p.ids_of(c).map(str::to_owned).collect()).collect(),
        hasse: dm.hasse(),
        comparison: match dm.compare_with_base() {
            DmComparison::Isomorphic => "isomorphic",
            DmComparison::IsomorphicWithBottom => "isomorphic_with_bottom",
            DmComparison::Larger => "larger",
        },
        embedding_holds: dm.embedding_holds(),
    };
    args.common.emit(&report, || Ok(render::poset_dot("dm", order)))
}

fn fixture(name: Option<&str>, n: Option<usize>, augment_top: bool, pretty: bool) -> CliResult {
    let Some(name) = name else {
        let mut names: Vec<&str> = fixtures::NAMES.to_vec();
        names.push("AB-BA");
        return json(&names, pretty);
    };
    if name.eq_ignore_ascii_case("AB-BA") {
        return json(&PosetFile::from_poset(&fixtures::ab_ba()), pretty);
    }
    json(&DatasetFile::from_setup(&fixtures::by_name(name, n, augment_top)?), pretty)
}

fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::ClassifyPoset(args) => {
            let p = read_poset(&args.input)?.to_poset()?;
            let report = ClassificationJson::from(&p.classify());
            args.common.emit(&report, || Ok(render::poset_dot("poset", &p)))
        }
        Command::Extents(args) => {
            let setup = args.setup()?;
            let fam = setup.definable_extents()?;
            args.common.json_only(&ExtentsJson { count: fam.len(), extents: families(&setup, &fam.extents) })
        }
        Command::UpperApprox { data, objects: ids } => {
            let setup = data.setup()?;
            let a = setup.object_set(&ids)?;
            let ups = setup.upper_approximations(&a)?;
            data.common.json_only(&UpperApproxJson {
                objects: objects(&setup, &a),
                upper_approximations: families(&setup, &ups),
            })
        }
        Command::SupportClosed(args) => {
            let setup = args.setup()?;
            let set = setup.support_closed_set()?;
            args.common.json_only(&SupportClosedJson { support_closed: literals(&set) })
        }
        Command::Implications(args) => {
            let setup = args.setup()?;
            let r = setup.implications()?;
            args.common.json_only(&ImplicationsJson {
                classes: r
                    .classes
                    .iter()
                    .map(|(e, ds)| ClassJson { extent: objects(&setup, e), descriptions: literals(ds) })
                    .collect(),
                implications: r.holds.iter().map(|(c, d)| (c.to_string(), d.to_string())).collect(),
            })
        }
        Command::MinimalRep(args) => {
            let setup = args.setup()?;
            args.common.json_only(&DatasetFile::from_setup(&setup.minimal_representation()?))
        }
        Command::CheckMultistructure(args) => {
            let setup = args.setup()?;
            args.common.json_only(&SubsetReportJson::new(&setup, &setup.is_multistructure()?))
        }
        Command::CheckStructure(args) => {
            let setup = args.setup()?;
            let r = psetup_core::structure::is_pattern_structure(&setup)?;
            args.common.json_only(&SubsetReportJson::new(&setup, &r))
        }
        Command::Concepts(args) => concepts(&args),
        Command::Complete(args) => complete(&args),
        Command::Dm(args) => dm(&args),
        Command::Stats(args) => {
            let setup = args.setup()?;
            let r = CompletionReport::compute(&setup, args.kind())?;
            args.common.json_only(&StatsJson {
                base_extents: r.base_extent_count,
                completed_extents: r.completed_extent_count,
            })
        }
        Command::Fixtures { name, n, augment_top, pretty } => fixture(name.as_deref(), n, augment_top, pretty),
    }
}

#[derive(Serialize)]
struct Diagnostic<'a> {
    error: &'a str,
    command: &'a str,
    message: &'a str,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command = std::env::args().nth(1).unwrap_or_default();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            let d = Diagnostic { error: e.kind, command: &command, message: &e.message };
            eprintln!("{}", serde_json::to_string(&d).unwrap_or_else(|_| e.to_string()));
            ExitCode::from(e.code)
        }
    }
}
