//! Versioned JSON documents read and written by the `eirep` binary.
//!
//! Every document carries a `schema` tag so files stay self-describing and
//! future revisions can coexist. Permutations are 0-based image arrays
//! throughout: `[1, 0]` is the transposition of a 2-point set. Maps use
//! [`BTreeMap`] so serialized output is byte-for-byte deterministic.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::io::Write as _;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

pub const CATEGORY_SCHEMA: &str = "eirep/category/v1";
pub const SUBCATEGORY_SCHEMA: &str = "eirep/subcategory/v1";
pub const MODULE_SCHEMA: &str = "eirep/module/v1";
pub const VERDICT_SCHEMA: &str = "eirep/verdict/v1";
pub const QUIVER_SCHEMA: &str = "eirep/quiver/v1";

/// Failures on the document layer, kept separate from [`eirep_core::Error`]
/// because the binary maps them to different exit codes.
#[derive(Debug)]
pub enum CliError {
    /// The file could not be read or written.
    Io(String),
    /// The bytes are not valid JSON for the expected document; the message
    /// carries serde's line and column.
    Parse(String),
    /// The JSON parsed but its `schema` tag names a different document kind.
    Schema(String),
    /// The document realizes to an invalid or unsupported object.
    Core(eirep_core::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Io(m) => write!(f, "i/o: {m}"),
            CliError::Parse(m) => write!(f, "parse: {m}"),
            CliError::Schema(m) => write!(f, "schema: {m}"),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<eirep_core::Error> for CliError {
    fn from(e: eirep_core::Error) -> CliError {
        CliError::Core(e)
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// One object of an EI quiver: a permutation group given by generators.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct ObjectDoc {
    pub name: String,
    /// Number of points the generator permutations act on.
    pub degree: usize,
    /// Generator permutations as image arrays; empty means the trivial group.
    #[serde(default)]
    pub generators: Vec<Vec<usize>>,
}

/// One arrow of an EI quiver: a biset for the two endpoint groups.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct ArrowDoc {
    pub src: String,
    pub tgt: String,
    /// Size of the carrier set the two groups act on.
    pub carrier: usize,
    /// Left action: one carrier permutation per generator of the target
    /// object's group, in generator order.
    #[serde(default)]
    pub left: Vec<Vec<usize>>,
    /// Right action: one carrier permutation per generator of the source
    /// object's group. Point p under g then h goes to right(h) of right(g)
    /// of p.
    #[serde(default)]
    pub right: Vec<Vec<usize>>,
}

/// One morphism of an explicitly tabulated category.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct MorphismDoc {
    pub id: String,
    pub src: String,
    pub tgt: String,
}

/// The two ways of presenting a finite EI category.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CategoryBody {
    /// Automorphism groups plus bisets of unfactorizable generators; the
    /// category is the free EI category they generate.
    EiQuiver { objects: Vec<ObjectDoc>, arrows: Vec<ArrowDoc> },
    /// A full morphism list with its composition table. Triples are
    /// `[f, g, h]` with `h = g∘f` (f applied first); composites with an
    /// identity may be omitted.
    Explicit {
        objects: Vec<String>,
        morphisms: Vec<MorphismDoc>,
        identities: BTreeMap<String, String>,
        #[serde(default)]
        composition: Vec<[String; 3]>,
    },
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct CategoryDoc {
    pub schema: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(flatten)]
    pub body: CategoryBody,
}

/// A subcategory of a category document, named by object and morphism ids.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct SubcatDoc {
    pub schema: String,
    pub objects: Vec<String>,
    /// Morphism names kept by the subcategory. The set must contain the
    /// identities of the chosen objects and be closed under composition.
    /// Omitted means the full subcategory on `objects`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub morphisms: Option<Vec<String>>,
}

/// A module (functor to vector spaces) over a category, with coefficients
/// in the prime field of the given characteristic.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct ModuleDoc {
    pub schema: String,
    pub characteristic: u64,
    /// Dimension at each object, keyed by object name.
    pub dims: BTreeMap<String, usize>,
    /// Matrix of each morphism, keyed by morphism name, as rows of entries
    /// in 0..characteristic; shape dims(tgt) x dims(src). Identities and
    /// morphisms whose shape has a zero side may be omitted.
    #[serde(default)]
    pub matrices: BTreeMap<String, Vec<Vec<u64>>>,
}

#[derive(Serialize, Deserialize, Debug, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum OutcomeDoc {
    Finite,
    Infinite,
    Unknown,
}

impl fmt::Display for OutcomeDoc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OutcomeDoc::Finite => write!(f, "finite"),
            OutcomeDoc::Infinite => write!(f, "infinite"),
            OutcomeDoc::Unknown => write!(f, "unknown"),
        }
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum StatusDoc {
    Pass,
    Fail,
    NotApplicable,
    Unknown,
}

impl fmt::Display for StatusDoc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StatusDoc::Pass => write!(f, "pass"),
            StatusDoc::Fail => write!(f, "fail"),
            StatusDoc::NotApplicable => write!(f, "not applicable"),
            StatusDoc::Unknown => write!(f, "unknown"),
        }
    }
}

/// One line of decider evidence.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct TraceEntryDoc {
    pub rule: String,
    pub status: StatusDoc,
    /// Objects the entry talks about; empty means the whole category.
    #[serde(default)]
    pub objects: Vec<String>,
    pub witness: String,
    pub citation: String,
}

/// The full output of a `decide` run; round-trips losslessly through JSON.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct VerdictDoc {
    pub schema: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub input: Option<String>,
    pub outcome: OutcomeDoc,
    pub characteristic: u64,
    /// Coefficient fields used by module computations, empty if none were.
    pub field: String,
    #[serde(default)]
    pub notes: Vec<String>,
    pub trace: Vec<TraceEntryDoc>,
}

/// A vertex of the ordinary quiver: a simple module of one automorphism
/// group.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct QuiverVertexDoc {
    pub object: String,
    pub simple: usize,
    pub dim: usize,
    pub label: String,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct QuiverArrowDoc {
    pub src: usize,
    pub tgt: usize,
    pub mult: usize,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct QuiverDoc {
    pub schema: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub input: Option<String>,
    pub characteristic: u64,
    pub field: String,
    pub vertices: Vec<QuiverVertexDoc>,
    pub arrows: Vec<QuiverArrowDoc>,
}

/// Read a document of one expected schema. The schema tag is checked on the
/// raw JSON first, so a well-formed document of another kind reports a
/// schema mismatch rather than a confusing missing-field error, and callers
/// can choose to skip it.
fn read_doc<T: DeserializeOwned>(path: &Path, expected: &'static str) -> CliResult<T> {
    let bytes = fs::read(path)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
    let value: serde_json::Value = serde_json::from_slice(&bytes)
        .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    match value.get("schema").and_then(|s| s.as_str()) {
        Some(found) if found != expected => {
            return Err(CliError::Schema(format!(
                "{}: expected a \"{expected}\" document, found schema \"{found}\"",
                path.display()
            )));
        }
        None => {
            return Err(CliError::Parse(format!(
                "{}: missing \"schema\" field",
                path.display()
            )));
        }
        _ => {}
    }
    serde_json::from_slice(&bytes)
        .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

pub fn read_category(path: &Path) -> CliResult<CategoryDoc> {
    read_doc(path, CATEGORY_SCHEMA)
}

pub fn read_subcategory(path: &Path) -> CliResult<SubcatDoc> {
    read_doc(path, SUBCATEGORY_SCHEMA)
}

pub fn read_module(path: &Path) -> CliResult<ModuleDoc> {
    read_doc(path, MODULE_SCHEMA)
}

pub fn read_verdict(path: &Path) -> CliResult<VerdictDoc> {
    read_doc(path, VERDICT_SCHEMA)
}

/// Pretty-printed JSON plus a trailing newline, the exact bytes the binary
/// writes; centralized so outputs stay deterministic.
pub fn to_json_bytes<T: Serialize>(value: &T) -> Vec<u8> {
    let mut bytes = serde_json::to_vec_pretty(value).expect("documents always serialize");
    bytes.push(b'\n');
    bytes
}

/// Write a document by way of a temporary file in the same directory, so a
/// concurrent reader never observes a half-written file.
pub fn write_json_atomic<T: Serialize>(path: &Path, value: &T) -> CliResult<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)
        .map_err(|e| CliError::Io(format!("cannot create temporary file in {}: {e}", dir.display())))?;
    tmp.write_all(&to_json_bytes(value))
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?;
    tmp.persist(path)
        .map_err(|e| CliError::Io(format!("cannot persist {}: {e}", path.display())))?;
    Ok(())
}
