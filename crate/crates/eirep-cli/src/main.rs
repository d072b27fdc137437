//! `eirep`: representation-type tools for finite EI categories.
//!
//! Exit codes: 0 success (for `decide`: finite type), 10 infinite type,
//! 20 unknown, 1 invalid input object, 2 unreadable or unparsable input,
//! 3 precondition violation (e.g. the characteristic divides an
//! automorphism group order).

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use eirep_cli::doc::{self, CliError};
use eirep_cli::{realize, report};
use eirep_core::catalg::{catrep_is_isomorphic, induce_rep_along};
use eirep_core::ordinary::{ordinary_quiver, ordinary_quiver_over, RepChoice};
use eirep_core::{decide_symmetrized, eiquiver, DecideOptions, Error, FiniteCategory, Fq, Outcome, Verdict};

#[derive(Parser)]
#[command(name = "eirep", version, about = "Exact representation-type tools for finite EI categories")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check category documents: schema, realization and the category axioms.
    Validate {
        /// Category documents to check.
        #[arg(required_unless_present = "all")]
        files: Vec<PathBuf>,
        /// Check every .json document in a directory.
        #[arg(long, value_name = "DIR", conflicts_with = "files")]
        all: Option<PathBuf>,
    },
    /// Decide the representation type of a category algebra kC.
    Decide {
        /// Category document.
        #[arg(required_unless_present = "all")]
        file: Option<PathBuf>,
        /// Decide every category document in a directory, writing a
        /// .verdict.json next to each input.
        #[arg(long, value_name = "DIR", conflicts_with = "file")]
        all: Option<PathBuf>,
        /// Characteristic of the ground field; 0 means characteristic zero.
        #[arg(long = "char", default_value_t = 0)]
        characteristic: u64,
        /// Also run the induced-module criterion when the cheap rules stall.
        #[arg(long)]
        extended: bool,
        /// Seed for randomized module arithmetic; equal seeds, equal output.
        #[arg(long, env = "EIREP_SEED", default_value_t = 0)]
        seed: u64,
        /// Write the verdict as JSON to this path.
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
    },
    /// Print the ordinary quiver of kC over a splitting field.
    OrdinaryQuiver {
        /// Category document.
        file: PathBuf,
        /// "auto" (or "0") for the least splitting prime, or an explicit
        /// prime not dividing any automorphism group order.
        #[arg(long = "char", default_value = "auto", value_name = "auto|PRIME")]
        characteristic: String,
        /// Seed for randomized module arithmetic; equal seeds, equal output.
        #[arg(long, env = "EIREP_SEED", default_value_t = 0)]
        seed: u64,
        /// Write the quiver as JSON to this path.
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
        /// Write the underlying multigraph as a plain edge list.
        #[arg(long, value_name = "PATH")]
        graph_out: Option<PathBuf>,
    },
    /// Induce a module along a subcategory inclusion.
    Induce {
        /// Category document for the ambient category.
        category: PathBuf,
        /// Subcategory document naming the kept objects and morphisms.
        #[arg(long, value_name = "PATH")]
        subcategory: PathBuf,
        /// Module document over the subcategory.
        #[arg(long, value_name = "PATH")]
        module: PathBuf,
        /// Seed for the randomized isomorphism check of the restriction.
        #[arg(long, env = "EIREP_SEED", default_value_t = 0)]
        seed: u64,
        /// Write the induced module as JSON to this path.
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
    },
    /// Summarize a category document: objects, hom-sets, morphism names.
    Info {
        /// Category document.
        file: PathBuf,
    },
}

fn error_code(e: &CliError) -> u8 {
    match e {
        CliError::Io(_) | CliError::Parse(_) | CliError::Schema(_) => 2,
        CliError::Core(Error::Precondition(_)) | CliError::Core(Error::NotSplitting { .. }) => 3,
        CliError::Core(_) => 1,
    }
}

fn outcome_code(o: Outcome) -> u8 {
    match o {
        Outcome::Finite => 0,
        Outcome::Infinite => 10,
        Outcome::Unknown => 20,
    }
}

fn load_category(path: &Path) -> Result<FiniteCategory, CliError> {
    let docu = doc::read_category(path)?;
    realize::category_from_doc(&docu)
}

/// The .json files of a directory in sorted order, skipping our own
/// .verdict.json and .quiver.json outputs.
fn input_files(dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    let entries = fs::read_dir(dir)
        .map_err(|e| CliError::Io(format!("cannot read directory {}: {e}", dir.display())))?;
    let mut files = Vec::new();
    for entry in entries {
        let path = entry
            .map_err(|e| CliError::Io(format!("cannot read directory {}: {e}", dir.display())))?
            .path();
        let name = path.file_name().and_then(|n| n.to_str()).unwrap_or("");
        if name.ends_with(".json")
            && !name.ends_with(".verdict.json")
            && !name.ends_with(".quiver.json")
        {
            files.push(path);
        }
    }
    files.sort();
    Ok(files)
}

fn cmd_validate(files: &[PathBuf], all: Option<&Path>) -> u8 {
    let files = match all {
        Some(dir) => match input_files(dir) {
            Ok(fs) => fs,
            Err(e) => {
                eprintln!("error: {e}");
                return error_code(&e);
            }
        },
        None => files.to_vec(),
    };
    let batch = all.is_some();
    let results: Vec<(PathBuf, Option<CliError>)> = files
        .par_iter()
        .map(|p| (p.clone(), load_category(p).err()))
        .collect();
    let mut worst = 0u8;
    for (path, err) in results {
        match err {
            None => println!("{}: ok", path.display()),
            // Directories may legitimately mix document kinds; only the
            // categories are checked in batch mode.
            Some(CliError::Schema(_)) if batch => {
                println!("{}: skipped (not a category document)", path.display());
            }
            Some(e) => {
                println!("{}: {e}", path.display());
                worst = worst.max(error_code(&e));
            }
        }
    }
    worst
}

fn decide_path(path: &Path, p: u64, opts: &DecideOptions) -> Result<Verdict, CliError> {
    let cat = load_category(path)?;
    decide_symmetrized(&cat, p, opts).map_err(CliError::Core)
}

fn cmd_decide_one(path: &Path, p: u64, opts: &DecideOptions, json: Option<&Path>) -> u8 {
    let verdict = match decide_path(path, p, opts) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {e}");
            return error_code(&e);
        }
    };
    let vdoc = report::verdict_doc(Some(&path.display().to_string()), &verdict);
    print!("{}", report::verdict_text(&vdoc));
    if let Some(out) = json {
        if let Err(e) = doc::write_json_atomic(out, &vdoc) {
            eprintln!("error: {e}");
            return error_code(&e);
        }
    }
    outcome_code(verdict.outcome)
}

/// Batch mode: decide every category document of a directory concurrently,
/// writing `<input>.verdict.json` next to each one atomically. Documents
/// with a different schema are skipped. Exit code 0 when everything decided
/// (whatever the outcomes), otherwise the worst error code.
fn cmd_decide_all(dir: &Path, p: u64, opts: &DecideOptions) -> u8 {
    let files = match input_files(dir) {
        Ok(fs) => fs,
        Err(e) => {
            eprintln!("error: {e}");
            return error_code(&e);
        }
    };
    enum Line {
        Decided(Outcome),
        Skipped,
        Failed(CliError),
    }
    let results: Vec<(PathBuf, Line)> = files
        .par_iter()
        .map(|path| {
            let line = match decide_path(path, p, opts) {
                Ok(v) => {
                    let vdoc = report::verdict_doc(Some(&path.display().to_string()), &v);
                    let out = path.with_extension("verdict.json");
                    match doc::write_json_atomic(&out, &vdoc) {
                        Ok(()) => Line::Decided(v.outcome),
                        Err(e) => Line::Failed(e),
                    }
                }
                Err(CliError::Schema(_)) => Line::Skipped,
                Err(e) => Line::Failed(e),
            };
            (path.clone(), line)
        })
        .collect();
    let mut worst = 0u8;
    for (path, line) in results {
        match line {
            Line::Decided(o) => println!("{}: {o}", path.display()),
            Line::Skipped => println!("{}: skipped (not a category document)", path.display()),
            Line::Failed(e) => {
                println!("{}: error: {e}", path.display());
                worst = worst.max(error_code(&e));
            }
        }
    }
    worst
}

fn write_text_atomic(path: &Path, text: &str) -> Result<(), CliError> {
    use std::io::Write as _;
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)
        .map_err(|e| CliError::Io(format!("cannot create temporary file in {}: {e}", dir.display())))?;
    tmp.write_all(text.as_bytes())
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?;
    tmp.persist(path)
        .map_err(|e| CliError::Io(format!("cannot persist {}: {e}", path.display())))?;
    Ok(())
}

fn cmd_ordinary_quiver(
    file: &Path,
    characteristic: &str,
    seed: u64,
    json: Option<&Path>,
    graph_out: Option<&Path>,
) -> u8 {
    let run = || -> Result<u8, CliError> {
        let cat = load_category(file)?;
        let q = match characteristic {
            "auto" | "0" => ordinary_quiver(&cat, seed, RepChoice::Least)?,
            s => {
                let l: u64 = s.parse().map_err(|_| {
                    CliError::Parse(format!(
                        "--char must be \"auto\", \"0\" or a prime, found \"{s}\""
                    ))
                })?;
                let f = Fq::prime(l)?;
                ordinary_quiver_over(&cat, &f, seed, RepChoice::Least)?
            }
        };
        let qdoc = report::quiver_doc(&cat, &q, Some(&file.display().to_string()));
        print!("{}", report::quiver_text(&qdoc));
        if let Some(out) = json {
            doc::write_json_atomic(out, &qdoc)?;
        }
        if let Some(out) = graph_out {
            write_text_atomic(out, &report::graph_edges(&qdoc))?;
        }
        Ok(0)
    };
    run().unwrap_or_else(|e| {
        eprintln!("error: {e}");
        error_code(&e)
    })
}

fn cmd_induce(
    category: &Path,
    subcategory: &Path,
    module: &Path,
    seed: u64,
    json: Option<&Path>,
) -> u8 {
    let run = || -> Result<u8, CliError> {
        let cat = load_category(category)?;
        let subdoc = doc::read_subcategory(subcategory)?;
        let emb = realize::subcategory_from_doc(&cat, &subdoc)?;
        let moddoc = doc::read_module(module)?;
        let rep = realize::module_from_doc(&emb.sub, &moddoc)?;
        let ind = induce_rep_along(&cat, &emb.objects, &emb.mor_map, &rep)?;
        print!("{}", report::module_text(&ind));
        let back = ind.restrict_along(&emb.sub, &emb.objects, &emb.mor_map)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let answer = match catrep_is_isomorphic(&back, &rep, &mut rng) {
            Ok(true) => "yes",
            Ok(false) => "no",
            Err(_) => "not checked (resource limit)",
        };
        println!("restriction to the subcategory is isomorphic to the input: {answer}");
        if let Some(out) = json {
            doc::write_json_atomic(out, &report::module_doc(&ind))?;
        }
        Ok(0)
    };
    run().unwrap_or_else(|e| {
        eprintln!("error: {e}");
        error_code(&e)
    })
}

fn cmd_info(file: &Path) -> u8 {
    let run = || -> Result<u8, CliError> {
        let cat = load_category(file)?;
        let n = cat.n_objects();
        println!("objects: {n}");
        for x in 0..n {
            println!("  {}: |Aut| = {}", cat.object_name(x), cat.hom(x, x).len());
        }
        println!("morphisms: {}", cat.n_morphisms());
        for x in 0..n {
            for y in 0..n {
                if x != y && !cat.hom(x, y).is_empty() {
                    println!(
                        "  hom({}, {}): {} morphisms",
                        cat.object_name(x),
                        cat.object_name(y),
                        cat.hom(x, y).len()
                    );
                }
            }
        }
        let free = match eiquiver::is_free(&cat) {
            Ok(true) => "yes",
            Ok(false) => "no",
            Err(_) => "not determined (resource limit)",
        };
        println!("free EI category: {free}");
        println!("morphism names:");
        const CAP: usize = 400;
        for m in 0..cat.n_morphisms().min(CAP) {
            println!(
                "  {}: {} -> {}",
                cat.mor_name(m),
                cat.object_name(cat.src(m)),
                cat.object_name(cat.tgt(m))
            );
        }
        if cat.n_morphisms() > CAP {
            println!("  ... and {} more", cat.n_morphisms() - CAP);
        }
        Ok(0)
    };
    run().unwrap_or_else(|e| {
        eprintln!("error: {e}");
        error_code(&e)
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.cmd {
        Cmd::Validate { files, all } => cmd_validate(&files, all.as_deref()),
        Cmd::Decide { file, all, characteristic, extended, seed, json } => {
            let opts = DecideOptions { seed, extended };
            match (file, all) {
                (Some(f), None) => cmd_decide_one(&f, characteristic, &opts, json.as_deref()),
                (None, Some(dir)) => cmd_decide_all(&dir, characteristic, &opts),
                _ => unreachable!("clap enforces exactly one of FILE and --all"),
            }
        }
        Cmd::OrdinaryQuiver { file, characteristic, seed, json, graph_out } => {
            cmd_ordinary_quiver(&file, &characteristic, seed, json.as_deref(), graph_out.as_deref())
        }
        Cmd::Induce { category, subcategory, module, seed, json } => {
            cmd_induce(&category, &subcategory, &module, seed, json.as_deref())
        }
        Cmd::Info { file } => cmd_info(&file),
    };
    ExitCode::from(code)
}
