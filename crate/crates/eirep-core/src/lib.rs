//! Exact arithmetic for finite EI categories.
//!
//! A finite EI category is a finite category in which every endomorphism is an
//! isomorphism. This crate provides the pieces needed to study their
//! representation theory computationally:
//!
//! * permutation groups ([`group`]) and bisets with stabilizer chains ([`biset`]),
//! * exact linear algebra over finite fields ([`field`], [`poly`], [`matrix`]),
//! * modular representations of finite groups, including a Meataxe ([`modrep`]),
//! * finite categories, EI quivers and free EI categories ([`category`], [`eiquiver`]),
//! * category algebras and their representations ([`catalg`]),
//! * the ordinary quiver of a category algebra ([`ordinary`]),
//! * a decision procedure for finite/infinite representation type ([`decider`]).
//!
//! Everything is exact: no floating point, no probabilistic verdicts. Randomness
//! is only used to search for certificates (e.g. Meataxe words), and every
//! certificate found is verified deterministically.

pub mod biset;
pub mod catalg;
pub mod category;
pub mod decider;
pub mod eiquiver;
pub mod field;
pub mod group;
pub mod matrix;
pub mod modrep;
pub mod ordinary;
pub mod perm;
pub mod poly;

pub use biset::{Biset, StabChain};
pub use catalg::{induce_rep, induce_rep_along, CatRep};
pub use category::FiniteCategory;
pub use decider::{
    decide, decide_symmetrized, CriterionResult, DecideOptions, Outcome, RuleStatus, Verdict,
};
pub use eiquiver::EiQuiver;
pub use field::Fq;
pub use group::{FiniteGroup, Subgroup};
pub use matrix::Mat;
pub use modrep::FqModule;
pub use ordinary::{ordinary_quiver, OrdinaryQuiver};
pub use perm::Perm;

/// Errors reported by this crate.
///
/// The split matters to callers: `Validation` means the input object is
/// malformed, `Precondition` means the object is fine but the requested
/// operation does not apply to it, `NotSplitting` flags a field that is too
/// small for the requested representation-theoretic computation, `Resource`
/// marks an explicit size cap, and `Structure` reports that an input fails a
/// structural hypothesis discovered mid-computation.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("validation: {0}")]
    Validation(String),
    #[error("precondition: {0}")]
    Precondition(String),
    #[error("field F_{q} is not a splitting field: {detail}")]
    NotSplitting { q: u64, detail: String },
    #[error("resource limit: {0}")]
    Resource(String),
    #[error("structure: {0}")]
    Structure(String),
}

pub type Result<T> = std::result::Result<T, Error>;
