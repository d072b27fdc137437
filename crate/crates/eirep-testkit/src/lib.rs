//! Randomized generators and property suites for `eirep-core`.
//!
//! [`gen`] builds random groups, bisets, EI categories and modules within
//! size caps; [`suites`] runs the cross-checking identities (orbit order
//! formula, Frobenius reciprocity, double-coset endomorphism dimension,
//! composition-factor invariance, induce–restrict round trips, quiver
//! representative independence, decider self-consistency) over corpora of
//! such inputs and reports every violation with a reproducible case id.

pub mod gen;
pub mod suites;

pub use gen::GenLimits;
pub use suites::SuiteReport;
