//! Lattice polynomial functions over finite bounded distributive lattices.
//!
//! - [`lattice`]: chains, products of chains, and table-given lattices.
//! - [`polynomial`]: disjunctive normal forms, canonical coefficients,
//!   essential variables and terms, minors and constant substitution.
//! - [`commutation`]: operation tables and the brute-force commutation oracle.
//! - [`structure`]: weighted-disjunction / chain-form classification and the
//!   structural self-commutation test over chains.
//! - [`harness`]: exhaustive enumeration and verification runs.
//! - [`format`]: JSON file formats.

pub mod commutation;
pub mod format;
pub mod harness;
pub mod lattice;
pub mod polynomial;
pub mod structure;

pub use commutation::{
    commute, self_commuting, strongly_bisymmetric, table_of, Commutation, CommutationWitness, CommuteError,
    FamilyVerdict, OperationTable,
};
pub use harness::{HarnessConfig, HarnessError, MinorSampling, SearchReport, VerificationReport};
pub use lattice::{BoundedLattice, Element, LatticeError};
pub use polynomial::{characteristic_vector, DnfPolynomial, PolyError, Subset, Term, VariableMap};
pub use structure::{classify, is_self_commuting_fast, ChainViolation, Classification, StructureError};
