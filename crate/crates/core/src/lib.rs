//! Finite orthomodular lattices (OMLs).
//!
//! The crate builds and validates finite OMLs from order data, evaluates the
//! six symmetric-difference terms that agree with XOR on Boolean algebras,
//! checks equational identities exhaustively with least counterexamples, models
//! the free OML on two generators in Navara coordinates, and enumerates
//! p-ideals and congruences.

pub mod catalog;
pub mod congruence;
pub mod free;
pub mod lattice;
pub mod set;
pub mod terms;

pub use catalog::{CatalogError, LatticeSpec, DEFAULT_MAX_SIZE};
pub use congruence::{Congruence, PIdeal};
pub use free::{FreeOml, Mo2Part, NavaraElement};
pub use lattice::{Element, Oml, RawLattice, SymDiffKind, ValidationError};
pub use set::ElementSet;
pub use terms::{Assignment, IdentityReport, Term};
