//! Rewriting procedures on movies, the absorbed-braid loop invariant, and
//! the 2-cell equality decision.
//!
//! The invariant is computed by semantic tracked replay ([`track`]); the
//! rewriting drivers ([`drivers`]) transform movies syntactically with
//! certificates, and every driver checks endpoint and invariant
//! preservation before returning. 1-cell decomposition and isomorphism
//! testing live in [`standard`].

pub mod drivers;
pub mod standard;
pub mod track;

pub use drivers::{
    contract_structural_clip, decide_2cell_equality, eliminate_units, insert_ipi,
    to_normal_form_N, tsnf, CertMove, Certificate, NormalizeError, TableCol, TableRow,
};
pub use standard::{
    composition_iso, decompose_1cell, iso_1cells, table_computad, Decomposed,
};
pub use track::{loop_invariant, output_string_clear, AbsorbedInvariant, TreeEntry};
