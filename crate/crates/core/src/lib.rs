//! Exact computational calculus for pseudomonoids in braided and symmetric
//! Gray monoids.
//!
//! The crate is organised around three layers:
//!
//! * exact braid-group algebra ([`braid`]) and finite combinatorics
//!   ([`combinat`]), which together realise the combinatorial categories
//!   ΒΔ, SΔ, ΒΔ/∼ and FS ([`procat`]);
//! * ordered string diagrams and replayable movies over Gray monoid
//!   computads ([`gray`], [`movie`]), including the built-in pseudomonoid
//!   computads and the biequivalence maps ([`pseudomonoid`]);
//! * the rewriting drivers, the absorbed-braid loop invariant and the
//!   2-cell equality decision ([`normalize`]).
//!
//! Everything is a pure function over immutable values; the crate is
//! `no_std` (with `alloc`) and safe for concurrent use without
//! coordination.

#![no_std]
#![deny(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod braid;
pub mod combinat;
pub mod gray;
pub mod movie;
pub mod normalize;
pub mod procat;
pub mod pseudomonoid;
pub mod rng;
pub mod wordpath;

pub use braid::{BlockPartition, BraidWord, GarsideNf, Permutation};
pub use combinat::{FsMap, MonotoneMap};
pub use gray::{CellKind, Computad, Diagram, Level, Subregion};
pub use movie::{Movie, Step, StepKind};
pub use procat::{FsBr2Cell, ProFlavor, ProMorphism};
