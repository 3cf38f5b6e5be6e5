//! Possible and certain independence over relations with null markers.
//!
//! The crate covers the data model ([`relation`]), independence atoms and
//! their textual syntax ([`atom`], [`parse`]), model checking ([`check`]),
//! implication by derivation and by direct deciders ([`implication`]), and
//! generators for the standard witness relations ([`constructions`]).
//!
//! Everything here is `no_std` with `alloc`.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod atom;
pub mod check;
pub mod constructions;
pub mod error;
pub mod implication;
pub mod parse;
pub mod relation;

pub use atom::{Atom, ConstraintSet, Modality, Notation};
pub use check::{CheckReport, CheckStats, Method, Strategy};
pub use error::{Error, ParseError, Result};
pub use relation::{AttrSet, Cell, Relation, RelationBuilder, Schema, Tuple, Vocabulary};
