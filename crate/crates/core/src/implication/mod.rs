//! Implication among independence atoms.
//!
//! [`saturate`] computes closures under the rule systems of [`rules`] and
//! extracts [`Derivation`]s; [`decide`] holds the direct procedures for the
//! fragments where implication is decidable without saturation;
//! [`counterexample`] refutes implication semantically within bounds.

pub mod counterexample;
pub mod decide;
pub mod derivation;
pub mod rules;
pub mod saturate;

pub use counterexample::{search_counterexample, Bounds, SearchOutcome};
pub use decide::{
    constants_of, implies, implies_cia, implies_ia, implies_mixed_disjoint, implies_pia_star, Completeness,
    ImplicationAnswer,
};
pub use derivation::{Derivation, InvalidStep, Justification, Step};
pub use rules::{Rule, RuleSystem};
pub use saturate::{closure, derives, Closure, Saturation, DEFAULT_UNIVERSE_LIMIT};
