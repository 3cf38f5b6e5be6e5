//! File formats and command-line front end for `indepkit-core`.

pub mod cli;
pub mod commands;
pub mod config;
pub mod dimacs;
pub mod table;

pub use config::{Format, RunConfig};
pub use table::{read_relation, write_relation, Domains};
