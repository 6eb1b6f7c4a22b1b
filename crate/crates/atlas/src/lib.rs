//! Fixture store, configuration parsing, pipeline orchestration and report
//! emission for the symmetric-space atlas of abelian Galois covers.
//!
//! The heavy lifting — exact cyclotomic arithmetic, centralizers, holonomy,
//! invariant factors, catalogue classification — lives in `siegel_core`.
//! This crate packages the known families as fixtures, runs the pipeline on
//! them or on user-supplied configuration documents, checks every run
//! against the published classification tables, and renders diffable JSON
//! or plain-text reports.

pub mod error;
pub mod fixtures;
pub mod matexpr;
pub mod parse;
pub mod report;
pub mod runner;

pub use error::{AtlasError, Result};
pub use siegel_core::Backend;
