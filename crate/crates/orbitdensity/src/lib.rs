//! Command-line and file-format layer over `orbitdensity-core`.
//!
//! - [`spec`]: JSON documents describing points, integer sets and Følner sequences.
//! - [`report`]: JSON and TSV rendering of reports, with exact rationals.
//! - [`par`]: a threaded range scanner whose output matches the sequential one.
//! - [`cli`]: the `orbitdensity` command.
//! - [`reproduce`]: scripted verification of the three worked constructions.

pub mod cli;
pub mod par;
pub mod report;
pub mod reproduce;
pub mod spec;
