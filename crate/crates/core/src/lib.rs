//! Executable topological dynamics for the two-sided full shift over `Z`.
//!
//! The crate works with lazily evaluated bi-infinite symbol streams and
//! measures how often an orbit visits a region relative to a Følner
//! sequence. On top of the exact counting core sit:
//!
//! - [`shift`]: points, words, cylinders, the `2^-n` metric and the shift action;
//! - [`folner`]: Følner sequences in `(Z, +)` and their defect;
//! - [`setclass`]: decidable integer sets with finite-horizon classifiers
//!   (syndetic, thick, piecewise syndetic, thickly syndetic);
//! - [`density`]: exact upper/lower density estimates and sojourn reports;
//! - [`attraction`]: cylinder covers approximating the minimal center of attraction;
//! - [`chaos`]: finite-horizon witnesses for proximality, Li-Yorke pairs and sensitivity.
//!
//! Everything here is `no_std` with `alloc`. Range scans go through the
//! [`scan::RangeScan`] trait so a caller with threads can parallelize them
//! without changing any result.
#![no_std]

extern crate alloc;

pub mod attraction;
pub mod chaos;
pub mod density;
mod error;
pub mod expr;
pub mod folner;
pub mod scan;
pub mod setclass;
pub mod shift;

pub use error::{Error, Result};

/// Exact rational with arbitrary-precision numerator and denominator.
pub type Rational = num_rational::BigRational;
