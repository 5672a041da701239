//! Exact workbench for Toeplitz and generalized Oxtoby subshifts.
//!
//! Sequences are described by finite fill schedules ([`ToeplitzSpec`]). From a schedule the
//! crate computes level words and skeleton certificates, decides the generalized Oxtoby
//! condition and pieces, enumerates parts of the subshift, searches for block-permutation
//! conjugacies up to a finite horizon, and evaluates frequency functionals exactly.

pub mod alphabet;
pub mod analysis;
pub mod conjugacy;
pub mod constructions;
pub mod error;
pub mod language;
pub mod measures;
pub mod parts;
pub mod spec;
pub mod verdict;
pub mod word;

pub use alphabet::{Alphabet, Cell, Symbol, BLANK};
pub use error::{Error, Result};
pub use spec::{FillStep, PeriodStructure, RawSpec, ResidueStatus, ToeplitzSpec};
pub use verdict::{Status, Undecided, Verdict};
pub use word::PartialWord;

/// Caps the worker threads used by parallel searches. Only the first call has an effect.
#[cfg(feature = "parallel")]
pub fn configure_threads(n: usize) -> bool {
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().is_ok()
}
