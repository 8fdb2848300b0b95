//! Symbolic-dynamics workbench: subshifts, orbit speedups `S = σ^p`, return
//! words and derived sequences, permutation group extensions, word complexity
//! and linear-recurrence profiles, and speedup presentations of SFTs and
//! sofic shifts.

pub mod error;
pub mod extension;
pub mod graphspeedup;
pub mod lr;
pub mod permutation;
pub mod returnwords;
pub mod shiftspaces;
pub mod speedup;
mod unionfind;
pub mod words;

pub use error::{Error, Result};

/// Exact non-negative rational used for recurrence ratios and bounds.
pub type Rational = num_rational::Ratio<u64>;
