//! Benchmark-only crate; see `benches/pipelines.rs`.
//!
//! Shared inputs for the benches live here so the targets stay small.

use lndet::DisorderScale;

/// The desk-scale reference point used across benches.
pub fn reference_scale() -> DisorderScale {
    DisorderScale::from_alpha(1000, 0.0).expect("valid scale")
}
