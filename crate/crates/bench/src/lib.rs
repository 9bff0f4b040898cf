//! Shared fixtures for the criterion benchmarks.

use invase_core::data::{gen_synthetic, LabeledDataset};

/// A standardized-ish synthetic dataset sized like one WDBC training split.
pub fn bench_dataset() -> LabeledDataset {
    gen_synthetic(455, 30, &[0, 3, 7], 0.1, 99).unwrap().dataset
}
