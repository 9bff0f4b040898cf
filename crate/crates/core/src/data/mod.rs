//! Dataset ingestion, standardization, resampling, and synthetic fixtures.

mod dataset;
mod resample;
mod standardize;
mod synthetic;
mod wdbc;

pub use dataset::LabeledDataset;
pub use resample::{resample, split_indices, SplitIndices, SplitSpec};
pub use standardize::{standardize, Standardizer};
pub use synthetic::{gen_synthetic, SyntheticDataset};
pub use wdbc::{load_wdbc, parse_wdbc, WDBC_DIM, WDBC_FEATURE_NAMES};
