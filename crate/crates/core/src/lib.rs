//! Instance-wise feature selection with predictive-uncertainty
//! quantification, plus the query-rate evaluation harness around it.
//!
//! Three dense networks make up a model: a *selector* proposing per-sample
//! feature masks, a *predictor* scoring labels from the masked features
//! through a Gaussian mean/log-variance head, and a *baseline* scoring labels
//! from all features. The selector trains on a score-function gradient whose
//! reward is the advantage of the masked prediction over the baseline, minus
//! a sparsity penalty, plus an uncertainty-preference bonus that steers
//! exploration toward samples the predictor is unsure about.
//!
//! The [`eval`] module implements the surrounding protocol: AUC-ROC, average
//! precision, predictive bias, and "query" curves where the worst-ranked
//! test samples get their predictions replaced by true labels under three
//! orderings (oracle, random, uncertainty-descending).

pub mod checkpoint;
pub mod data;
pub mod error;
pub mod eval;
pub mod invase;
pub mod matrix;
pub mod nn;
pub mod rng;
pub mod runner;

pub use error::{Error, Result};
pub use matrix::Matrix;

pub use data::{LabeledDataset, SplitSpec, Standardizer};
pub use eval::{CurveMetric, EvaluationReport, PredictionSet, QueryCurve, QueryStrategy};
pub use invase::{GaussianPrediction, SelectionMask, TrainedModel, TrainingConfig};
pub use nn::{Activation, AdamParams, DenseNetwork};
pub use runner::{run_resample, run_resamples, ResampleRun};
