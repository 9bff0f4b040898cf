//! Evaluation protocol: AUC metrics, query strategies, query-rate curves,
//! gain tables, and plot-ready exports.

mod export;
mod gain;
mod harness;
mod metrics;
mod query;
mod stats;

pub use export::{
    band_rows_to_csv, bias_vs_logvar_export, scatter_to_csv, uncertainty_band_export, BandRow,
    BAND_HEADER, SCATTER_HEADER,
};
pub use gain::{gain_table, rate_label, GainRow, GainTable};
pub use harness::{
    curves_to_csv, evaluate, BaselineMetric, BaselineMetrics, EvaluationReport,
};
pub use metrics::{auc_pr, auc_roc, bias};
pub use query::{
    corrected_scores, curve_values, query_count, query_order, strategy_curve, validate_rate_grid,
    CurveMetric, PredictionSet, QueryCurve, QueryStrategy, DEFAULT_RATES, RANDOM_SHUFFLES,
    TABLE_RATES,
};
pub use stats::{mean, pearson, sample_std};
