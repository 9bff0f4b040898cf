//! Aggregated evaluation over resamples: curves per strategy and metric,
//! 0%-rate baselines, and gain tables.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::eval::gain::{gain_table, GainTable};
use crate::eval::query::{
    strategy_curve, CurveMetric, PredictionSet, QueryCurve, QueryStrategy,
};
use crate::eval::stats::{mean, sample_std};

/// Mean/std of a metric at 0% query rate over resamples.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct BaselineMetric {
    pub mean: f64,
    pub std: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct BaselineMetrics {
    pub auc_roc: BaselineMetric,
    pub auc_pr: BaselineMetric,
    pub bias: BaselineMetric,
}

#[derive(Clone, Debug)]
pub struct EvaluationReport {
    /// One curve per (strategy, metric) pair, in the order given.
    pub curves: Vec<QueryCurve>,
    pub baselines: BaselineMetrics,
    /// Gain tables for the two AUC metrics.
    pub gain_tables: Vec<GainTable>,
}

impl EvaluationReport {
    pub fn curve(&self, strategy: QueryStrategy, metric: CurveMetric) -> Option<&QueryCurve> {
        self.curves
            .iter()
            .find(|c| c.strategy == strategy && c.metric == metric)
    }

    pub fn gain_table(&self, metric: CurveMetric) -> Option<&GainTable> {
        self.gain_tables.iter().find(|t| t.metric == metric)
    }
}

/// Evaluates all strategies and metrics over the given per-resample
/// prediction sets. `seed` keys the random strategy's shuffles.
pub fn evaluate(
    predsets: &[PredictionSet],
    strategies: &[QueryStrategy],
    rates: &[f64],
    seed: u64,
) -> Result<EvaluationReport> {
    if predsets.is_empty() {
        return Err(Error::Usage("no prediction sets to evaluate".into()));
    }

    let mut curves = Vec::new();
    for &metric in &CurveMetric::ALL {
        for &strategy in strategies {
            let per_resample: Vec<Vec<f64>> = predsets
                .iter()
                .map(|p| strategy_curve(p, strategy, rates, metric, seed))
                .collect::<Result<_>>()?;
            curves.push(QueryCurve::new(
                strategy,
                metric,
                rates.to_vec(),
                per_resample,
            )?);
        }
    }

    let collect_metric = |metric: CurveMetric| -> Result<BaselineMetric> {
        let values: Vec<f64> = predsets
            .iter()
            .map(|p| metric.compute(p.scores(), p.labels()))
            .collect::<Result<_>>()?;
        Ok(BaselineMetric {
            mean: mean(&values),
            std: sample_std(&values),
        })
    };
    let baselines = BaselineMetrics {
        auc_roc: collect_metric(CurveMetric::AucRoc)?,
        auc_pr: collect_metric(CurveMetric::AucPr)?,
        bias: collect_metric(CurveMetric::Bias)?,
    };

    let mut gain_tables = Vec::new();
    for (metric, base) in [
        (CurveMetric::AucRoc, baselines.auc_roc.mean),
        (CurveMetric::AucPr, baselines.auc_pr.mean),
    ] {
        let metric_curves: Vec<QueryCurve> = curves
            .iter()
            .filter(|c| c.metric == metric)
            .cloned()
            .collect();
        if !metric_curves.is_empty() {
            gain_tables.push(gain_table(&metric_curves, base)?);
        }
    }

    Ok(EvaluationReport {
        curves,
        baselines,
        gain_tables,
    })
}

/// Curve CSV: one file per metric with `strategy,rate,mean,std` rows.
pub fn curves_to_csv(curves: &[QueryCurve]) -> String {
    let mut out = String::from("strategy,rate,mean,std\n");
    for c in curves {
        for i in 0..c.rates.len() {
            out.push_str(&format!(
                "{},{},{},{}\n",
                c.strategy.slug(),
                c.rates[i],
                c.mean[i],
                c.std[i]
            ));
        }
    }
    out
}
