//! Query strategies and query-rate curves.
//!
//! Querying a test sample replaces its score with the true label (an
//! error-free answer), so its contribution to the bias becomes zero and it
//! ranks perfectly. Strategies only differ in the order samples are queried.

use rand::seq::SliceRandom;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::eval::metrics::{auc_pr, auc_roc, bias};
use crate::eval::stats::{mean, sample_std};
use crate::rng::{stream_rng, Purpose};

/// Query rates reported in the gain tables.
pub const TABLE_RATES: [f64; 6] = [0.001, 0.005, 0.01, 0.05, 0.1, 0.5];

/// Default evaluation grid: zero, the table rates, the headline 20% point,
/// and full saturation.
pub const DEFAULT_RATES: [f64; 9] = [0.0, 0.001, 0.005, 0.01, 0.05, 0.1, 0.2, 0.5, 1.0];

/// Number of seeded shuffles averaged into each resample's random curve.
pub const RANDOM_SHUFFLES: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum QueryStrategy {
    /// Upper bound: largest squared bias first.
    Oracle,
    /// Uncertainty-agnostic: seeded random order.
    Random,
    /// Descending predictive variance.
    Uncertainty,
}

impl QueryStrategy {
    pub const ALL: [QueryStrategy; 3] = [
        QueryStrategy::Oracle,
        QueryStrategy::Random,
        QueryStrategy::Uncertainty,
    ];

    /// Row label used in the gain tables.
    pub fn table_label(&self) -> &'static str {
        match self {
            QueryStrategy::Oracle => "Oracle",
            QueryStrategy::Random => "w/o Uncertainty",
            QueryStrategy::Uncertainty => "Ours",
        }
    }

    pub fn slug(&self) -> &'static str {
        match self {
            QueryStrategy::Oracle => "oracle",
            QueryStrategy::Random => "random",
            QueryStrategy::Uncertainty => "uncertainty",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CurveMetric {
    Bias,
    AucRoc,
    AucPr,
}

impl CurveMetric {
    pub const ALL: [CurveMetric; 3] = [CurveMetric::Bias, CurveMetric::AucRoc, CurveMetric::AucPr];

    pub fn slug(&self) -> &'static str {
        match self {
            CurveMetric::Bias => "bias",
            CurveMetric::AucRoc => "auc_roc",
            CurveMetric::AucPr => "auc_pr",
        }
    }

    pub fn compute(&self, scores: &[f64], labels: &[f64]) -> Result<f64> {
        match self {
            CurveMetric::Bias => bias(scores, labels),
            CurveMetric::AucRoc => auc_roc(scores, labels),
            CurveMetric::AucPr => auc_pr(scores, labels),
        }
    }
}

/// Test-set predictions of one resample: score (predictive mean), uncertainty
/// (predictive variance), and true label per sample.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PredictionSet {
    scores: Vec<f64>,
    uncertainties: Vec<f64>,
    labels: Vec<f64>,
    pub resample_index: usize,
}

impl PredictionSet {
    pub fn new(
        scores: Vec<f64>,
        uncertainties: Vec<f64>,
        labels: Vec<f64>,
        resample_index: usize,
    ) -> Result<Self> {
        if scores.is_empty() || scores.len() != uncertainties.len() || scores.len() != labels.len()
        {
            return Err(Error::Usage(
                "prediction set needs equal-length nonempty scores, uncertainties, labels".into(),
            ));
        }
        if scores.iter().any(|v| !v.is_finite()) {
            return Err(Error::Usage("prediction scores must be finite".into()));
        }
        if uncertainties.iter().any(|&v| !(v > 0.0) || !v.is_finite()) {
            return Err(Error::Usage("uncertainties must be positive finite".into()));
        }
        if labels.iter().any(|&y| y != 0.0 && y != 1.0) {
            return Err(Error::Usage("labels must be 0 or 1".into()));
        }
        Ok(Self {
            scores,
            uncertainties,
            labels,
            resample_index,
        })
    }

    pub fn len(&self) -> usize {
        self.scores.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn scores(&self) -> &[f64] {
        &self.scores
    }

    pub fn uncertainties(&self) -> &[f64] {
        &self.uncertainties
    }

    pub fn labels(&self) -> &[f64] {
        &self.labels
    }

    pub fn squared_bias(&self, i: usize) -> f64 {
        let r = self.labels[i] - self.scores[i];
        r * r
    }
}

fn descending_order_by<K: Fn(usize) -> f64>(n: usize, key: K) -> Vec<usize> {
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| key(b).partial_cmp(&key(a)).unwrap().then(a.cmp(&b)));
    order
}

/// The order in which samples get queried under `strategy`. The RNG is only
/// consumed by the random strategy.
pub fn query_order(
    strategy: QueryStrategy,
    predset: &PredictionSet,
    rng: &mut ChaCha8Rng,
) -> Vec<usize> {
    let n = predset.len();
    match strategy {
        QueryStrategy::Oracle => descending_order_by(n, |i| predset.squared_bias(i)),
        QueryStrategy::Uncertainty => descending_order_by(n, |i| predset.uncertainties[i]),
        QueryStrategy::Random => {
            let mut order: Vec<usize> = (0..n).collect();
            order.shuffle(rng);
            order
        }
    }
}

/// Number of samples queried at `rate`: `ceil(rate * n)`, so any positive
/// rate queries at least one sample.
pub fn query_count(rate: f64, n: usize) -> usize {
    (rate * n as f64).ceil() as usize
}

/// Scores after querying the first `ceil(rate * n)` samples of `order`.
pub fn corrected_scores(predset: &PredictionSet, order: &[usize], rate: f64) -> Vec<f64> {
    let mut scores = predset.scores.clone();
    for &i in order.iter().take(query_count(rate, predset.len())) {
        scores[i] = predset.labels[i];
    }
    scores
}

/// Metric value at each rate, for one fixed query order.
pub fn curve_values(
    predset: &PredictionSet,
    order: &[usize],
    rates: &[f64],
    metric: CurveMetric,
) -> Result<Vec<f64>> {
    if order.len() != predset.len() {
        return Err(Error::Usage("query order length mismatch".into()));
    }
    if rates.iter().any(|&r| !(0.0..=1.0).contains(&r)) {
        return Err(Error::Usage("rates must lie in [0, 1]".into()));
    }
    rates
        .iter()
        .map(|&rate| {
            let scores = corrected_scores(predset, order, rate);
            metric.compute(&scores, &predset.labels)
        })
        .collect()
}

/// Per-resample curve for a strategy. The random strategy averages
/// [`RANDOM_SHUFFLES`] seeded shuffles; the shuffle streams are keyed by
/// `(seed, resample_index, shuffle)`.
pub fn strategy_curve(
    predset: &PredictionSet,
    strategy: QueryStrategy,
    rates: &[f64],
    metric: CurveMetric,
    seed: u64,
) -> Result<Vec<f64>> {
    match strategy {
        QueryStrategy::Random => {
            let mut acc = vec![0.0; rates.len()];
            for shuffle in 0..RANDOM_SHUFFLES {
                let stream = (predset.resample_index as u64) * RANDOM_SHUFFLES as u64
                    + shuffle as u64;
                let mut rng = stream_rng(seed, Purpose::EvalRandom, stream);
                let order = query_order(strategy, predset, &mut rng);
                for (a, v) in acc
                    .iter_mut()
                    .zip(curve_values(predset, &order, rates, metric)?)
                {
                    *a += v;
                }
            }
            Ok(acc.into_iter().map(|v| v / RANDOM_SHUFFLES as f64).collect())
        }
        _ => {
            let mut rng = stream_rng(seed, Purpose::EvalRandom, 0);
            let order = query_order(strategy, predset, &mut rng);
            curve_values(predset, &order, rates, metric)
        }
    }
}

/// A strategy's curve aggregated over resamples.
#[derive(Clone, Debug, Serialize)]
pub struct QueryCurve {
    pub strategy: QueryStrategy,
    pub metric: CurveMetric,
    pub rates: Vec<f64>,
    pub mean: Vec<f64>,
    pub std: Vec<f64>,
    pub per_resample: Vec<Vec<f64>>,
}

impl QueryCurve {
    /// Aggregates per-resample curve values. The rate grid must be strictly
    /// increasing and contain zero and every table rate.
    pub fn new(
        strategy: QueryStrategy,
        metric: CurveMetric,
        rates: Vec<f64>,
        per_resample: Vec<Vec<f64>>,
    ) -> Result<Self> {
        validate_rate_grid(&rates)?;
        if per_resample.is_empty() || per_resample.iter().any(|v| v.len() != rates.len()) {
            return Err(Error::Usage(
                "per-resample curve values must match the rate grid".into(),
            ));
        }
        let k = rates.len();
        let mut mean_v = Vec::with_capacity(k);
        let mut std_v = Vec::with_capacity(k);
        for i in 0..k {
            let column: Vec<f64> = per_resample.iter().map(|v| v[i]).collect();
            mean_v.push(mean(&column));
            std_v.push(sample_std(&column));
        }
        Ok(Self {
            strategy,
            metric,
            rates,
            mean: mean_v,
            std: std_v,
            per_resample,
        })
    }

    pub fn value_at_rate(&self, rate: f64) -> Option<f64> {
        self.rates
            .iter()
            .position(|&r| r == rate)
            .map(|i| self.mean[i])
    }
}

/// Rate grids used for reporting must be strictly increasing and include 0
/// plus all table rates.
pub fn validate_rate_grid(rates: &[f64]) -> Result<()> {
    if rates.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Usage("rates must be strictly increasing".into()));
    }
    if rates.first() != Some(&0.0) {
        return Err(Error::Usage("rate grid must start at 0".into()));
    }
    for t in TABLE_RATES {
        if !rates.contains(&t) {
            return Err(Error::Usage(format!("rate grid must include {t}")));
        }
    }
    if rates.iter().any(|&r| !(0.0..=1.0).contains(&r)) {
        return Err(Error::Usage("rates must lie in [0, 1]".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn predset(scores: &[f64], sigma2: &[f64], labels: &[f64]) -> PredictionSet {
        PredictionSet::new(scores.to_vec(), sigma2.to_vec(), labels.to_vec(), 0).unwrap()
    }

    #[test]
    fn oracle_orders_by_squared_bias() {
        let p = predset(&[0.9, 0.1, 0.5], &[1.0, 1.0, 1.0], &[0.0, 0.0, 1.0]);
        let mut rng = stream_rng(0, Purpose::EvalRandom, 0);
        assert_eq!(query_order(QueryStrategy::Oracle, &p, &mut rng), vec![0, 2, 1]);
    }

    #[test]
    fn uncertainty_orders_by_variance() {
        let p = predset(&[0.5, 0.5, 0.5], &[3.0, 1.0, 2.0], &[0.0, 1.0, 0.0]);
        let mut rng = stream_rng(0, Purpose::EvalRandom, 0);
        assert_eq!(
            query_order(QueryStrategy::Uncertainty, &p, &mut rng),
            vec![0, 2, 1]
        );
    }

    #[test]
    fn random_order_is_seed_deterministic() {
        let p = predset(&[0.1, 0.2, 0.3, 0.4], &[1.0; 4], &[0.0, 1.0, 0.0, 1.0]);
        let a = query_order(
            QueryStrategy::Random,
            &p,
            &mut stream_rng(5, Purpose::EvalRandom, 1),
        );
        let b = query_order(
            QueryStrategy::Random,
            &p,
            &mut stream_rng(5, Purpose::EvalRandom, 1),
        );
        assert_eq!(a, b);
    }

    #[test]
    fn rate_zero_is_raw_and_rate_one_is_perfect() {
        let p = predset(&[0.4, 0.8, 0.2], &[1.0; 3], &[0.0, 1.0, 1.0]);
        let mut rng = stream_rng(0, Purpose::EvalRandom, 0);
        let order = query_order(QueryStrategy::Oracle, &p, &mut rng);
        let rates = [0.0, 1.0];
        let b = curve_values(&p, &order, &rates, CurveMetric::Bias).unwrap();
        assert_eq!(b[0], crate::eval::metrics::bias(p.scores(), p.labels()).unwrap());
        assert_eq!(b[1], 0.0);
        let roc = curve_values(&p, &order, &rates, CurveMetric::AucRoc).unwrap();
        assert_eq!(roc[1], 1.0);
        let pr = curve_values(&p, &order, &rates, CurveMetric::AucPr).unwrap();
        assert_eq!(pr[1], 1.0);
    }

    #[test]
    fn query_count_rounds_up() {
        assert_eq!(query_count(0.0, 100), 0);
        assert_eq!(query_count(0.001, 100), 1);
        assert_eq!(query_count(0.5, 3), 2);
        assert_eq!(query_count(1.0, 7), 7);
    }

    #[test]
    fn rate_grid_validation() {
        assert!(validate_rate_grid(&DEFAULT_RATES).is_ok());
        assert!(validate_rate_grid(&[0.0, 0.5]).is_err());
        let mut no_zero = DEFAULT_RATES.to_vec();
        no_zero.remove(0);
        assert!(validate_rate_grid(&no_zero).is_err());
    }

    #[test]
    fn curve_aggregation_means_and_stds() {
        let rates = DEFAULT_RATES.to_vec();
        let a = vec![1.0; rates.len()];
        let b = vec![3.0; rates.len()];
        let curve = QueryCurve::new(
            QueryStrategy::Oracle,
            CurveMetric::Bias,
            rates,
            vec![a, b],
        )
        .unwrap();
        assert!(curve.mean.iter().all(|&m| m == 2.0));
        assert!(curve.std.iter().all(|&s| (s - 2.0f64.sqrt()).abs() < 1e-12));
        assert_eq!(curve.value_at_rate(0.2), Some(2.0));
    }
}
