//! Property tests for the ranking metrics and query curves against
//! brute-force oracles.

use proptest::prelude::*;
use rand::Rng;

use invase_core::eval::{
    auc_pr, auc_roc, curve_values, query_order, CurveMetric, PredictionSet, QueryStrategy,
};
use invase_core::rng::{stream_rng, Purpose};

/// Pairwise Mann-Whitney oracle: wins plus half-ties over all
/// positive/negative pairs.
fn auc_roc_oracle(scores: &[f64], labels: &[f64]) -> f64 {
    let mut num = 0.0;
    let mut pairs = 0.0;
    for (i, &yi) in labels.iter().enumerate() {
        if yi != 1.0 {
            continue;
        }
        for (j, &yj) in labels.iter().enumerate() {
            if yj != 0.0 {
                continue;
            }
            pairs += 1.0;
            num += if scores[i] > scores[j] {
                1.0
            } else if scores[i] == scores[j] {
                0.5
            } else {
                0.0
            };
        }
    }
    num / pairs
}

/// Rank-by-rank precision oracle. The rank of sample `i` under descending
/// score with index tie-break is recounted from scratch per positive.
fn auc_pr_oracle(scores: &[f64], labels: &[f64]) -> f64 {
    let n = scores.len();
    let rank_of = |i: usize| -> usize {
        (0..n)
            .filter(|&j| scores[j] > scores[i] || (scores[j] == scores[i] && j <= i))
            .count()
    };
    let mut positives: Vec<usize> = (0..n).filter(|&i| labels[i] == 1.0).collect();
    positives.sort_by_key(|&i| rank_of(i));
    let mut sum = 0.0;
    for (k, &i) in positives.iter().enumerate() {
        sum += (k + 1) as f64 / rank_of(i) as f64;
    }
    sum / positives.len() as f64
}

fn tied_instance(seed: u64, n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut rng = stream_rng(seed, Purpose::EvalRandom, 99);
    let grid = [0.0, 0.25, 0.5, 0.75, 1.0];
    let scores: Vec<f64> = (0..n).map(|_| grid[rng.gen_range(0..grid.len())]).collect();
    let mut labels: Vec<f64> = (0..n).map(|_| if rng.gen::<bool>() { 1.0 } else { 0.0 }).collect();
    // Force both classes so the metrics are defined.
    labels[0] = 1.0;
    labels[1 % n] = 0.0;
    (scores, labels)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    /// Exact agreement with the pairwise oracle, ties included.
    #[test]
    fn auc_roc_matches_oracle(seed in 0u64..100_000, n in 2usize..=8) {
        let (scores, labels) = tied_instance(seed, n);
        let fast = auc_roc(&scores, &labels).unwrap();
        let slow = auc_roc_oracle(&scores, &labels);
        prop_assert_eq!(fast, slow);
    }

    /// Exact agreement with the per-positive precision oracle.
    #[test]
    fn auc_pr_matches_oracle(seed in 0u64..100_000, n in 2usize..=8) {
        let (scores, labels) = tied_instance(seed, n);
        let fast = auc_pr(&scores, &labels).unwrap();
        let slow = auc_pr_oracle(&scores, &labels);
        prop_assert_eq!(fast, slow);
    }

    /// Bias curves never increase with the query rate, for any strategy.
    #[test]
    fn bias_curves_are_monotone(seed in 0u64..50_000, n in 2usize..=30) {
        let mut rng = stream_rng(seed, Purpose::EvalRandom, 7);
        let scores: Vec<f64> = (0..n).map(|_| rng.gen_range(-0.3..1.3)).collect();
        let sigma2: Vec<f64> = (0..n).map(|_| rng.gen_range(0.01..3.0)).collect();
        let labels: Vec<f64> = (0..n).map(|_| if rng.gen::<bool>() { 1.0 } else { 0.0 }).collect();
        let predset = PredictionSet::new(scores, sigma2, labels, 0).unwrap();
        let rates: Vec<f64> = (0..=50).map(|k| k as f64 / 50.0).collect();
        for strategy in QueryStrategy::ALL {
            let order = query_order(strategy, &predset, &mut rng);
            let values = curve_values(&predset, &order, &rates, CurveMetric::Bias).unwrap();
            for w in values.windows(2) {
                prop_assert!(w[1] <= w[0] + 1e-15, "{strategy:?}: {} -> {}", w[0], w[1]);
            }
            prop_assert!(values.last().unwrap().abs() < 1e-15);
        }
    }

    /// The oracle order is pointwise minimal among all query orders.
    #[test]
    fn oracle_bias_curve_is_pointwise_minimal(seed in 0u64..50_000, n in 2usize..=25) {
        let mut rng = stream_rng(seed, Purpose::EvalRandom, 8);
        let scores: Vec<f64> = (0..n).map(|_| rng.gen_range(-0.3..1.3)).collect();
        let sigma2: Vec<f64> = (0..n).map(|_| rng.gen_range(0.01..3.0)).collect();
        let labels: Vec<f64> = (0..n).map(|_| if rng.gen::<bool>() { 1.0 } else { 0.0 }).collect();
        let predset = PredictionSet::new(scores, sigma2, labels, 0).unwrap();
        let rates: Vec<f64> = (0..=20).map(|k| k as f64 / 20.0).collect();
        let oracle_order = query_order(QueryStrategy::Oracle, &predset, &mut rng);
        let oracle = curve_values(&predset, &oracle_order, &rates, CurveMetric::Bias).unwrap();
        for strategy in [QueryStrategy::Uncertainty, QueryStrategy::Random] {
            let order = query_order(strategy, &predset, &mut rng);
            let other = curve_values(&predset, &order, &rates, CurveMetric::Bias).unwrap();
            for (o, v) in oracle.iter().zip(&other) {
                prop_assert!(o <= &(v + 1e-12), "oracle {o} above {strategy:?} {v}");
            }
        }
    }
}
