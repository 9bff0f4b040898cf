use invase_core::data::{load_wdbc, SplitSpec};
use invase_core::eval::{evaluate, CurveMetric, QueryStrategy, DEFAULT_RATES};
use invase_core::invase::TrainingConfig;
use invase_core::nn::AdamParams;
use invase_core::runner::run_resamples;

fn main() {
    let dataset = load_wdbc("data/wdbc.csv").unwrap();
    let split = SplitSpec::default();

    // Seed spread at the best config, plus a lambda-scale probe.
    let mut variants: Vec<(String, TrainingConfig)> = Vec::new();
    for seed in [42u64, 1, 7, 13, 99] {
        variants.push((
            format!("lr=1e-4 it=5000 l=0.10 seed={seed}"),
            TrainingConfig {
                iterations: 5000,
                seed,
                optimizer: AdamParams {
                    learning_rate: 1e-4,
                    ..AdamParams::default()
                },
                ..TrainingConfig::default()
            },
        ));
    }
    for lambda in [0.3, 1.0] {
        variants.push((
            format!("lr=1e-4 it=5000 l={lambda} seed=42"),
            TrainingConfig {
                iterations: 5000,
                lambda,
                optimizer: AdamParams {
                    learning_rate: 1e-4,
                    ..AdamParams::default()
                },
                ..TrainingConfig::default()
            },
        ));
    }

    for (name, config) in variants {
        let runs = run_resamples(&dataset, &split, &config).unwrap();
        let predsets: Vec<_> = runs.iter().map(|r| r.predictions.clone()).collect();
        let report =
            evaluate(&predsets, &QueryStrategy::ALL, &DEFAULT_RATES, split.seed).unwrap();
        let unc = report.curve(QueryStrategy::Uncertainty, CurveMetric::Bias).unwrap();
        let b0 = unc.value_at_rate(0.0).unwrap();
        println!(
            "{name}: roc={:.4} pr={:.4} unc@20%={:.2}%",
            report.baselines.auc_roc.mean,
            report.baselines.auc_pr.mean,
            100.0 * unc.value_at_rate(0.2).unwrap() / b0,
        );
    }
}
