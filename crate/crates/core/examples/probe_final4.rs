use invase_core::data::{load_wdbc, SplitSpec};
use invase_core::eval::{evaluate, CurveMetric, QueryStrategy, DEFAULT_RATES};
use invase_core::invase::TrainingConfig;
use invase_core::nn::AdamParams;
use invase_core::runner::run_resamples;
use std::time::Instant;

fn main() {
    let dataset = load_wdbc("data/wdbc.csv").unwrap();
    let split = SplitSpec::default();

    let variants: Vec<(&str, f64, usize, f64, usize)> = vec![
        ("lr=1e-4   it=4000 l=0.10 b=64 ", 1e-4, 4000, 0.10, 64),
        ("lr=1e-4   it=6000 l=0.10 b=64 ", 1e-4, 6000, 0.10, 64),
        ("lr=7e-5   it=6000 l=0.10 b=64 ", 7e-5, 6000, 0.10, 64),
        ("lr=1e-4   it=5000 l=0.15 b=64 ", 1e-4, 5000, 0.15, 64),
        ("lr=1e-4   it=3000 l=0.10 b=128", 1e-4, 3000, 0.10, 128),
        ("lr=1.3e-4 it=5000 l=0.10 b=64 ", 1.3e-4, 5000, 0.10, 64),
    ];
    for (name, lr, iterations, lambda, batch) in variants {
        let config = TrainingConfig {
            iterations,
            lambda,
            batch_size: batch,
            optimizer: AdamParams {
                learning_rate: lr,
                ..AdamParams::default()
            },
            ..TrainingConfig::default()
        };
        let t0 = Instant::now();
        let runs = run_resamples(&dataset, &split, &config).unwrap();
        let secs = t0.elapsed().as_secs_f64();
        let predsets: Vec<_> = runs.iter().map(|r| r.predictions.clone()).collect();
        let report =
            evaluate(&predsets, &QueryStrategy::ALL, &DEFAULT_RATES, split.seed).unwrap();
        let unc = report.curve(QueryStrategy::Uncertainty, CurveMetric::Bias).unwrap();
        let rnd = report.curve(QueryStrategy::Random, CurveMetric::Bias).unwrap();
        let b0 = unc.value_at_rate(0.0).unwrap();
        println!(
            "{name}: roc={:.4} pr={:.4} bias0={:.4} unc@20%={:.2}% rnd@20%={:.2}% ({secs:.0}s)",
            report.baselines.auc_roc.mean,
            report.baselines.auc_pr.mean,
            b0,
            100.0 * unc.value_at_rate(0.2).unwrap() / b0,
            100.0 * rnd.value_at_rate(0.2).unwrap() / b0,
        );
    }
}
