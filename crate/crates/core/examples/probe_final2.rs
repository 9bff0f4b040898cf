use invase_core::data::{load_wdbc, SplitSpec};
use invase_core::eval::{evaluate, CurveMetric, QueryStrategy, DEFAULT_RATES};
use invase_core::invase::TrainingConfig;
use invase_core::nn::AdamParams;
use invase_core::runner::run_resamples;
use std::time::Instant;

fn main() {
    let dataset = load_wdbc("data/wdbc.csv").unwrap();
    let split = SplitSpec::default();

    let variants: Vec<(&str, f64, usize)> = vec![
        ("lr=5e-5 it=10000", 5e-5, 10000),
        ("lr=2e-4 it=10000", 2e-4, 10000),
    ];
    for (name, lr, iterations) in variants {
        let config = TrainingConfig {
            iterations,
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
        let mask = runs
            .iter()
            .filter_map(|r| r.model.history().last().map(|h| h.mean_mask_size))
            .sum::<f64>()
            / runs.len() as f64;
        println!(
            "{name}: roc={:.4} pr={:.4} bias0={:.4} unc@20%={:.2}% rnd@20%={:.2}% |s|={mask:.1} ({secs:.0}s)",
            report.baselines.auc_roc.mean,
            report.baselines.auc_pr.mean,
            b0,
            100.0 * unc.value_at_rate(0.2).unwrap() / b0,
            100.0 * rnd.value_at_rate(0.2).unwrap() / b0,
        );
        let per: Vec<String> = runs
            .iter()
            .map(|r| {
                let p = &r.predictions;
                let n = p.len();
                let mut order: Vec<usize> = (0..n).collect();
                order.sort_by(|&a, &b| {
                    p.uncertainties()[b].partial_cmp(&p.uncertainties()[a]).unwrap()
                });
                let k = (0.2 * n as f64).ceil() as usize;
                let total: f64 = (0..n).map(|i| p.squared_bias(i)).sum();
                let retained: f64 = order[k..].iter().map(|&i| p.squared_bias(i)).sum();
                format!("{:.0}%", 100.0 * retained / total.max(1e-12))
            })
            .collect();
        println!("   per-resample retained: {}", per.join(" "));
    }
}
