use invase_core::data::{load_wdbc, SplitSpec};
use invase_core::eval::{evaluate, CurveMetric, QueryStrategy, DEFAULT_RATES};
use invase_core::invase::TrainingConfig;
use invase_core::nn::AdamParams;
use invase_core::runner::run_resamples;

fn main() {
    let dataset = load_wdbc("data/wdbc.csv").unwrap();
    let split = SplitSpec::default();

    let mut variants: Vec<(String, TrainingConfig)> = Vec::new();
    for (sel_lr, crit_lr, iterations) in [
        (1e-3, 1e-4, 5000usize),
        (3e-4, 1e-4, 5000),
        (1e-3, 1e-4, 10000),
        (1e-3, 5e-5, 10000),
    ] {
        variants.push((
            format!("sel={sel_lr:.0e} crit={crit_lr:.0e} it={iterations}"),
            TrainingConfig {
                iterations,
                optimizer: AdamParams {
                    learning_rate: crit_lr,
                    ..AdamParams::default()
                },
                selector_optimizer: Some(AdamParams {
                    learning_rate: sel_lr,
                    ..AdamParams::default()
                }),
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
        let mask = runs
            .iter()
            .filter_map(|r| r.model.history().last().map(|h| h.mean_mask_size))
            .sum::<f64>()
            / runs.len() as f64;
        println!(
            "{name}: roc={:.4} pr={:.4} unc@20%={:.2}% |s|={mask:.1}",
            report.baselines.auc_roc.mean,
            report.baselines.auc_pr.mean,
            100.0 * unc.value_at_rate(0.2).unwrap() / b0,
        );
    }
}
