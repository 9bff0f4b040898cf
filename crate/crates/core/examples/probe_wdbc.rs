use invase_core::data::{load_wdbc, SplitSpec};
use invase_core::eval::{evaluate, CurveMetric, QueryStrategy, DEFAULT_RATES};
use invase_core::invase::TrainingConfig;
use invase_core::runner::run_resamples;
use std::time::Instant;

fn main() {
    let dataset = load_wdbc("data/wdbc.csv").unwrap();
    let split = SplitSpec::default();
    let config = TrainingConfig::default();
    let t0 = Instant::now();
    let runs = run_resamples(&dataset, &split, &config).unwrap();
    println!("20 resamples in {:.1}s", t0.elapsed().as_secs_f64());

    let predsets: Vec<_> = runs.iter().map(|r| r.predictions.clone()).collect();
    let report = evaluate(&predsets, &QueryStrategy::ALL, &DEFAULT_RATES, split.seed).unwrap();
    println!(
        "criterion 1: auc_roc={:.4} (need >=0.97)  auc_pr={:.4} (need >=0.98)",
        report.baselines.auc_roc.mean, report.baselines.auc_pr.mean
    );

    let bias_unc = report
        .curve(QueryStrategy::Uncertainty, CurveMetric::Bias)
        .unwrap();
    let bias_rnd = report.curve(QueryStrategy::Random, CurveMetric::Bias).unwrap();
    let b0 = bias_unc.value_at_rate(0.0).unwrap();
    let unc20 = bias_unc.value_at_rate(0.2).unwrap();
    let rnd20 = bias_rnd.value_at_rate(0.2).unwrap();
    println!(
        "criterion 2: uncertainty bias at 20% = {:.2}% of 0-rate (need <=10%), random = {:.2}% (need >=60%)",
        100.0 * unc20 / b0,
        100.0 * rnd20 / b0
    );

    for metric in [CurveMetric::AucRoc, CurveMetric::AucPr] {
        let table = report.gain_table(metric).unwrap();
        println!("gain table {:?}:", metric);
        print!("{}", table.to_csv());
        for &rate in &[0.01, 0.05, 0.1, 0.5] {
            let g = |s: QueryStrategy| {
                let c = report.curve(s, metric).unwrap();
                c.value_at_rate(rate).unwrap() - c.value_at_rate(0.0).unwrap()
            };
            let (oracle, ours, random) = (
                g(QueryStrategy::Oracle),
                g(QueryStrategy::Uncertainty),
                g(QueryStrategy::Random),
            );
            println!(
                "criterion 3 at {rate}: oracle {:.5} >= ours {:.5} >= random {:.5} : {}",
                oracle,
                ours,
                random,
                oracle >= ours && ours >= random
            );
        }
    }
}
