use invase_core::data::{load_wdbc, SplitSpec};
use invase_core::eval::{evaluate, pearson, CurveMetric, QueryStrategy, DEFAULT_RATES};
use invase_core::invase::TrainingConfig;
use invase_core::nn::AdamParams;
use invase_core::runner::{run_resample, run_resamples};
use rayon::prelude::*;
use std::time::Instant;

fn main() {
    let dataset = load_wdbc("data/wdbc.csv").unwrap();
    let split = SplitSpec::default();

    for (name, iterations) in [("it=5000", 5000usize), ("it=10000", 10000)] {
        let config = TrainingConfig {
            iterations,
            optimizer: AdamParams {
                learning_rate: 1e-4,
                ..AdamParams::default()
            },
            ..TrainingConfig::default()
        };
        let t0 = Instant::now();
        let runs = run_resamples(&dataset, &split, &config).unwrap();
        let train_time = t0.elapsed().as_secs_f64();
        let predsets: Vec<_> = runs.iter().map(|r| r.predictions.clone()).collect();
        let report =
            evaluate(&predsets, &QueryStrategy::ALL, &DEFAULT_RATES, split.seed).unwrap();

        println!("=== lr=1e-4 {name}  ({train_time:.0}s for 20 runs)");
        println!(
            "c1: auc_roc={:.4} (>=0.97)  auc_pr={:.4} (>=0.98)",
            report.baselines.auc_roc.mean, report.baselines.auc_pr.mean
        );
        let unc = report.curve(QueryStrategy::Uncertainty, CurveMetric::Bias).unwrap();
        let rnd = report.curve(QueryStrategy::Random, CurveMetric::Bias).unwrap();
        let b0 = unc.value_at_rate(0.0).unwrap();
        println!(
            "c2: uncertainty@20% = {:.2}% of 0-rate (<=10%)  random = {:.2}% (>=60%)",
            100.0 * unc.value_at_rate(0.2).unwrap() / b0,
            100.0 * rnd.value_at_rate(0.2).unwrap() / b0
        );
        let mut c3_ok = true;
        for metric in [CurveMetric::AucRoc, CurveMetric::AucPr] {
            for &rate in &[0.01, 0.05, 0.1, 0.5] {
                let g = |s: QueryStrategy| {
                    let c = report.curve(s, metric).unwrap();
                    c.value_at_rate(rate).unwrap() - c.value_at_rate(0.0).unwrap()
                };
                if !(g(QueryStrategy::Oracle) >= g(QueryStrategy::Uncertainty)
                    && g(QueryStrategy::Uncertainty) >= g(QueryStrategy::Random))
                {
                    c3_ok = false;
                    println!("  c3 VIOLATION {metric:?} at {rate}");
                }
            }
        }
        println!("c3 ordering: {}", if c3_ok { "ok" } else { "VIOLATED" });

        // c9 direction: shaped (from the big run) vs unshaped on resamples 0..5
        let t1 = Instant::now();
        let unshaped_cfg = TrainingConfig { omega: 0.0, ..config };
        let corr_of = |run: &invase_core::runner::ResampleRun| {
            let p = &run.predictions;
            let lv: Vec<f64> = p.uncertainties().iter().map(|v| v.ln()).collect();
            let sb: Vec<f64> = (0..p.len()).map(|i| p.squared_bias(i)).collect();
            pearson(&lv, &sb)
        };
        let shaped: Vec<f64> = runs[..5].iter().map(corr_of).collect();
        let unshaped: Vec<f64> = (0..5usize)
            .into_par_iter()
            .map(|i| corr_of(&run_resample(&dataset, &split, &unshaped_cfg, i).unwrap()))
            .collect();
        let ms = shaped.iter().sum::<f64>() / 5.0;
        let mu = unshaped.iter().sum::<f64>() / 5.0;
        println!(
            "c9: corr shaped={ms:.4} unshaped={mu:.4} direction={} ({:.0}s)",
            if ms > mu { "ok" } else { "VIOLATED" },
            t1.elapsed().as_secs_f64()
        );
    }
}
