//! Ranking metrics computed from scratch.
//!
//! `auc_roc` is the Mann–Whitney statistic (ties count one half), computed
//! via tie-averaged ranks. `auc_pr` is average precision: the mean, over
//! positives ranked by descending score, of the precision at each positive's
//! rank. Score ties are broken by original index, so both metrics are
//! deterministic functions of their inputs.

use crate::error::{Error, Result};

fn validate_labels(scores: &[f64], labels: &[f64]) -> Result<(usize, usize)> {
    if scores.len() != labels.len() {
        return Err(Error::Usage(format!(
            "{} scores for {} labels",
            scores.len(),
            labels.len()
        )));
    }
    if scores.iter().any(|s| !s.is_finite()) {
        return Err(Error::Usage("scores must be finite".into()));
    }
    let mut pos = 0;
    let mut neg = 0;
    for &y in labels {
        if y == 1.0 {
            pos += 1;
        } else if y == 0.0 {
            neg += 1;
        } else {
            return Err(Error::Usage(format!("labels must be 0 or 1, got {y}")));
        }
    }
    Ok((pos, neg))
}

/// Probability that a random positive outranks a random negative, ties
/// counted one half.
pub fn auc_roc(scores: &[f64], labels: &[f64]) -> Result<f64> {
    let (pos, neg) = validate_labels(scores, labels)?;
    if pos == 0 || neg == 0 {
        return Err(Error::UndefinedMetric(
            "AUC-ROC needs both classes present".into(),
        ));
    }

    let n = scores.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| scores[a].partial_cmp(&scores[b]).unwrap().then(a.cmp(&b)));

    // Tie-averaged ranks (1-based, ascending score).
    let mut positive_rank_sum = 0.0;
    let mut i = 0;
    while i < n {
        let mut j = i;
        while j + 1 < n && scores[order[j + 1]] == scores[order[i]] {
            j += 1;
        }
        let avg_rank = (i + 1 + j + 1) as f64 / 2.0;
        for &idx in &order[i..=j] {
            if labels[idx] == 1.0 {
                positive_rank_sum += avg_rank;
            }
        }
        i = j + 1;
    }

    let p = pos as f64;
    let q = neg as f64;
    Ok((positive_rank_sum - p * (p + 1.0) / 2.0) / (p * q))
}

/// Average precision over positives, descending score, index tie-break.
pub fn auc_pr(scores: &[f64], labels: &[f64]) -> Result<f64> {
    let (pos, _) = validate_labels(scores, labels)?;
    if pos == 0 {
        return Err(Error::UndefinedMetric(
            "AUC-PR needs at least one positive".into(),
        ));
    }

    let n = scores.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| scores[b].partial_cmp(&scores[a]).unwrap().then(a.cmp(&b)));

    let mut sum = 0.0;
    let mut true_positives = 0usize;
    for (rank0, &idx) in order.iter().enumerate() {
        if labels[idx] == 1.0 {
            true_positives += 1;
            sum += true_positives as f64 / (rank0 + 1) as f64;
        }
    }
    Ok(sum / pos as f64)
}

/// Mean squared error between scores and labels — the predictive-bias metric.
pub fn bias(scores: &[f64], labels: &[f64]) -> Result<f64> {
    if scores.len() != labels.len() || scores.is_empty() {
        return Err(Error::Usage("bias needs equal nonempty inputs".into()));
    }
    let n = scores.len() as f64;
    Ok(scores
        .iter()
        .zip(labels)
        .map(|(&s, &y)| (y - s) * (y - s))
        .sum::<f64>()
        / n)
}
