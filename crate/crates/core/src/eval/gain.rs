//! Gain tables: performance gain in percentage points at the table rates.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::eval::query::{CurveMetric, QueryCurve, QueryStrategy, TABLE_RATES};

#[derive(Clone, Debug, Serialize)]
pub struct GainRow {
    pub strategy: QueryStrategy,
    /// Gains over the 0%-rate value, in percentage points, one per table rate.
    pub gains_pp: Vec<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GainTable {
    pub metric: CurveMetric,
    pub rates: Vec<f64>,
    pub base_value: f64,
    pub rows: Vec<GainRow>,
}

/// Builds the table from one curve per strategy. All curves must share the
/// metric and rate grid; `base_value` is the common 0%-rate mean.
pub fn gain_table(curves: &[QueryCurve], base_value: f64) -> Result<GainTable> {
    let first = curves
        .first()
        .ok_or_else(|| Error::Usage("gain table needs at least one curve".into()))?;
    for c in curves {
        if c.metric != first.metric || c.rates != first.rates {
            return Err(Error::Usage(
                "gain table curves must share metric and rate grid".into(),
            ));
        }
    }
    let mut rows = Vec::with_capacity(curves.len());
    for curve in curves {
        let gains_pp = TABLE_RATES
            .iter()
            .map(|&rate| {
                let value = curve
                    .value_at_rate(rate)
                    .ok_or_else(|| Error::Usage(format!("curve missing rate {rate}")))?;
                Ok((value - base_value) * 100.0)
            })
            .collect::<Result<Vec<f64>>>()?;
        rows.push(GainRow {
            strategy: curve.strategy,
            gains_pp,
        });
    }
    Ok(GainTable {
        metric: first.metric,
        rates: TABLE_RATES.to_vec(),
        base_value,
        rows,
    })
}

/// Percentage label for a rate: 0.001 -> "0.1%", 0.5 -> "50%".
pub fn rate_label(rate: f64) -> String {
    let pct = rate * 100.0;
    let s = format!("{pct:.6}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    format!("{s}%")
}

impl GainTable {
    /// CSV layout: `Methods` column then one column per table rate, rows in
    /// Oracle / w/o Uncertainty / Ours order as provided.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("Methods");
        for &r in &self.rates {
            out.push(',');
            out.push_str(&rate_label(r));
        }
        out.push('\n');
        for row in &self.rows {
            out.push_str(row.strategy.table_label());
            for g in &row.gains_pp {
                out.push_str(&format!(",{g}"));
            }
            out.push('\n');
        }
        out
    }

    pub fn row(&self, strategy: QueryStrategy) -> Option<&GainRow> {
        self.rows.iter().find(|r| r.strategy == strategy)
    }
}
