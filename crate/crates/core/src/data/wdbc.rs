//! UCI-WDBC loader.
//!
//! Expects the UCI layout: one record per line, comma separated, columns
//! `id, diagnosis, <30 numeric features>` with diagnosis `M` (malignant,
//! label 1) or `B` (benign, label 0). The id column is ignored. A leading
//! header line is skipped when its diagnosis field is neither `M` nor `B`
//! *and* its feature fields do not parse as numbers; a data row with a bad
//! diagnosis but numeric features is reported as an error instead.

use std::fs;
use std::path::Path;

use crate::data::dataset::LabeledDataset;
use crate::error::{Error, Result};
use crate::matrix::Matrix;

pub const WDBC_DIM: usize = 30;

/// Canonical WDBC feature names, in file column order.
pub const WDBC_FEATURE_NAMES: [&str; WDBC_DIM] = [
    "mean radius",
    "mean texture",
    "mean perimeter",
    "mean area",
    "mean smoothness",
    "mean compactness",
    "mean concavity",
    "mean concave points",
    "mean symmetry",
    "mean fractal dimension",
    "radius error",
    "texture error",
    "perimeter error",
    "area error",
    "smoothness error",
    "compactness error",
    "concavity error",
    "concave points error",
    "symmetry error",
    "fractal dimension error",
    "worst radius",
    "worst texture",
    "worst perimeter",
    "worst area",
    "worst smoothness",
    "worst compactness",
    "worst concavity",
    "worst concave points",
    "worst symmetry",
    "worst fractal dimension",
];

pub fn load_wdbc(path: impl AsRef<Path>) -> Result<LabeledDataset> {
    let text = fs::read_to_string(path.as_ref()).map_err(|e| Error::Data {
        row: None,
        message: format!("cannot read {}: {e}", path.as_ref().display()),
    })?;
    parse_wdbc(&text)
}

pub fn parse_wdbc(text: &str) -> Result<LabeledDataset> {
    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut labels: Vec<f64> = Vec::new();

    for (line_no, line) in text.lines().enumerate() {
        let row = line_no + 1;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if rows.is_empty() && labels.is_empty() && row == 1 && looks_like_header(&fields) {
            continue;
        }
        if fields.len() != WDBC_DIM + 2 {
            return Err(Error::Data {
                row: Some(row),
                message: format!("expected {} columns, found {}", WDBC_DIM + 2, fields.len()),
            });
        }
        let label = match fields[1] {
            "M" => 1.0,
            "B" => 0.0,
            other => {
                return Err(Error::Data {
                    row: Some(row),
                    message: format!("diagnosis must be M or B, got {other:?}"),
                })
            }
        };
        let mut values = Vec::with_capacity(WDBC_DIM);
        for (col, field) in fields[2..].iter().enumerate() {
            let v: f64 = field.parse().map_err(|_| Error::Data {
                row: Some(row),
                message: format!("feature column {} is not numeric: {field:?}", col + 1),
            })?;
            if !v.is_finite() {
                return Err(Error::Data {
                    row: Some(row),
                    message: format!("feature column {} is not finite", col + 1),
                });
            }
            values.push(v);
        }
        rows.push(values);
        labels.push(label);
    }

    if rows.is_empty() {
        return Err(Error::Data {
            row: None,
            message: "no data rows in WDBC file".into(),
        });
    }

    let features = Matrix::from_rows(&rows)?;
    LabeledDataset::new(
        features,
        labels,
        WDBC_FEATURE_NAMES.iter().map(|s| s.to_string()).collect(),
    )
}

fn looks_like_header(fields: &[&str]) -> bool {
    if fields.len() < 3 {
        return false;
    }
    let diagnosis_ok = matches!(fields[1], "M" | "B");
    let any_non_numeric = fields[2..].iter().any(|f| f.parse::<f64>().is_err());
    !diagnosis_ok && any_non_numeric
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(id: usize, diag: &str, fill: f64) -> String {
        let feats: Vec<String> = (0..WDBC_DIM).map(|i| (fill + i as f64).to_string()).collect();
        format!("{id},{diag},{}", feats.join(","))
    }

    #[test]
    fn parses_minimal_file() {
        let text = format!("{}\n{}\n", row(1, "M", 0.5), row(2, "B", 1.5));
        let ds = parse_wdbc(&text).unwrap();
        assert_eq!(ds.len(), 2);
        assert_eq!(ds.dim(), WDBC_DIM);
        assert_eq!(ds.labels(), &[1.0, 0.0]);
        assert_eq!(ds.feature_names()[20], "worst radius");
    }

    #[test]
    fn header_is_skipped() {
        let header = format!(
            "id,diagnosis,{}",
            WDBC_FEATURE_NAMES.join(",")
        );
        let text = format!("{header}\n{}\n", row(1, "B", 0.0));
        let ds = parse_wdbc(&text).unwrap();
        assert_eq!(ds.len(), 1);
    }

    #[test]
    fn header_only_is_an_error() {
        let header = format!("id,diagnosis,{}", WDBC_FEATURE_NAMES.join(","));
        let err = parse_wdbc(&header).unwrap_err();
        assert!(matches!(err, Error::Data { row: None, .. }));
    }

    #[test]
    fn bad_diagnosis_names_row() {
        let text = format!("{}\n{}\n", row(1, "M", 0.5), row(2, "X", 1.5));
        let err = parse_wdbc(&text).unwrap_err();
        assert!(matches!(err, Error::Data { row: Some(2), .. }), "{err:?}");
    }

    #[test]
    fn wrong_column_count_names_row() {
        let text = format!("{}\n1,M,3.5\n", row(1, "M", 0.5));
        let err = parse_wdbc(&text).unwrap_err();
        assert!(matches!(err, Error::Data { row: Some(2), .. }));
    }

    #[test]
    fn non_numeric_feature_names_row() {
        let feats: Vec<String> = (0..WDBC_DIM)
            .map(|i| if i == 4 { "abc".to_string() } else { i.to_string() })
            .collect();
        let text = format!("{}\n2,B,{}\n", row(1, "M", 0.5), feats.join(","));
        let err = parse_wdbc(&text).unwrap_err();
        assert!(matches!(err, Error::Data { row: Some(2), .. }));
    }
}
