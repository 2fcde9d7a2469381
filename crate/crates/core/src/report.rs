//! Number formatting and CSV/JSON emitters shared by the analysis modules.
//!
//! Machine formats carry 17 significant digits; plain text carries 5.

use std::io::Write;

use serde::Serialize;

use crate::distance::NearestSingularReport;
use crate::error::SttResult;
use crate::sensitivity::kappa_unchecked;
use crate::stt::SttMatrix;

/// Scientific notation with `decimals` digits after the point and a signed,
/// at-least-two-digit exponent (`9.8499e-06`).
pub fn sci(x: f64, decimals: usize) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    let s = format!("{:.*e}", decimals, x);
    let (mantissa, exp) = s.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    let sign = if exp < 0 { '-' } else { '+' };
    format!("{mantissa}e{sign}{:02}", exp.abs())
}

/// 17 significant digits.
pub fn full(x: f64) -> String {
    sci(x, 16)
}

/// 5 significant digits.
pub fn short(x: f64) -> String {
    sci(x, 4)
}

/// One row of the per-index table (`h, λ_h, κ(λ_h), |λ_h|/κ(λ_h)`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IndexRow {
    pub h: usize,
    pub lambda: f64,
    pub kappa: f64,
    pub ratio: f64,
}

pub fn index_table(m: &SttMatrix) -> Vec<IndexRow> {
    (1..=m.n())
        .map(|h| {
            let lambda = m.eigenvalue_unchecked(h);
            let kappa = kappa_unchecked(m.n(), h);
            IndexRow {
                h,
                lambda,
                kappa,
                ratio: lambda.abs() / kappa,
            }
        })
        .collect()
}

pub fn write_index_table_csv<W: Write>(m: &SttMatrix, out: W) -> SttResult<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["h", "lambda", "kappa", "ratio"])?;
    for r in index_table(m) {
        w.write_record([
            r.h.to_string(),
            full(r.lambda),
            full(r.kappa),
            full(r.ratio),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Stable JSON rendering of a [`NearestSingularReport`].
pub fn report_json(report: &NearestSingularReport) -> serde_json::Value {
    serde_json::to_value(report).expect("report is serializable")
}

/// `(row, col, value)` triples for a dense grid, 1-based indices.
pub fn write_grid_csv<W, F>(rows: usize, cols: usize, value: F, out: W) -> SttResult<()>
where
    W: Write,
    F: Fn(usize, usize) -> Option<f64>,
{
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["row", "col", "value"])?;
    for i in 1..=rows {
        for j in 1..=cols {
            if let Some(v) = value(i, j) {
                w.write_record([i.to_string(), j.to_string(), full(v)])?;
            }
        }
    }
    w.flush()?;
    Ok(())
}
