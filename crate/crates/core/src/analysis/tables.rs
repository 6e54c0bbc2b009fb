//! Comma-separated output tables with `#` headers.

use std::fmt::Write as _;

use super::decode::DecodeReport;
use super::fit::FringeFit;
use super::histogram::Histogram;
use super::mi::MIEstimate;
use crate::quantum::SlitScreenGeometry;

/// A table: title line, `key=value` metadata, column line, rows.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub title: String,
    pub meta: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(title: impl Into<String>, columns: &[&str]) -> Self {
        Self {
            title: title.into(),
            meta: Vec::new(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn meta(mut self, key: impl Into<String>, value: impl ToString) -> Self {
        self.meta.push((key.into(), value.to_string()));
        self
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# {}", self.title);
        for (k, v) in &self.meta {
            let _ = writeln!(out, "# {k}={v}");
        }
        let _ = writeln!(out, "# {}", self.columns.join(","));
        for row in &self.rows {
            let _ = writeln!(out, "{}", row.join(","));
        }
        out
    }

    /// Data rows only, as rendered.
    pub fn body(&self) -> String {
        self.render().lines().filter(|l| !l.starts_with('#')).map(|l| format!("{l}\n")).collect()
    }
}

pub fn histogram_table(hist: &Histogram, geometry: &SlitScreenGeometry) -> Table {
    let mut t = Table::new("histogram", &["bin_center_m", "count"])
        .meta("selector", hist.selector)
        .meta("total", hist.total);
    for (i, c) in hist.counts.iter().enumerate() {
        t.push(vec![geometry.bin_center(i).to_string(), c.to_string()]);
    }
    t
}

pub fn fit_table(fit: &FringeFit) -> Table {
    let mut t = Table::new(
        "fringe fit",
        &["mean_level", "amplitude", "phase", "visibility", "standard_error", "visibility_stderr", "undersampled"],
    );
    t.push(vec![
        fit.mean_level.to_string(),
        fit.amplitude.to_string(),
        fit.phase.to_string(),
        fit.visibility.to_string(),
        fit.standard_error.to_string(),
        fit.visibility_stderr.to_string(),
        fit.undersampled.to_string(),
    ]);
    t
}

pub fn decode_table(report: &DecodeReport) -> Table {
    let mut t = Table::new("decode report", &["block", "visibility", "stderr", "decoded", "true"])
        .meta("selector", report.selector)
        .meta("bit_error_rate", report.bit_error_rate)
        .meta("confidence", report.confidence)
        .meta("low_confidence", report.low_confidence);
    for i in 0..report.decoded_bits.len() {
        t.push(vec![
            i.to_string(),
            report.per_block_visibility[i].to_string(),
            report.per_block_stderr[i].to_string(),
            report.decoded_bits[i].to_string(),
            report.true_bits[i].to_string(),
        ]);
    }
    t
}

pub fn mi_table(label: &str, est: &MIEstimate) -> Table {
    let mut t = Table::new("mutual information", &["observables", "mi_bits", "bias_bound", "n_samples", "n_labels", "n_cells"]);
    t.push(vec![
        label.to_string(),
        est.mi_bits.to_string(),
        est.bias_bound.to_string(),
        est.n_samples.to_string(),
        est.n_labels.to_string(),
        est.n_cells.to_string(),
    ]);
    t
}
