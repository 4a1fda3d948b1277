use std::fmt::Write;
use std::path::Path;

use super::sweep::{read_runs, summarize, SummaryRow};
use crate::error::Result;

/// Plain-text table of a summary.
pub fn format_summary(rows: &[SummaryRow]) -> String {
    let mut out = String::new();
    let width = rows.iter().map(|r| r.label.len()).max().unwrap_or(5).max(5);
    let _ = writeln!(
        out,
        "{:<width$}  {:<22}  {:>5}  {:>8}  {:>10}  {:>10}",
        "label", "learner", "runs", "success", "mean", "median"
    );
    for r in rows {
        let _ = writeln!(
            out,
            "{:<width$}  {:<22}  {:>5}  {:>8.3}  {:>10.1}  {:>10.1}",
            r.label, r.learner, r.runs, r.success_rate, r.mean_queries, r.median_queries
        );
    }
    out
}

/// Re-aggregates a `runs.csv` written by a sweep.
pub fn report_from_runs(path: &Path) -> Result<(Vec<SummaryRow>, String)> {
    let runs = read_runs(path)?;
    let summary = summarize(&runs);
    let text = format_summary(&summary);
    Ok((summary, text))
}
