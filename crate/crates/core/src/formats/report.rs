use std::fmt::Write;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::measures::MeasureReport;

use super::FormatError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
    Text,
}

impl FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            "text" => Ok(ReportFormat::Text),
            other => Err(format!("unknown report format `{other}`")),
        }
    }
}

/// One CSV row per comparison.
#[derive(Debug, Serialize, Deserialize)]
struct Row<'a> {
    name: &'a str,
    quantity: &'a str,
    kind: &'a str,
    numerator: f64,
    denominator: f64,
    value: f64,
    undefined: bool,
    converged: bool,
    iterations: u64,
    states_numerator: usize,
    states_denominator: usize,
    transitions_numerator: usize,
    transitions_denominator: usize,
    runtime_ms: Option<u64>,
}

/// Renders a single report.
pub fn write_report(r: &MeasureReport, format: ReportFormat) -> String {
    write_reports(&[(String::new(), r.clone())], format)
}

/// Renders named reports: a JSON array, a CSV table or text blocks. Text
/// output rounds the value to three decimals; JSON and CSV keep full
/// precision.
pub fn write_reports(reports: &[(String, MeasureReport)], format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => {
            let body = if reports.len() == 1 && reports[0].0.is_empty() {
                serde_json::to_string_pretty(&reports[0].1)
            } else {
                let named: Vec<_> = reports
                    .iter()
                    .map(|(name, r)| serde_json::json!({ "name": name, "report": r }))
                    .collect();
                serde_json::to_string_pretty(&named)
            };
            body.expect("reports always serialise") + "\n"
        }
        ReportFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for (name, r) in reports {
                w.serialize(Row {
                    name,
                    quantity: r.quantity.name(),
                    kind: r.kind.short_name(),
                    numerator: r.numerator,
                    denominator: r.denominator,
                    value: r.value,
                    undefined: r.undefined,
                    converged: r.converged,
                    iterations: r.iterations,
                    states_numerator: r.states_numerator,
                    states_denominator: r.states_denominator,
                    transitions_numerator: r.transitions_numerator,
                    transitions_denominator: r.transitions_denominator,
                    runtime_ms: r.runtime_ms,
                })
                .expect("in-memory CSV write");
            }
            String::from_utf8(w.into_inner().expect("in-memory CSV flush")).expect("CSV is UTF-8")
        }
        ReportFormat::Text => {
            let mut out = String::new();
            for (name, r) in reports {
                if !name.is_empty() {
                    writeln!(out, "[{name}]").unwrap();
                }
                writeln!(out, "{} ({}): {:.3}", r.quantity.name(), r.kind.short_name(), r.value).unwrap();
                writeln!(
                    out,
                    "  numerator:   {:.6} ({} states, {} transitions)",
                    r.numerator, r.states_numerator, r.transitions_numerator
                )
                .unwrap();
                writeln!(
                    out,
                    "  denominator: {:.6} ({} states, {} transitions)",
                    r.denominator, r.states_denominator, r.transitions_denominator
                )
                .unwrap();
                writeln!(out, "  converged: {}, iterations: {}", r.converged, r.iterations).unwrap();
                if r.undefined {
                    writeln!(out, "  undefined: true").unwrap();
                }
                if let Some(ms) = r.runtime_ms {
                    writeln!(out, "  runtime_ms: {ms}").unwrap();
                }
                for w in &r.warnings {
                    writeln!(out, "  warning: {w}").unwrap();
                }
            }
            out
        }
    }
}

pub fn read_report_json(text: &str) -> Result<MeasureReport, FormatError> {
    serde_json::from_str(text).map_err(FormatError::from)
}
