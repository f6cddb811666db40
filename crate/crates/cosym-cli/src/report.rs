//! Report emission: human-readable text or a stable structured schema with
//! top-level fields `tool`, `version`, `command`, `verdict`, `data`,
//! `diagnostics`.

use cosym_core::rational::{display, Rational};
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Structured,
}

pub struct Report {
    pub command: String,
    pub verdict: String,
    pub data: Value,
    pub diagnostics: Vec<String>,
    pub text: String,
}

pub fn emit(report: &Report, format: Format) -> String {
    match format {
        Format::Text => {
            let mut out = report.text.clone();
            if !out.ends_with('\n') && !out.is_empty() {
                out.push('\n');
            }
            for d in &report.diagnostics {
                out.push_str(&format!("note: {d}\n"));
            }
            out
        }
        Format::Structured => {
            let value = json!({
                "tool": "cosym",
                "version": env!("CARGO_PKG_VERSION"),
                "command": report.command,
                "verdict": report.verdict,
                "data": report.data,
                "diagnostics": report.diagnostics,
            });
            format!("{}\n", serde_json::to_string_pretty(&value).unwrap())
        }
    }
}

pub fn rational_json(q: &Rational) -> Value {
    Value::String(display(q))
}

pub fn vector_json(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(rational_json).collect())
}

pub fn matrix_json(m: &cosym_core::linalg::Matrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|r| Value::Array((0..m.cols()).map(|c| rational_json(m.at(r, c))).collect()))
            .collect(),
    )
}
