//! Deterministic rendering of experiment results.
//!
//! One `Report` feeds both output formats. CSV carries metadata as `#`
//! comment lines followed by a header row; every data row includes the
//! tolerance or tail-bound column of the producing check. JSON mirrors the
//! table and additionally embeds the full structured report of the
//! underlying module, with every float rendered as a 17-significant-digit
//! string so values survive any reader without rounding.

use std::fs;
use std::path::Path;

use crate::config::OutputFormat;

pub struct Report {
    /// Ordered key/value metadata (CSV preserves this order).
    pub meta: Vec<(String, String)>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    pub verdict: bool,
    /// Full module report for the JSON format.
    pub structured: Option<serde_json::Value>,
}

/// Round-trip-safe float formatting: 17 significant digits, '.' decimal.
pub fn sig(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn flag(b: bool) -> String {
    b.to_string()
}

pub fn meta(key: &str, value: impl Into<String>) -> (String, String) {
    (key.to_string(), value.into())
}

pub fn render(report: &Report, format: OutputFormat) -> String {
    match format {
        OutputFormat::Csv => render_csv(report),
        OutputFormat::Json => render_json(report),
    }
}

fn render_csv(report: &Report) -> String {
    let mut out = String::new();
    for (k, v) in &report.meta {
        out.push_str(&format!("# {k} = {v}\n"));
    }
    out.push_str(&format!(
        "# verdict = {}\n",
        if report.verdict { "pass" } else { "fail" }
    ));
    out.push_str(&report.columns.join(","));
    out.push('\n');
    for row in &report.rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

fn render_json(report: &Report) -> String {
    let mut root = serde_json::Map::new();
    let mut meta = serde_json::Map::new();
    for (k, v) in &report.meta {
        meta.insert(k.clone(), serde_json::Value::String(v.clone()));
    }
    root.insert("meta".to_string(), serde_json::Value::Object(meta));
    root.insert(
        "columns".to_string(),
        serde_json::Value::Array(
            report
                .columns
                .iter()
                .map(|c| serde_json::Value::String((*c).to_string()))
                .collect(),
        ),
    );
    root.insert(
        "rows".to_string(),
        serde_json::Value::Array(
            report
                .rows
                .iter()
                .map(|row| {
                    serde_json::Value::Array(
                        row.iter()
                            .map(|c| serde_json::Value::String(c.clone()))
                            .collect(),
                    )
                })
                .collect(),
        ),
    );
    root.insert(
        "report".to_string(),
        report
            .structured
            .clone()
            .map(stringify_floats)
            .unwrap_or(serde_json::Value::Null),
    );
    root.insert(
        "verdict".to_string(),
        serde_json::Value::String(if report.verdict { "pass" } else { "fail" }.to_string()),
    );
    let mut text = serde_json::to_string_pretty(&serde_json::Value::Object(root))
        .expect("report serialization cannot fail");
    text.push('\n');
    text
}

/// Replaces every non-integer number by its 17-significant-digit string so
/// the JSON output is exact and byte-stable.
fn stringify_floats(value: serde_json::Value) -> serde_json::Value {
    match value {
        serde_json::Value::Number(n) => {
            if n.is_i64() || n.is_u64() {
                serde_json::Value::Number(n)
            } else {
                serde_json::Value::String(sig(n.as_f64().unwrap_or(f64::NAN)))
            }
        }
        serde_json::Value::Array(items) => {
            serde_json::Value::Array(items.into_iter().map(stringify_floats).collect())
        }
        serde_json::Value::Object(fields) => serde_json::Value::Object(
            fields
                .into_iter()
                .map(|(k, v)| (k, stringify_floats(v)))
                .collect(),
        ),
        other => other,
    }
}

pub fn write_out(target: Option<&Path>, content: &str) -> Result<(), String> {
    match target {
        Some(path) => {
            fs::write(path, content).map_err(|e| format!("cannot write {}: {e}", path.display()))
        }
        None => {
            print!("{content}");
            Ok(())
        }
    }
}
