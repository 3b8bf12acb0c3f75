use anyhow::{Context, Result};
use serde::Serialize;
use std::fmt::Write as _;
use std::path::Path;

/// Seventeen significant digits, enough to round-trip any `f64`.
pub fn number(x: f64) -> String {
    // adding zero turns -0.0 into 0.0
    format!("{:.16e}", x + 0.0)
}

pub fn config_json<C: Serialize>(config: &C) -> Result<String> {
    serde_json::to_string(config).context("serializing config")
}

/// CSV with a `# <config>` first line and a column header.
pub fn write_csv<C: Serialize>(path: &Path, config: &C, columns: &[String], rows: &[Vec<f64>]) -> Result<()> {
    let mut out = String::new();
    writeln!(out, "# {}", config_json(config)?)?;
    writeln!(out, "{}", columns.join(","))?;
    for row in rows {
        let cells: Vec<String> = row.iter().map(|&x| number(x)).collect();
        writeln!(out, "{}", cells.join(","))?;
    }
    std::fs::write(path, out).with_context(|| format!("writing {}", path.display()))
}

pub fn write_json<V: Serialize>(path: &Path, value: &V) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}
