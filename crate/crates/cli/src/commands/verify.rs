use crate::config::load;
use crate::output::write_json;
use anyhow::Result;
use multibath::oracle::{default_suite, verify_suite, OracleReport, SuiteConfig};
use serde_json::json;
use std::path::Path;

/// Runs the suite, writes `verify.json` and returns the summary table and overall verdict.
pub fn run(config: Option<&Path>, out: &Path) -> Result<(String, bool)> {
    let suite: SuiteConfig = match config {
        Some(path) => load(path)?,
        None => default_suite(),
    };
    let reports = verify_suite(&suite)?;
    write_json(&out.join("verify.json"), &json!({ "config": suite, "reports": reports }))?;
    let all = reports.iter().all(|r| r.passed);
    Ok((table(&reports), all))
}

fn table(reports: &[OracleReport]) -> String {
    let qw = reports.iter().map(|r| r.quantity.len()).max().unwrap_or(0).max(8);
    let pw = reports.iter().map(|r| r.point.len()).max().unwrap_or(0).max(5);
    let mut s = format!("{:<qw$}  {:<pw$}  {:>10}  {:>10}  result\n", "quantity", "point", "rel_error", "tolerance");
    for r in reports {
        let verdict = if r.passed { "PASS" } else { "FAIL" };
        s += &format!("{:<qw$}  {:<pw$}  {:>10.2e}  {:>10.2e}  {verdict}\n", r.quantity, r.point, r.rel_error, r.tolerance);
    }
    let passed = reports.iter().filter(|r| r.passed).count();
    s += &format!("{passed}/{} passed\n", reports.len());
    s
}
