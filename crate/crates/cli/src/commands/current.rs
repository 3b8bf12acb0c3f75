use crate::config::{load, reservoirs, CurrentConfig};
use crate::output::write_csv;
use anyhow::Result;
use multibath::bath::effective_bath;
use multibath::current::{quantum_current, stationary_current};
use serde_json::json;
use std::path::Path;

/// Columns `t, I_t, flow_1, …` with signed per-reservoir flows.
pub fn run(config: &Path, out: &Path) -> Result<()> {
    let cfg: CurrentConfig = load(config)?;
    let res = reservoirs(&cfg.reservoirs)?;
    let sched = cfg.schedule.build(effective_bath(&res)?.gamma)?;
    let init = cfg.init.state();
    let times = cfg.times.resolve()?;
    let mut columns = vec!["t".to_string(), "I_t".to_string()];
    columns.extend((1..=res.len()).map(|k| format!("flow_{k}")));
    let mut rows = Vec::with_capacity(times.len());
    for &t in &times {
        let r = quantum_current(t, &init, &res, &sched)?;
        let mut row = vec![t, r.current];
        row.extend(r.per_reservoir_flow);
        rows.push(row);
    }
    write_csv(&out.join("current.csv"), &cfg, &columns, &rows)
}

/// Long-time current and occupation as JSON on stdout.
pub fn stationary(config: &Path) -> Result<String> {
    let cfg: CurrentConfig = load(config)?;
    let res = reservoirs(&cfg.reservoirs)?;
    let eff = effective_bath(&res)?;
    let report = json!({
        "config": cfg,
        "stationary_current": stationary_current(&res)?,
        "nbar": eff.nbar,
    });
    Ok(serde_json::to_string_pretty(&report)?)
}
