use crate::config::{load, TlsConfig, TlsStateConfig};
use crate::output::write_csv;
use anyhow::{Context, Result};
use multibath::tls::{trace_distance, TlsBathSpec, TlsDensity, TlsModel};
use multibath::Complex64;
use std::path::Path;

fn state(s: &TlsStateConfig, field: &str) -> Result<TlsDensity<f64>> {
    TlsDensity::new(s.a, Complex64::new(s.c_re, s.c_im)).with_context(|| field.to_string())
}

/// Columns `t, rho_pp, rho_pm_re, rho_pm_im, rho_pm_abs`, plus `trace_distance, sigma`
/// when a second state is given.
pub fn run(config: &Path, out: &Path) -> Result<()> {
    let cfg: TlsConfig = load(config)?;
    let bath1 = TlsBathSpec::new(cfg.bath1.p, cfg.bath1.gamma).context("bath1")?;
    let bath2 = TlsBathSpec::new(cfg.bath2.p, cfg.bath2.gamma).context("bath2")?;
    let sched = cfg.schedule.build(cfg.bath1.gamma + cfg.bath2.gamma)?;
    let model = TlsModel::new(bath1, bath2, cfg.omega0, sched)?;
    let first = state(&cfg.initial, "initial")?;
    let second = cfg.compare.as_ref().map(|s| state(s, "compare")).transpose()?;
    let times = cfg.times.resolve()?;

    let mut columns: Vec<String> = ["t", "rho_pp", "rho_pm_re", "rho_pm_im", "rho_pm_abs"].map(String::from).to_vec();
    if second.is_some() {
        columns.extend(["trace_distance", "sigma"].map(String::from));
    }
    let mut rows = Vec::with_capacity(times.len());
    for &t in &times {
        let r = model.explicit_components(&first, t)?;
        let upper = r.upper_coherence();
        let mut row = vec![t, r.a, upper.re, upper.im, upper.norm()];
        if let Some(other) = &second {
            let r2 = model.explicit_components(other, t)?;
            row.push(trace_distance(&r, &r2));
            row.push(model.markov_rate(t, &first, other).context("sigma")?);
        }
        rows.push(row);
    }
    write_csv(&out.join("tls.csv"), &cfg, &columns, &rows)
}
