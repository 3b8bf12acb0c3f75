use crate::config::{load, reservoirs, SweepConfig};
use crate::output::write_csv;
use anyhow::{Context, Result};
use multibath::bath::effective_bath;
use multibath::mode_dynamics::{ladder_coefficients, mean_excitation, mode_energy};
use std::path::Path;

/// Columns `t, n_t, E_t, mu_re, mu_im, nu_1, …` with `|ν_k|` per reservoir.
pub fn run(config: &Path, out: &Path) -> Result<()> {
    let cfg: SweepConfig = load(config)?;
    let res = reservoirs(&cfg.reservoirs)?;
    let eff = effective_bath(&res)?;
    let sched = cfg.schedule.build(eff.gamma)?;
    let init = cfg.init.state();
    let times = cfg.times.resolve()?;
    let mut columns: Vec<String> = ["t", "n_t", "E_t", "mu_re", "mu_im"].iter().map(|s| s.to_string()).collect();
    columns.extend((1..=res.len()).map(|k| format!("nu_{k}")));
    let mut rows = Vec::with_capacity(times.len());
    for &t in &times {
        let coeffs = ladder_coefficients(t, &sched, &res, cfg.omega0).with_context(|| format!("t = {t}"))?;
        let mut row = vec![
            t,
            mean_excitation(t, &init, &eff, &sched)?,
            mode_energy(t, &init, &eff, &sched, cfg.omega0)?,
            coeffs.mu.re,
            coeffs.mu.im,
        ];
        row.extend(coeffs.nu.iter().map(|z| z.norm()));
        rows.push(row);
    }
    write_csv(&out.join("sweep.csv"), &cfg, &columns, &rows)
}
