use crate::config::{load, BatteryConfig};
use crate::output::write_csv;
use anyhow::Result;
use multibath::mode_dynamics::{charge_discharge_energies, ModeInitialState};
use multibath::oracle::{bosonic_oracle, TruncationConfig};
use multibath::{Reservoir, Schedule};
use std::path::Path;

/// Columns `t, tau, E_a, E_b`, plus oracle values when requested.
pub fn run(config: &Path, out: &Path) -> Result<()> {
    let cfg: BatteryConfig = load(config)?;
    let times = cfg.times.resolve()?;
    let sched = Schedule::exponential(cfg.gamma)?;
    let cold = [Reservoir::with_nbar(cfg.gamma, 0.0)];
    let mut columns: Vec<String> = ["t", "tau", "E_a", "E_b"].map(String::from).to_vec();
    if cfg.oracle.is_some() {
        columns.extend(["E_a_oracle", "E_b_oracle"].map(String::from));
    }
    let mut rows = Vec::with_capacity(times.len());
    for &t in &times {
        let (ea, eb) = charge_discharge_energies(t, cfg.n, cfg.gamma)?;
        let mut row = vec![t, cfg.gamma * t, ea, eb];
        if let Some(o) = cfg.oracle {
            let state = bosonic_oracle(
                &ModeInitialState::Fock(cfg.n),
                &cold,
                &sched,
                1.0,
                t,
                &TruncationConfig::with_cutoff(o.fock_cutoff),
            )?;
            row.push(state.mean_number());
            row.push(state.bath_mean_numbers[0]);
        }
        rows.push(row);
    }
    write_csv(&out.join("battery.csv"), &cfg, &columns, &rows)
}
