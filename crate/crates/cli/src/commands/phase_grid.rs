use crate::config::{load, reservoirs, GridConfig, PhaseGridConfig};
use crate::output::{write_csv, write_json};
use anyhow::{bail, Result};
use multibath::bath::effective_bath;
use multibath::phase_space::{DistributionKind, GaussianSummary, PhaseGrid};
use multibath::Complex64;
use serde_json::json;
use std::path::Path;

pub fn run(config: &Path, out: &Path) -> Result<()> {
    let mut cfg: PhaseGridConfig = load(config)?;
    let res = reservoirs(&cfg.reservoirs)?;
    let eff = effective_bath(&res)?;
    let sched = cfg.schedule.build(eff.gamma)?;
    if !(cfg.t.is_finite() && cfg.t >= 0.0) {
        bail!("t: {} is not a finite non-negative time", cfg.t);
    }
    let kind = DistributionKind::from(cfg.kind);
    let alpha0 = Complex64::new(cfg.alpha0[0], cfg.alpha0[1]);
    let summary = GaussianSummary::coherent(kind, cfg.t, alpha0, &eff, &sched, cfg.omega0)?;
    if !(summary.width > 0.0) {
        bail!("kind: the {} function is a delta function at t = {}", kind.name(), cfg.t);
    }
    let grid = match cfg.grid {
        Some(g) => PhaseGrid::new((g.re[0], g.re[1]), (g.im[0], g.im[1]), g.n_re, g.n_im)?,
        None => summary.default_grid(),
    };
    cfg.grid = Some(GridConfig { re: [grid.re_min, grid.re_max], im: [grid.im_min, grid.im_max], n_re: grid.n_re, n_im: grid.n_im });

    let rows: Vec<Vec<f64>> = grid.points().map(|a| vec![a.re, a.im, summary.density(a)]).collect();
    let columns = ["re", "im", "value"].map(String::from);
    write_csv(&out.join("phase_grid.csv"), &cfg, &columns, &rows)?;
    let sidecar = json!({
        "config": cfg,
        "summary": {
            "center": [summary.center.re, summary.center.im],
            "width": summary.width,
            "kind": kind.name(),
            "t": cfg.t,
        },
    });
    write_json(&out.join("phase_grid.json"), &sidecar)
}
