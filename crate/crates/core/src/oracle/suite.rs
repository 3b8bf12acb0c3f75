use super::{bosonic_oracle, bosonic_oracle_driven, quasi_distribution_from_oracle, tls_oracle, OracleState, TruncationConfig};
use crate::bath::{effective_bath, ReservoirSpec};
use crate::error::{invalid, Error, Result};
use crate::mode_dynamics::{charge_discharge_energies, driven_mean_amplitude, mean_excitation, sample_drive, ModeInitialState};
use crate::phase_space::{husimi_q, pn_coherent, pn_fock_zero_temp, wigner_fock, DistributionKind};
use crate::schedules::CouplingSchedule;
use crate::tls::{reduce_system, TlsBathSpec, TlsDensity, TlsModel};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

const QUANTITIES: &[&str] = &[
    "mean_excitation",
    "antinormal_moment",
    "husimi_q",
    "wigner_fock",
    "fock_population",
    "coherent_population",
    "off_diagonal",
    "bath_energy",
    "driven_amplitude",
    "tls_excited_population",
    "tls_coherence",
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum SuiteInit {
    Coherent { re: f64, im: f64 },
    Fock { n: usize },
    MeanNumber { n0: f64 },
}

impl SuiteInit {
    pub fn state(&self) -> ModeInitialState<f64> {
        match *self {
            Self::Coherent { re, im } => ModeInitialState::Coherent(Complex64::new(re, im)),
            Self::Fock { n } => ModeInitialState::Fock(n),
            Self::MeanNumber { n0 } => ModeInitialState::MeanNumber(n0),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteReservoir {
    pub gamma: f64,
    pub nbar: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteTls {
    pub gamma1: f64,
    pub gamma2: f64,
    pub p1: f64,
    pub p2: f64,
    /// Initial excited population.
    pub a: f64,
    #[serde(default)]
    pub c_re: f64,
    #[serde(default)]
    pub c_im: f64,
}

/// `f(t) = amplitude · sin(frequency · t)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteDrive {
    pub amplitude: f64,
    pub frequency: f64,
}

fn default_omega0() -> f64 {
    1.0
}

/// One quantity checked at every listed time. All cases use the exponential schedule.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteCase {
    pub quantity: String,
    pub tolerance: f64,
    pub times: Vec<f64>,
    #[serde(default)]
    pub init: Option<SuiteInit>,
    #[serde(default)]
    pub reservoirs: Vec<SuiteReservoir>,
    #[serde(default = "default_omega0")]
    pub omega0: f64,
    #[serde(default)]
    pub truncation: TruncationConfig,
    /// Phase-space points as `[re, im]`.
    #[serde(default)]
    pub alpha_points: Vec<[f64; 2]>,
    #[serde(default)]
    pub tls: Option<SuiteTls>,
    #[serde(default)]
    pub drive: Option<SuiteDrive>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteConfig {
    #[serde(default)]
    pub cases: Vec<SuiteCase>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub quantity: String,
    /// Evaluation point, e.g. `t=0.5 n=3`.
    pub point: String,
    pub closed_form: f64,
    pub oracle: f64,
    pub abs_error: f64,
    /// `abs_error / max(|closed_form|, 1)`.
    pub rel_error: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub discarded_weight: f64,
    pub fock_cutoff: Option<usize>,
}

impl OracleReport {
    fn new(quantity: &str, point: String, closed_form: f64, oracle: f64, tolerance: f64, meta: (f64, Option<usize>)) -> Self {
        let abs_error = (closed_form - oracle).abs();
        let rel_error = abs_error / closed_form.abs().max(1.0);
        Self {
            quantity: quantity.to_string(),
            point,
            closed_form,
            oracle,
            abs_error,
            rel_error,
            tolerance,
            passed: rel_error <= tolerance,
            discarded_weight: meta.0,
            fock_cutoff: meta.1,
        }
    }
}

fn reservoirs(case: &SuiteCase) -> Result<Vec<ReservoirSpec<f64>>> {
    if case.reservoirs.is_empty() {
        return Err(invalid("suite case", format!("`{}` needs at least one reservoir", case.quantity)));
    }
    Ok(case.reservoirs.iter().map(|r| ReservoirSpec::with_nbar(r.gamma, r.nbar)).collect())
}

fn require_init(case: &SuiteCase) -> Result<ModeInitialState<f64>> {
    case.init
        .as_ref()
        .map(SuiteInit::state)
        .ok_or_else(|| invalid("suite case", format!("`{}` needs an initial state", case.quantity)))
}

fn coherent_alpha(case: &SuiteCase) -> Result<Complex64> {
    match require_init(case)? {
        ModeInitialState::Coherent(a) => Ok(a),
        _ => Err(invalid("suite case", format!("`{}` needs a coherent initial state", case.quantity))),
    }
}

fn fock_n(case: &SuiteCase) -> Result<usize> {
    match require_init(case)? {
        ModeInitialState::Fock(n) => Ok(n),
        _ => Err(invalid("suite case", format!("`{}` needs a Fock initial state", case.quantity))),
    }
}

fn meta(o: &OracleState) -> (f64, Option<usize>) {
    (o.discarded_weight, Some(o.fock_cutoff))
}

/// Keeps the report with the largest error among several points.
fn worst(reports: Vec<OracleReport>) -> Option<OracleReport> {
    reports.into_iter().fold(None, |acc: Option<OracleReport>, r| match acc {
        Some(a) if a.rel_error >= r.rel_error => Some(a),
        _ => Some(r),
    })
}

fn run_case(case: &SuiteCase) -> Result<Vec<OracleReport>> {
    let q = case.quantity.as_str();
    let tol = case.tolerance;
    let mut out = Vec::new();
    if q.starts_with("tls_") {
        let p = case.tls.ok_or_else(|| invalid("suite case", format!("`{q}` needs a `tls` block")))?;
        let model = TlsModel::new(
            TlsBathSpec::new(p.p1, p.gamma1)?,
            TlsBathSpec::new(p.p2, p.gamma2)?,
            case.omega0,
            CouplingSchedule::exponential(p.gamma1 + p.gamma2)?,
        )?;
        let system = TlsDensity::new(p.a, Complex64::new(p.c_re, p.c_im))?;
        for &t in &case.times {
            let closed = model.explicit_components(&system, t)?;
            let oracle = reduce_system(&tls_oracle(&model, &system, t, case.truncation.step_count)?.exact);
            let m = (0.0, None);
            if q == "tls_excited_population" {
                out.push(OracleReport::new(q, format!("t={t}"), closed.a, oracle.a, tol, m));
            } else {
                out.push(OracleReport::new(q, format!("t={t} re"), closed.c.re, oracle.c.re, tol, m));
                out.push(OracleReport::new(q, format!("t={t} im"), closed.c.im, oracle.c.im, tol, m));
            }
        }
        return Ok(out);
    }

    let res = reservoirs(case)?;
    let eff = effective_bath(&res)?;
    let sched = CouplingSchedule::exponential(eff.gamma)?;
    let init = require_init(case)?;
    let alphas: Vec<Complex64> = case.alpha_points.iter().map(|p| Complex64::new(p[0], p[1])).collect();
    for &t in &case.times {
        if q == "driven_amplitude" {
            let drive = case.drive.ok_or_else(|| invalid("suite case", "`driven_amplitude` needs a `drive` block"))?;
            let f = move |s: f64| drive.amplitude * (drive.frequency * s).sin();
            let a0 = coherent_alpha(case)?;
            let samples = sample_drive(f, t, eff.gamma, case.omega0, None);
            let closed = driven_mean_amplitude(t, &sched, case.omega0, a0, &samples)?;
            let o = bosonic_oracle_driven(&init, &res, &sched, case.omega0, t, &f, &case.truncation)?;
            let got = o.mean_amplitude();
            out.push(OracleReport::new(q, format!("t={t} re"), closed.re, got.re, tol, meta(&o)));
            out.push(OracleReport::new(q, format!("t={t} im"), closed.im, got.im, tol, meta(&o)));
            continue;
        }
        let o = bosonic_oracle(&init, &res, &sched, case.omega0, t, &case.truncation)?;
        let report = match q {
            "mean_excitation" => {
                OracleReport::new(q, format!("t={t}"), mean_excitation(t, &init, &eff, &sched)?, o.mean_number(), tol, meta(&o))
            }
            "antinormal_moment" => OracleReport::new(
                q,
                format!("t={t}"),
                1.0 + mean_excitation(t, &init, &eff, &sched)?,
                1.0 + o.mean_number(),
                tol,
                meta(&o),
            ),
            "off_diagonal" => {
                fock_n(case)?;
                OracleReport::new(q, format!("t={t}"), 0.0, o.max_off_diagonal(), tol, meta(&o))
            }
            "bath_energy" => {
                let n = fock_n(case)?;
                let (ea, eb) = charge_discharge_energies(t, n, eff.gamma)?;
                let baths: f64 = o.bath_mean_numbers.iter().sum();
                let mode = OracleReport::new(q, format!("t={t} mode"), ea, o.mean_number(), tol, meta(&o));
                let bath = OracleReport::new(q, format!("t={t} reservoirs"), eb, baths, tol, meta(&o));
                out.push(mode);
                bath
            }
            "fock_population" => {
                let n_big = fock_n(case)?;
                let reports = (0..o.dim())
                    .map(|n| {
                        Ok(OracleReport::new(q, format!("t={t} n={n}"), pn_fock_zero_temp(n, t, n_big, &sched)?, o.population(n), tol, meta(&o)))
                    })
                    .collect::<Result<Vec<_>>>()?;
                worst(reports).expect("non-empty")
            }
            "coherent_population" => {
                let a0 = coherent_alpha(case)?;
                let reports = (0..o.dim())
                    .map(|n| {
                        Ok(OracleReport::new(q, format!("t={t} n={n}"), pn_coherent(n, t, a0, &eff, &sched)?, o.population(n), tol, meta(&o)))
                    })
                    .collect::<Result<Vec<_>>>()?;
                worst(reports).expect("non-empty")
            }
            "husimi_q" | "wigner_fock" => {
                if alphas.is_empty() {
                    return Err(invalid("suite case", format!("`{q}` needs alpha_points")));
                }
                let reports = alphas
                    .iter()
                    .map(|&a| {
                        let (closed, kind) = if q == "husimi_q" {
                            (husimi_q(a, t, coherent_alpha(case)?, &eff, &sched, case.omega0)?, DistributionKind::Husimi)
                        } else {
                            (wigner_fock(a, t, fock_n(case)?, &eff, &sched)?, DistributionKind::Wigner)
                        };
                        let got = quasi_distribution_from_oracle(&o.rho, a, kind)?.value;
                        Ok(OracleReport::new(q, format!("t={t} alpha=({},{})", a.re, a.im), closed, got, tol, meta(&o)))
                    })
                    .collect::<Result<Vec<_>>>()?;
                worst(reports).expect("non-empty")
            }
            _ => return Err(Error::UnknownQuantity(q.to_string())),
        };
        out.push(report);
    }
    Ok(out)
}

/// Runs every case in order. Unknown quantity names are rejected before any work.
pub fn verify_suite(config: &SuiteConfig) -> Result<Vec<OracleReport>> {
    for case in &config.cases {
        if !QUANTITIES.contains(&case.quantity.as_str()) {
            return Err(Error::UnknownQuantity(case.quantity.clone()));
        }
        if !(case.tolerance >= 0.0) {
            return Err(invalid("suite case", format!("tolerance {} must be non-negative", case.tolerance)));
        }
    }
    let mut reports = Vec::new();
    for case in &config.cases {
        reports.extend(run_case(case)?);
    }
    Ok(reports)
}

/// Representative points for every quantity, sized to run in seconds.
pub fn default_suite() -> SuiteConfig {
    let base = |quantity: &str, tolerance: f64, init: SuiteInit, res: Vec<SuiteReservoir>, times: Vec<f64>| SuiteCase {
        quantity: quantity.to_string(),
        tolerance,
        times,
        init: Some(init),
        reservoirs: res,
        omega0: 1.0,
        truncation: TruncationConfig { fock_cutoff: 20, ..TruncationConfig::default() },
        alpha_points: Vec::new(),
        tls: None,
        drive: None,
    };
    let cold = vec![SuiteReservoir { gamma: 1.0, nbar: 0.0 }];
    let warm = vec![SuiteReservoir { gamma: 1.0, nbar: 0.5 }];
    let two = vec![SuiteReservoir { gamma: 0.6, nbar: 0.1 }, SuiteReservoir { gamma: 0.4, nbar: 0.3 }];
    let coherent = SuiteInit::Coherent { re: 1.5, im: 0.0 };
    let grid: Vec<[f64; 2]> = (-2..=2).flat_map(|i| (-2..=2).map(move |j| [i as f64 * 0.75, j as f64 * 0.75])).collect();
    let mut husimi = base("husimi_q", 1e-6, coherent.clone(), warm.clone(), vec![0.2, 1.0]);
    husimi.alpha_points = grid.clone();
    let mut wigner = base("wigner_fock", 1e-6, SuiteInit::Fock { n: 1 }, warm.clone(), vec![0.0, 1.0]);
    wigner.alpha_points = grid;
    let tls = |quantity: &str| SuiteCase {
        quantity: quantity.to_string(),
        tolerance: 1e-10,
        times: vec![0.0, 0.5, 2.0],
        init: None,
        reservoirs: Vec::new(),
        omega0: 1.0,
        truncation: TruncationConfig { step_count: 10_000, ..TruncationConfig::default() },
        alpha_points: Vec::new(),
        tls: Some(SuiteTls { gamma1: 0.7, gamma2: 1.3, p1: 0.2, p2: 0.6, a: 0.4, c_re: 0.3, c_im: -0.2 }),
        drive: None,
    };
    let mut driven = base("driven_amplitude", 1e-6, SuiteInit::Coherent { re: 0.5, im: 0.0 }, cold.clone(), vec![1.5]);
    driven.truncation.fock_cutoff = 12;
    driven.drive = Some(SuiteDrive { amplitude: 0.3, frequency: 1.0 });
    SuiteConfig {
        cases: vec![
            base("mean_excitation", 1e-8, SuiteInit::Fock { n: 3 }, two.clone(), vec![0.0, 0.5, 2.0]),
            base("antinormal_moment", 1e-6, coherent.clone(), warm.clone(), vec![0.2, 1.0, 3.0]),
            husimi,
            wigner,
            base("fock_population", 1e-10, SuiteInit::Fock { n: 5 }, cold.clone(), vec![0.3, 1.0]),
            base("coherent_population", 1e-9, coherent, warm, vec![0.5, 2.0]),
            base("off_diagonal", 1e-10, SuiteInit::Fock { n: 2 }, two, vec![0.7]),
            base("bath_energy", 1e-8, SuiteInit::Fock { n: 10 }, cold, vec![std::f64::consts::LN_2, 3.0]),
            driven,
            tls("tls_excited_population"),
            tls("tls_coherence"),
        ],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_and_unknown() {
        assert!(verify_suite(&SuiteConfig::default()).unwrap().is_empty());
        let mut cfg = default_suite();
        cfg.cases.truncate(1);
        cfg.cases[0].quantity = "entropy".into();
        assert_eq!(verify_suite(&cfg), Err(Error::UnknownQuantity("entropy".into())));
    }

    #[test]
    fn tight_tolerance_reports_failures() {
        let mut cfg = default_suite();
        cfg.cases.retain(|c| c.quantity == "antinormal_moment");
        cfg.cases[0].tolerance = 1e-16;
        let r = verify_suite(&cfg).unwrap();
        assert!(!r.is_empty());
        assert!(r.iter().any(|x| !x.passed));
    }

    #[test]
    fn config_round_trips_through_json() {
        let cfg = default_suite();
        let s = serde_json::to_string(&cfg).unwrap();
        let back: SuiteConfig = serde_json::from_str(&s).unwrap();
        assert_eq!(back, cfg);
        assert!(serde_json::from_str::<SuiteConfig>(r#"{"cases": [], "extra": 1}"#).is_err());
    }
}
