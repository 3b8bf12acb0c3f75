//! Brute-force reference solvers.
//!
//! The bosonic oracle builds the lab-frame Hamiltonian on an explicit Fock
//! space of the mode and up to two reservoir modes; the two-level oracle
//! builds the 8×8 Hamiltonian from Pauli matrices. Neither uses the
//! closed-form propagators, so agreement is an independent check.

mod bosonic;
mod driven;
pub mod fock;
mod quasi;
mod suite;
mod tls;

pub use bosonic::{bosonic_oracle, sector_propagator};
pub use driven::bosonic_oracle_driven;
pub use quasi::{quasi_distribution_from_oracle, QuasiValue};
pub use suite::{default_suite, verify_suite, OracleReport, SuiteCase, SuiteConfig, SuiteDrive, SuiteInit, SuiteReservoir, SuiteTls};
pub use tls::{tls_hamiltonian_integral, tls_oracle, TlsOracleOutput};

use crate::error::{invalid, Result};
use crate::mode_dynamics::ModeInitialState;
use crate::bath::ReservoirSpec;
use fock::{check_discarded, coherent_amplitudes, coherent_tail, required_cutoff, thermal_weights, truncation_error};
use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Explicit reservoir modes the bosonic oracles accept.
pub const MAX_EXPLICIT_BATHS: usize = 2;

/// Components lighter than this are dropped and counted as discarded weight.
const PRUNE_WEIGHT: f64 = 1e-18;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TruncationConfig {
    /// Highest Fock number kept per mode in the initial state.
    pub fock_cutoff: usize,
    /// Largest initial-state weight that may be discarded.
    pub thermal_tail_tolerance: f64,
    /// Upper bound on time steps for the stepped propagators.
    pub step_count: usize,
}

impl Default for TruncationConfig {
    fn default() -> Self {
        Self { fock_cutoff: 30, thermal_tail_tolerance: 1e-10, step_count: 1 << 16 }
    }
}

impl TruncationConfig {
    pub fn with_cutoff(fock_cutoff: usize) -> Self {
        Self { fock_cutoff, ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.fock_cutoff < 2 {
            return Err(invalid("truncation", "fock_cutoff must be at least 2"));
        }
        if !(self.thermal_tail_tolerance > 0.0) || !self.thermal_tail_tolerance.is_finite() {
            return Err(invalid("truncation", "thermal_tail_tolerance must be positive"));
        }
        if self.step_count == 0 {
            return Err(invalid("truncation", "step_count must be positive"));
        }
        Ok(())
    }
}

/// Reduced state of the mode in the Fock basis, with reservoir populations.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleState {
    pub rho: DMatrix<Complex64>,
    pub bath_mean_numbers: Vec<f64>,
    /// Initial-state weight removed by truncation and pruning.
    pub discarded_weight: f64,
    pub fock_cutoff: usize,
}

impl OracleState {
    pub fn dim(&self) -> usize {
        self.rho.nrows()
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim()).map(|n| self.rho[(n, n)].re).sum()
    }

    pub fn population(&self, n: usize) -> f64 {
        if n < self.dim() {
            self.rho[(n, n)].re
        } else {
            0.0
        }
    }

    /// `tr[ρ a†a]`.
    pub fn mean_number(&self) -> f64 {
        (0..self.dim()).map(|n| n as f64 * self.rho[(n, n)].re).sum()
    }

    /// `tr[ρ a]`.
    pub fn mean_amplitude(&self) -> Complex64 {
        (1..self.dim()).map(|m| self.rho[(m, m - 1)] * (m as f64).sqrt()).sum()
    }

    pub fn max_off_diagonal(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                if i != j {
                    worst = worst.max(self.rho[(i, j)].norm());
                }
            }
        }
        worst
    }

    pub fn hermiticity_defect(&self) -> f64 {
        (&self.rho - self.rho.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        let h = (&self.rho + self.rho.adjoint()) * Complex64::new(0.5, 0.0);
        h.symmetric_eigenvalues().iter().cloned().fold(f64::INFINITY, f64::min)
    }
}

/// One pure term `weight · |ψ_S⟩⟨ψ_S| ⊗ |n₁ n₂⟩⟨n₁ n₂|` of the initial state.
#[derive(Debug, Clone)]
pub(crate) struct Component {
    pub weight: f64,
    pub system: Vec<(usize, Complex64)>,
    pub baths: [usize; MAX_EXPLICIT_BATHS],
}

#[derive(Debug)]
pub(crate) struct Decomposition {
    pub components: Vec<Component>,
    pub discarded: f64,
}

fn system_tail(init: &ModeInitialState<f64>, cutoff: usize) -> f64 {
    match *init {
        ModeInitialState::Coherent(a) => coherent_tail(a, cutoff),
        ModeInitialState::Fock(n) => {
            if n > cutoff {
                1.0
            } else {
                0.0
            }
        }
        ModeInitialState::MeanNumber(n0) => thermal_weights(n0, cutoff).1,
    }
}

fn combined_tail(tails: &[f64]) -> f64 {
    -tails.iter().map(|t| (-t).ln_1p()).sum::<f64>().exp_m1()
}

/// Splits the truncated, renormalized initial state into pure components.
pub(crate) fn decompose(
    init: &ModeInitialState<f64>,
    reservoirs: &[ReservoirSpec<f64>],
    trunc: &TruncationConfig,
) -> Result<Decomposition> {
    trunc.validate()?;
    init.validate()?;
    if reservoirs.is_empty() || reservoirs.len() > MAX_EXPLICIT_BATHS {
        return Err(invalid(
            "oracle reservoirs",
            format!(
                "expected 1 to {MAX_EXPLICIT_BATHS} explicit reservoirs, got {}; reduce larger sets with effective_bath",
                reservoirs.len()
            ),
        ));
    }
    let c = trunc.fock_cutoff;
    if let ModeInitialState::Fock(n) = *init {
        if n > c {
            return Err(truncation_error(1.0, trunc.thermal_tail_tolerance, n));
        }
    }
    let nbars = reservoirs.iter().map(|r| r.nbar()).collect::<Result<Vec<_>>>()?;
    let tails_at = |cut: usize| {
        let mut tails = vec![system_tail(init, cut)];
        tails.extend(nbars.iter().map(|&nb| thermal_weights(nb, cut).1));
        combined_tail(&tails)
    };
    let truncated = tails_at(c);
    check_discarded(truncated, trunc.thermal_tail_tolerance, || {
        required_cutoff(tails_at, trunc.thermal_tail_tolerance, c)
    })?;

    let systems: Vec<(f64, Vec<(usize, Complex64)>)> = match *init {
        ModeInitialState::Coherent(a) => {
            let amps = coherent_amplitudes(a, c);
            let norm = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            vec![(1.0, amps.into_iter().enumerate().map(|(n, z)| (n, z / norm)).collect())]
        }
        ModeInitialState::Fock(n) => vec![(1.0, vec![(n, Complex64::new(1.0, 0.0))])],
        ModeInitialState::MeanNumber(n0) => {
            let (w, _) = thermal_weights(n0, c);
            let total: f64 = w.iter().sum();
            w.into_iter().enumerate().map(|(n, p)| (p / total, vec![(n, Complex64::new(1.0, 0.0))])).collect()
        }
    };
    let bath_weights: Vec<Vec<f64>> = nbars
        .iter()
        .map(|&nb| {
            let (w, _) = thermal_weights(nb, c);
            let total: f64 = w.iter().sum();
            w.into_iter().map(|p| p / total).collect()
        })
        .collect();
    let second: Vec<f64> = bath_weights.get(1).cloned().unwrap_or_else(|| vec![1.0]);

    let mut components = Vec::new();
    let mut pruned = 0.0;
    for (ws, sys) in &systems {
        for (n1, w1) in bath_weights[0].iter().enumerate() {
            for (n2, w2) in second.iter().enumerate() {
                let weight = ws * w1 * w2;
                if weight == 0.0 {
                    continue;
                }
                if weight < PRUNE_WEIGHT {
                    pruned += weight;
                    continue;
                }
                components.push(Component { weight, system: sys.clone(), baths: [n1, n2] });
            }
        }
    }
    let kept: f64 = components.iter().map(|c| c.weight).sum();
    for comp in &mut components {
        comp.weight /= kept;
    }
    Ok(Decomposition { components, discarded: truncated + pruned })
}
