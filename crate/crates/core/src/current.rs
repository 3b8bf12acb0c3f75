//! Excitation current through the mode.

use crate::bath::{effective_bath, ReservoirSpec};
use crate::error::Result;
use crate::mode_dynamics::{mean_excitation, ModeInitialState};
use crate::scalar::Real;
use crate::schedules::CouplingSchedule;

#[derive(Debug, Clone, PartialEq)]
pub struct CurrentReport<T> {
    pub t: T,
    pub mean_number: T,
    pub current: T,
    /// Signed `γ_k (n̄_k − n(t))`; positive entries are sources.
    pub per_reservoir_flow: Vec<T>,
}

impl<T: Real> CurrentReport<T> {
    pub fn net_flow(&self) -> T {
        self.per_reservoir_flow.iter().fold(T::zero(), |a, &f| a + f)
    }
}

fn half_abs_sum<T: Real>(flows: &[T]) -> T {
    flows.iter().fold(T::zero(), |a, f| a + f.abs()) * T::half()
}

/// `I(t) = ½ Σ_k γ_k |n̄_k − n(t)|`.
pub fn quantum_current<T: Real>(
    t: T,
    init: &ModeInitialState<T>,
    reservoirs: &[ReservoirSpec<T>],
    sched: &CouplingSchedule<T>,
) -> Result<CurrentReport<T>> {
    let eff = effective_bath(reservoirs)?;
    let n_t = mean_excitation(t, init, &eff, sched)?;
    let per_reservoir_flow = reservoirs
        .iter()
        .map(|r| Ok(r.gamma * (r.nbar()? - n_t)))
        .collect::<Result<Vec<_>>>()?;
    Ok(CurrentReport {
        t,
        mean_number: n_t,
        current: half_abs_sum(&per_reservoir_flow),
        per_reservoir_flow,
    })
}

/// `I_s = ½ Σ_k γ_k |n̄_k − n̄|`.
pub fn stationary_current<T: Real>(reservoirs: &[ReservoirSpec<T>]) -> Result<T> {
    let eff = effective_bath(reservoirs)?;
    let flows = reservoirs
        .iter()
        .map(|r| Ok(r.gamma * (r.nbar()? - eff.nbar)))
        .collect::<Result<Vec<_>>>()?;
    Ok(half_abs_sum(&flows))
}
