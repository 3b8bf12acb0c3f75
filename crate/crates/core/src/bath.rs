//! Reservoir bookkeeping: thermal occupations and the reduction of several
//! single-mode reservoirs to one effective reservoir `(γ, n̄)`.

use crate::error::{domain, invalid, Error, Result};
use crate::scalar::Real;

/// How a reservoir's occupation is specified. `theta` is `ω₀/T` (ħ = k_B = 1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Occupancy<T> {
    MeanNumber(T),
    Theta(T),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReservoirSpec<T> {
    pub gamma: T,
    pub occupancy: Occupancy<T>,
}

impl<T: Real> ReservoirSpec<T> {
    pub fn with_nbar(gamma: T, nbar: T) -> Self {
        Self {
            gamma,
            occupancy: Occupancy::MeanNumber(nbar),
        }
    }

    pub fn with_theta(gamma: T, theta: T) -> Self {
        Self {
            gamma,
            occupancy: Occupancy::Theta(theta),
        }
    }

    /// Mean occupation `n̄_k`.
    pub fn nbar(&self) -> Result<T> {
        match self.occupancy {
            Occupancy::MeanNumber(n) if n >= T::zero() && n.is_finite() => Ok(n),
            Occupancy::MeanNumber(n) => Err(domain("mean occupation", n.to_f64().unwrap_or(f64::NAN))),
            Occupancy::Theta(theta) => thermal_occupation(theta),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.gamma >= T::zero()) || !self.gamma.is_finite() {
            return Err(invalid("reservoir", format!("gamma must be finite and >= 0, got {}", self.gamma)));
        }
        self.nbar().map(|_| ())
    }
}

/// The single reservoir equivalent (for system observables) to a set of reservoirs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffectiveBath<T> {
    pub gamma: T,
    pub nbar: T,
}

/// Bose-Einstein occupation `1/(e^θ − 1)`.
pub fn thermal_occupation<T: Real>(theta: T) -> Result<T> {
    if !(theta > T::zero()) {
        return Err(domain("theta", theta.to_f64().unwrap_or(f64::NAN)));
    }
    Ok(theta.exp_m1().recip())
}

/// `γ = Σγ_k`, `n̄ = Σγ_k n̄_k / γ`.
pub fn effective_bath<T: Real>(reservoirs: &[ReservoirSpec<T>]) -> Result<EffectiveBath<T>> {
    if reservoirs.is_empty() {
        return Err(invalid("reservoirs", "at least one reservoir is required"));
    }
    let mut gamma = T::zero();
    let mut weighted = T::zero();
    for r in reservoirs {
        r.validate()?;
        gamma = gamma + r.gamma;
        weighted = weighted + r.gamma * r.nbar()?;
    }
    if gamma == T::zero() {
        return Err(Error::DegenerateBath);
    }
    Ok(EffectiveBath {
        gamma,
        nbar: weighted / gamma,
    })
}

/// `Σ_k γ_k (n̄_k − n̄)`, which vanishes for the effective `n̄`.
pub fn balance_residual<T: Real>(reservoirs: &[ReservoirSpec<T>], nbar: T) -> Result<T> {
    reservoirs
        .iter()
        .try_fold(T::zero(), |acc, r| Ok(acc + r.gamma * (r.nbar()? - nbar)))
}

/// Excited-state population of a two-level reservoir at `θ = ω₀/T`.
pub fn two_level_population<T: Real>(theta: T) -> Result<T> {
    if !(theta >= T::zero()) {
        return Err(domain("theta", theta.to_f64().unwrap_or(f64::NAN)));
    }
    let boltz = (-theta).exp();
    Ok(boltz / (T::one() + boltz))
}
