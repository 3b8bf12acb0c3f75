//! Closed-form Heisenberg-picture dynamics of the bosonic mode.
//!
//! With all reservoirs sharing one coupling shape, the mode evolves as
//! `â(t) = μ(t) â(0) + Σ_k ν_k(t) b̂_k(0)` with
//! `μ = e^{-iω₀t} cos G̃` and `ν_k = −i √(γ_k/γ) e^{-iω₀t} sin G̃`.

use crate::bath::{EffectiveBath, ReservoirSpec};
use crate::error::{invalid, Error, Result};
use crate::quadrature::simpson_weights;
use crate::scalar::{im, phase, Cplx, Real};
use crate::schedules::CouplingSchedule;

#[derive(Debug, Clone, PartialEq)]
pub struct LadderCoefficients<T> {
    pub mu: Cplx<T>,
    pub nu: Vec<Cplx<T>>,
}

impl<T: Real> LadderCoefficients<T> {
    /// `|μ|² + Σ|ν_k|²`, which is one for any valid evolution.
    pub fn total_weight(&self) -> T {
        self.nu.iter().fold(self.mu.norm_sqr(), |acc, n| acc + n.norm_sqr())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ModeInitialState<T> {
    Coherent(Cplx<T>),
    Fock(usize),
    /// Only the mean occupation `n(0)` is specified; the oracle realizes it as
    /// a thermal state.
    MeanNumber(T),
}

impl<T: Real> ModeInitialState<T> {
    /// `n(0) = ⟨â†â⟩` at `t = 0`.
    pub fn mean_number(&self) -> T {
        match *self {
            Self::Coherent(a) => a.norm_sqr(),
            Self::Fock(n) => T::count(n),
            Self::MeanNumber(n) => n,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Self::Coherent(a) if !(a.re.is_finite() && a.im.is_finite()) => {
                Err(invalid("initial state", "coherent amplitude must be finite"))
            }
            Self::MeanNumber(n) if !(n >= T::zero() && n.is_finite()) => {
                Err(invalid("initial state", format!("mean number must be >= 0, got {n}")))
            }
            _ => Ok(()),
        }
    }
}

/// Rejects a schedule whose total weight disagrees with the reservoirs'.
pub(crate) fn check_gamma<T: Real>(sched: &CouplingSchedule<T>, gamma: T) -> Result<()> {
    let sg = sched.gamma_total();
    if (sg - gamma).abs() > T::lit(1e-12) * sg.max(gamma) {
        return Err(invalid(
            "schedule",
            format!("schedule weight {sg} does not match reservoir total {gamma}"),
        ));
    }
    Ok(())
}

pub fn ladder_coefficients<T: Real>(
    t: T,
    sched: &CouplingSchedule<T>,
    reservoirs: &[ReservoirSpec<T>],
    omega0: T,
) -> Result<LadderCoefficients<T>> {
    let eff = crate::bath::effective_bath(reservoirs)?;
    check_gamma(sched, eff.gamma)?;
    let (c, s) = sched.mixing(t)?;
    let rot = phase(-omega0 * t);
    let nu = reservoirs
        .iter()
        .map(|r| rot * im(-(r.gamma / eff.gamma).sqrt() * s))
        .collect();
    Ok(LadderCoefficients { mu: rot * c, nu })
}

/// `n(t) = cos²G̃ n(0) + sin²G̃ n̄`.
pub fn mean_excitation<T: Real>(
    t: T,
    init: &ModeInitialState<T>,
    eff: &EffectiveBath<T>,
    sched: &CouplingSchedule<T>,
) -> Result<T> {
    init.validate()?;
    check_gamma(sched, eff.gamma)?;
    let (c2, s2) = sched.mixing_sq(t)?;
    Ok(c2 * init.mean_number() + s2 * eff.nbar)
}

/// `E(t) = ω₀(n(t) + 1/2)`.
pub fn mode_energy<T: Real>(
    t: T,
    init: &ModeInitialState<T>,
    eff: &EffectiveBath<T>,
    sched: &CouplingSchedule<T>,
    omega0: T,
) -> Result<T> {
    Ok(omega0 * (mean_excitation(t, init, eff, sched)? + T::half()))
}

/// Energies `(E_a, E_b)` in units of `ω₀` for `|N⟩_a ⊗ |0⟩_b` under the
/// exponential schedule, without zero-point offsets.
pub fn charge_discharge_energies<T: Real>(t: T, n: usize, gamma: T) -> Result<(T, T)> {
    let sched = CouplingSchedule::exponential(gamma)?;
    let (c2, s2) = sched.mixing_sq(t)?;
    let n = T::count(n);
    Ok((n * c2, n * s2))
}

/// Uniform samples `f(j·h)` on `[0, t]` for use with [`driven_mean_amplitude`].
///
/// The default spacing is `min(0.01/γ, 0.01·2π/ω₀)`, shrunk so that it divides
/// `t` into an even number of intervals.
pub fn sample_drive<T: Real>(
    f: impl Fn(T) -> T,
    t: T,
    gamma: T,
    omega0: T,
    step: Option<T>,
) -> Vec<T> {
    let default = (T::lit(0.01) / gamma).min(T::lit(0.01) * T::TAU() / omega0.abs().max(T::epsilon()));
    let h = step.unwrap_or(default);
    let mut intervals = (t / h).ceil().to_usize().unwrap_or(2).max(2);
    if intervals % 2 == 1 {
        intervals += 1;
    }
    let h = t / T::count(intervals);
    (0..=intervals).map(|j| f(T::count(j) * h)).collect()
}

/// `⟨â(t)⟩ = μ(t)α₀ − i∫₀ᵗ e^{-iω₀(t−t')} cos[G̃(t)−G̃(t')] f(t') dt'` by composite Simpson.
///
/// `drive` holds `f` on a uniform grid spanning `[0, t]` inclusive. Reservoir
/// states are thermal and contribute nothing to the first moment.
pub fn driven_mean_amplitude<T: Real>(
    t: T,
    sched: &CouplingSchedule<T>,
    omega0: T,
    alpha0: Cplx<T>,
    drive: &[T],
) -> Result<Cplx<T>> {
    if drive.len() < 3 {
        return Err(Error::Quadrature {
            needed: 3,
            got: drive.len(),
        });
    }
    let g_end = sched.accumulated_phase(t)?;
    let (c, _) = sched.mixing(t)?;
    let mu = phase(-omega0 * t) * c;
    let h = t / T::count(drive.len() - 1);
    let weights = simpson_weights::<T>(drive.len())?;
    let mut acc = Cplx::new(T::zero(), T::zero());
    for (j, (&f, &w)) in drive.iter().zip(&weights).enumerate() {
        let tp = T::count(j) * h;
        let kernel = phase(-omega0 * (t - tp)) * (g_end - sched.accumulated_phase(tp)?).cos();
        acc = acc + kernel * (f * w);
    }
    Ok(mu * alpha0 - im(T::one()) * acc * h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bath::effective_bath;
    use approx::assert_relative_eq;
    use num_complex::Complex64;
    use std::f64::consts::LN_2;

    fn three_baths() -> Vec<ReservoirSpec<f64>> {
        vec![
            ReservoirSpec::with_nbar(1.0, 5.0),
            ReservoirSpec::with_nbar(1.0, 2.0),
            ReservoirSpec::with_nbar(1.0, 5.0),
        ]
    }

    #[test]
    fn identity_at_zero() {
        let s = CouplingSchedule::exponential(3.0).unwrap();
        let l = ladder_coefficients(0.0, &s, &three_baths(), 2.0).unwrap();
        assert_eq!(l.mu, Complex64::new(1.0, 0.0));
        assert!(l.nu.iter().all(|n| n.norm() == 0.0));
    }

    #[test]
    fn nu_weights_follow_gamma_ratio() {
        // sin²G̃ = 1/2 with γ = 4: e^{-4t} = 1/2.
        let res = [ReservoirSpec::with_nbar(3.0, 0.0), ReservoirSpec::with_nbar(1.0, 0.0)];
        let s = CouplingSchedule::exponential(4.0).unwrap();
        let l = ladder_coefficients(LN_2 / 4.0, &s, &res, 1.0).unwrap();
        assert_relative_eq!(l.nu[0].norm_sqr(), 3.0 / 8.0, epsilon = 1e-14);
        assert_relative_eq!(l.nu[1].norm_sqr(), 1.0 / 8.0, epsilon = 1e-14);
        assert_relative_eq!(l.mu.norm_sqr(), 0.5, epsilon = 1e-14);
    }

    #[test]
    fn unitarity_of_mode_mixing() {
        let res = [
            ReservoirSpec::with_nbar(0.3, 1.0),
            ReservoirSpec::with_nbar(1.1, 0.0),
            ReservoirSpec::with_nbar(2.6, 4.0),
        ];
        let gamma = 4.0;
        for sched in [
            CouplingSchedule::exponential(gamma).unwrap(),
            CouplingSchedule::constant(1.3, gamma).unwrap(),
        ] {
            for i in 0..=200 {
                let t = 20.0 / gamma * i as f64 / 200.0;
                let l = ladder_coefficients(t, &sched, &res, 1.7).unwrap();
                assert!((l.total_weight() - 1.0).abs() < 1e-12);
                if matches!(sched.kind(), crate::schedules::ScheduleKind::ExponentialThermalization) {
                    assert!((l.mu.norm_sqr() - (-gamma * t).exp()).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn mismatched_schedule_weight_rejected() {
        let s = CouplingSchedule::exponential(2.0).unwrap();
        assert!(ladder_coefficients(1.0, &s, &three_baths(), 1.0).is_err());
    }

    #[test]
    fn three_bath_mean_number() {
        let eff = effective_bath(&three_baths()).unwrap();
        let s = CouplingSchedule::exponential(3.0).unwrap();
        let init = ModeInitialState::MeanNumber(5.0);
        for i in 0..=30 {
            let t = i as f64 * 0.1;
            let n = mean_excitation(t, &init, &eff, &s).unwrap();
            assert!((n - (4.0 + (-3.0 * t).exp())).abs() < 1e-12);
        }
        assert_relative_eq!(mean_excitation(0.0, &init, &eff, &s).unwrap(), 5.0);
        assert!((mean_excitation(60.0, &init, &eff, &s).unwrap() - 4.0).abs() < 1e-12);
    }

    #[test]
    fn mean_number_of_initial_states() {
        assert_eq!(ModeInitialState::Coherent(Complex64::new(1.0, 2.0)).mean_number(), 5.0);
        assert_eq!(ModeInitialState::<f64>::Fock(7).mean_number(), 7.0);
        assert!(ModeInitialState::MeanNumber(-1.0).validate().is_err());
    }

    #[test]
    fn energy_examples() {
        let eff = EffectiveBath { gamma: 1.0, nbar: 0.0 };
        let s = CouplingSchedule::exponential(1.0).unwrap();
        let e = mode_energy(LN_2, &ModeInitialState::MeanNumber(10.0), &eff, &s, 2.0).unwrap();
        assert_relative_eq!(e, 2.0 * 5.5, epsilon = 1e-13);
        let e0 = mode_energy(0.0, &ModeInitialState::Fock(3), &eff, &s, 1.5).unwrap();
        assert_relative_eq!(e0, 1.5 * 3.5);
        let eff = EffectiveBath { gamma: 1.0, nbar: 0.8 };
        let einf = mode_energy(80.0, &ModeInitialState::Fock(3), &eff, &s, 1.5).unwrap();
        assert_relative_eq!(einf, 1.5 * 1.3, epsilon = 1e-12);
    }

    #[test]
    fn mean_number_is_monotone_under_exponential_schedule() {
        let s = CouplingSchedule::exponential(0.7).unwrap();
        let eff = EffectiveBath { gamma: 0.7, nbar: 2.0 };
        for (n0, decreasing) in [(6.0, true), (0.5, false)] {
            let init = ModeInitialState::MeanNumber(n0);
            let mut prev = mean_excitation(0.0, &init, &eff, &s).unwrap();
            for i in 1..300 {
                let n = mean_excitation(i as f64 * 0.05, &init, &eff, &s).unwrap();
                if decreasing {
                    assert!(n < prev);
                } else {
                    assert!(n > prev);
                }
                prev = n;
            }
        }
    }

    #[test]
    fn interpolation_consistency_for_any_schedule() {
        let res = [ReservoirSpec::with_nbar(0.4, 3.0), ReservoirSpec::with_nbar(0.6, 0.5)];
        let eff = effective_bath(&res).unwrap();
        let init = ModeInitialState::Coherent(Complex64::new(1.2, -0.4));
        let samples: Vec<f64> = (0..=100).map(|j| 1.0 + (j as f64 * 0.1).sin()).collect();
        for sched in [
            CouplingSchedule::constant(0.8, 1.0).unwrap(),
            CouplingSchedule::tabulated(0.05, samples, 1.0).unwrap(),
        ] {
            for t in [0.0, 0.3, 1.1, 4.0] {
                let mu2 = ladder_coefficients(t, &sched, &res, 1.0).unwrap().mu.norm_sqr();
                let n = mean_excitation(t, &init, &eff, &sched).unwrap();
                assert!((n - (mu2 * init.mean_number() + (1.0 - mu2) * eff.nbar)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn battery_energies() {
        let (ea, eb) = charge_discharge_energies(LN_2, 10, 1.0).unwrap();
        assert_relative_eq!(ea, 5.0, epsilon = 1e-13);
        assert_relative_eq!(eb, 5.0, epsilon = 1e-13);
        for i in 0..=60 {
            let (ea, eb) = charge_discharge_energies(i as f64 * 0.1, 10, 1.0f64).unwrap();
            assert!((ea + eb - 10.0).abs() < 1e-12);
        }
        let (ea, eb) = charge_discharge_energies(60.0f64, 10, 1.0).unwrap();
        assert!(ea < 1e-20 && (eb - 10.0).abs() < 1e-12);
    }

    #[test]
    fn undriven_amplitude() {
        let s = CouplingSchedule::exponential(0.5).unwrap();
        let a0 = Complex64::new(1.0, 0.5);
        let t = 1.3;
        let got = driven_mean_amplitude(t, &s, 2.0, a0, &[0.0; 11]).unwrap();
        let want = phase(-2.0 * t) * (-0.25 * t).exp() * a0;
        assert!((got - want).norm() < 1e-14);
    }

    #[test]
    fn constant_drive_without_coupling() {
        let s = CouplingSchedule::constant(0.0, 1.0).unwrap();
        let (w0, f0, t) = (1.7, 0.3, 2.2);
        let drive = sample_drive(|_| f0, t, 1.0, w0, Some(1e-3));
        let got = driven_mean_amplitude(t, &s, w0, Complex64::new(0.0, 0.0), &drive).unwrap();
        let i = Complex64::i();
        let want = -i * f0 * phase(-w0 * t) * (phase(w0 * t) - 1.0) / (i * w0);
        assert!((got - want).norm() < 1e-12, "{got} vs {want}");
    }

    #[test]
    fn too_few_drive_samples() {
        let s = CouplingSchedule::exponential(1.0).unwrap();
        assert_eq!(
            driven_mean_amplitude(1.0, &s, 1.0, Complex64::new(0.0, 0.0), &[1.0, 1.0]),
            Err(Error::Quadrature { needed: 3, got: 2 })
        );
    }

    #[test]
    fn drive_samples_cover_interval() {
        let v = sample_drive(|t: f64| t, 1.0, 1.0, 1.0, Some(0.3));
        assert_eq!(v.len() % 2, 1);
        assert_eq!(*v.first().unwrap(), 0.0);
        assert!((*v.last().unwrap() - 1.0).abs() < 1e-15);
    }
}
