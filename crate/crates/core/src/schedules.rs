//! Time-dependent coupling schedules `g(t)` and their accumulated phase
//! `G̃(t) = √γ ∫₀ᵗ g(t') dt'`.
//!
//! Every reservoir couples through the same shape `g(t)`, weighted by `√γ_k`,
//! so a schedule carries the total weight `γ = Σ γ_k` alongside its shape.

use crate::error::{domain, invalid, Error, Result};
use crate::scalar::Real;

#[derive(Debug, Clone, PartialEq)]
pub enum ScheduleKind<T> {
    /// The choice `cos²G̃(t) = e^{-γt}`, which reproduces exponential
    /// (Lindblad-like) relaxation.
    ExponentialThermalization,
    /// `g(t) = g0`.
    Constant { g0: T },
    /// `g` sampled on the uniform grid `t_j = j·step`, linearly interpolated.
    Tabulated { step: T, samples: Vec<T> },
}

#[derive(Debug, Clone, PartialEq)]
pub struct CouplingSchedule<T> {
    kind: ScheduleKind<T>,
    gamma_total: T,
}

impl<T: Real> CouplingSchedule<T> {
    pub fn exponential(gamma_total: T) -> Result<Self> {
        Self::new(ScheduleKind::ExponentialThermalization, gamma_total)
    }

    pub fn constant(g0: T, gamma_total: T) -> Result<Self> {
        Self::new(ScheduleKind::Constant { g0 }, gamma_total)
    }

    pub fn tabulated(step: T, samples: Vec<T>, gamma_total: T) -> Result<Self> {
        Self::new(ScheduleKind::Tabulated { step, samples }, gamma_total)
    }

    pub fn new(kind: ScheduleKind<T>, gamma_total: T) -> Result<Self> {
        if !(gamma_total > T::zero()) || !gamma_total.is_finite() {
            return Err(invalid(
                "schedule",
                format!("total coupling weight must be positive, got {gamma_total}"),
            ));
        }
        match &kind {
            ScheduleKind::ExponentialThermalization => {}
            ScheduleKind::Constant { g0 } => {
                if !g0.is_finite() || *g0 < T::zero() {
                    return Err(invalid("schedule", format!("g0 must be finite and >= 0, got {g0}")));
                }
            }
            ScheduleKind::Tabulated { step, samples } => {
                if !(*step > T::zero()) {
                    return Err(invalid("schedule", "tabulated step must be positive"));
                }
                if samples.len() < 2 {
                    return Err(invalid("schedule", "tabulated schedule needs at least 2 samples"));
                }
                if samples.iter().any(|g| !g.is_finite()) {
                    return Err(invalid("schedule", "tabulated samples must be finite"));
                }
            }
        }
        Ok(Self { kind, gamma_total })
    }

    pub fn kind(&self) -> &ScheduleKind<T> {
        &self.kind
    }

    pub fn gamma_total(&self) -> T {
        self.gamma_total
    }

    /// The same shape with a different total weight.
    pub fn with_gamma(&self, gamma_total: T) -> Result<Self> {
        Self::new(self.kind.clone(), gamma_total)
    }

    /// `G̃(t)`.
    pub fn accumulated_phase(&self, t: T) -> Result<T> {
        check_time(t)?;
        let gamma = self.gamma_total;
        Ok(match &self.kind {
            ScheduleKind::ExponentialThermalization => {
                // arccos(e^{-γt/2}) written through atan2 to stay accurate near t = 0.
                let sin_sq = -(-gamma * t).exp_m1();
                sin_sq.sqrt().atan2((-gamma * t * T::half()).exp())
            }
            ScheduleKind::Constant { g0 } => *g0 * gamma.sqrt() * t,
            ScheduleKind::Tabulated { step, samples } => {
                gamma.sqrt() * tabulated_integral(*step, samples, t)?
            }
        })
    }

    /// `g(t)`, the unweighted coupling shape.
    pub fn instantaneous_coupling(&self, t: T) -> Result<T> {
        check_time(t)?;
        let gamma = self.gamma_total;
        match &self.kind {
            ScheduleKind::ExponentialThermalization => {
                if t == T::zero() {
                    return Err(Error::Singularity { t: 0.0 });
                }
                let sin_sq = -(-gamma * t).exp_m1();
                Ok(gamma.sqrt() * T::half() * (-gamma * t * T::half()).exp() / sin_sq.sqrt())
            }
            ScheduleKind::Constant { g0 } => Ok(*g0),
            ScheduleKind::Tabulated { step, samples } => tabulated_value(*step, samples, t),
        }
    }

    /// `(cos G̃(t), sin G̃(t))`.
    pub fn mixing(&self, t: T) -> Result<(T, T)> {
        match self.kind {
            ScheduleKind::ExponentialThermalization => {
                check_time(t)?;
                let gt = self.gamma_total * t;
                Ok(((-gt * T::half()).exp(), (-(-gt).exp_m1()).sqrt()))
            }
            _ => {
                let g = self.accumulated_phase(t)?;
                Ok((g.cos(), g.sin()))
            }
        }
    }

    /// `(cos²G̃(t), sin²G̃(t))`.
    pub fn mixing_sq(&self, t: T) -> Result<(T, T)> {
        match self.kind {
            ScheduleKind::ExponentialThermalization => {
                check_time(t)?;
                let gt = self.gamma_total * t;
                Ok(((-gt).exp(), -(-gt).exp_m1()))
            }
            _ => {
                let (c, s) = self.mixing(t)?;
                Ok((c * c, s * s))
            }
        }
    }

    /// `d/dt cos²G̃(t) = -sin(2G̃)·√γ·g(t)`.
    ///
    /// Finite at `t = 0` for every kind; the exponential kind reduces to `-γe^{-γt}`.
    pub fn cos_sq_rate(&self, t: T) -> Result<T> {
        match self.kind {
            ScheduleKind::ExponentialThermalization => {
                check_time(t)?;
                Ok(-self.gamma_total * (-self.gamma_total * t).exp())
            }
            _ => {
                let g = self.accumulated_phase(t)?;
                let coupling = self.instantaneous_coupling(t)?;
                Ok(-(T::two() * g).sin() * self.gamma_total.sqrt() * coupling)
            }
        }
    }
}

fn check_time<T: Real>(t: T) -> Result<()> {
    if t >= T::zero() && t.is_finite() {
        Ok(())
    } else {
        Err(domain("time", t.to_f64().unwrap_or(f64::NAN)))
    }
}

fn tabulated_span<T: Real>(step: T, samples: &[T], t: T) -> Result<(usize, T)> {
    let end = step * T::count(samples.len() - 1);
    if t > end * (T::one() + T::epsilon() * T::lit(16.0)) {
        return Err(domain("time beyond tabulated range", t.to_f64().unwrap_or(f64::NAN)));
    }
    let pos = (t / step).min(T::count(samples.len() - 1));
    let idx = pos.floor().to_usize().unwrap_or(0).min(samples.len() - 2);
    Ok((idx, pos - T::count(idx)))
}

fn tabulated_value<T: Real>(step: T, samples: &[T], t: T) -> Result<T> {
    let (j, frac) = tabulated_span(step, samples, t)?;
    Ok(samples[j] + (samples[j + 1] - samples[j]) * frac)
}

/// Trapezoid integral of the piecewise-linear interpolant on `[0, t]`.
fn tabulated_integral<T: Real>(step: T, samples: &[T], t: T) -> Result<T> {
    let (j, frac) = tabulated_span(step, samples, t)?;
    let mut acc = T::zero();
    for w in samples[..=j].windows(2) {
        acc = acc + (w[0] + w[1]) * T::half() * step;
    }
    let end_value = samples[j] + (samples[j + 1] - samples[j]) * frac;
    Ok(acc + (samples[j] + end_value) * T::half() * frac * step)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::{FRAC_PI_4, LN_2};

    #[test]
    fn phase_starts_at_zero() {
        for s in [
            CouplingSchedule::exponential(1.3).unwrap(),
            CouplingSchedule::constant(0.7, 2.0).unwrap(),
            CouplingSchedule::tabulated(0.1, vec![1.0, 2.0, 0.5], 1.0).unwrap(),
        ] {
            assert_eq!(s.accumulated_phase(0.0).unwrap(), 0.0);
        }
    }

    #[test]
    fn exponential_phase_at_half_life() {
        let s = CouplingSchedule::exponential(1.0).unwrap();
        assert_relative_eq!(s.accumulated_phase(LN_2).unwrap(), FRAC_PI_4, epsilon = 1e-15);
    }

    #[test]
    fn constant_phase_is_linear() {
        let s = CouplingSchedule::constant(1.0, 4.0).unwrap();
        assert_relative_eq!(s.accumulated_phase(0.5).unwrap(), 1.0, epsilon = 1e-15);
        let s = CouplingSchedule::constant(2.0, 4.0).unwrap();
        assert_eq!(s.instantaneous_coupling(17.0).unwrap(), 2.0);
    }

    #[test]
    fn exponential_coupling_closed_form() {
        let s = CouplingSchedule::exponential(1.0).unwrap();
        assert_relative_eq!(s.instantaneous_coupling(LN_2).unwrap(), 0.5, epsilon = 1e-15);
        assert_eq!(s.instantaneous_coupling(0.0), Err(Error::Singularity { t: 0.0 }));
    }

    #[test]
    fn negative_time_rejected() {
        let s = CouplingSchedule::exponential(1.0).unwrap();
        assert!(matches!(s.accumulated_phase(-1e-3), Err(Error::Domain { .. })));
        assert!(matches!(s.instantaneous_coupling(-1.0), Err(Error::Domain { .. })));
    }

    #[test]
    fn invalid_schedules_rejected() {
        assert!(CouplingSchedule::exponential(0.0).is_err());
        assert!(CouplingSchedule::constant(-1.0, 1.0).is_err());
        assert!(CouplingSchedule::tabulated(0.1, vec![1.0], 1.0).is_err());
        assert!(CouplingSchedule::tabulated(0.0, vec![1.0, 1.0], 1.0).is_err());
    }

    #[test]
    fn exponential_identity_holds_over_range() {
        let gamma = 0.8;
        let s = CouplingSchedule::exponential(gamma).unwrap();
        for i in 0..=400 {
            let t = 20.0 / gamma * i as f64 / 400.0;
            let g = s.accumulated_phase(t).unwrap();
            assert!((g.cos().powi(2) - (-gamma * t).exp()).abs() < 1e-12, "t = {t}");
            assert!((g.sin().powi(2) + g.cos().powi(2) - 1.0).abs() < 1e-12);
            assert!((0.0..std::f64::consts::FRAC_PI_2).contains(&g));
        }
    }

    #[test]
    fn derivative_of_phase_matches_coupling() {
        for gamma in [0.5, 1.0, 3.0] {
            let schedules = [
                CouplingSchedule::exponential(gamma).unwrap(),
                CouplingSchedule::constant(0.9, gamma).unwrap(),
            ];
            for s in &schedules {
                let h = 1e-5 / gamma;
                for i in 0..=50 {
                    let t = (0.1 + 9.9 * i as f64 / 50.0) / gamma;
                    let num = (s.accumulated_phase(t + h).unwrap()
                        - s.accumulated_phase(t - h).unwrap())
                        / (2.0 * h);
                    let exact = gamma.sqrt() * s.instantaneous_coupling(t).unwrap();
                    assert!(((num - exact) / exact).abs() < 1e-6, "gamma {gamma} t {t}");
                }
            }
        }
    }

    #[test]
    fn phase_is_monotone() {
        let s = CouplingSchedule::exponential(2.0).unwrap();
        let c = CouplingSchedule::constant(0.3, 2.0).unwrap();
        let mut prev = (0.0, 0.0);
        for i in 1..200 {
            let t = i as f64 * 0.05;
            let now = (s.accumulated_phase(t).unwrap(), c.accumulated_phase(t).unwrap());
            assert!(now.0 >= prev.0 && now.1 >= prev.1);
            prev = now;
        }
    }

    #[test]
    fn tabulated_constant_matches_constant_kind() {
        let tab = CouplingSchedule::tabulated(0.25, vec![1.5; 9], 2.0).unwrap();
        let cst = CouplingSchedule::constant(1.5, 2.0).unwrap();
        for t in [0.0, 0.1, 0.6, 1.3, 2.0] {
            assert_relative_eq!(
                tab.accumulated_phase(t).unwrap(),
                cst.accumulated_phase(t).unwrap(),
                epsilon = 1e-13
            );
        }
        assert!(tab.accumulated_phase(2.5).is_err());
    }

    #[test]
    fn tabulated_trapezoid_is_exact_for_linear_ramp() {
        // g(t) = t on [0, 1]; ∫₀ᵗ g = t²/2.
        let samples: Vec<f64> = (0..=10).map(|j| j as f64 * 0.1).collect();
        let s = CouplingSchedule::tabulated(0.1, samples, 1.0).unwrap();
        for t in [0.05, 0.37, 0.5, 1.0] {
            assert_relative_eq!(s.accumulated_phase(t).unwrap(), t * t / 2.0, epsilon = 1e-14);
            assert_relative_eq!(s.instantaneous_coupling(t).unwrap(), t, epsilon = 1e-14);
        }
    }

    #[test]
    fn cos_sq_rate_matches_finite_difference() {
        let c = CouplingSchedule::constant(0.6f64, 1.7).unwrap();
        let e = CouplingSchedule::exponential(1.7).unwrap();
        for s in [&c, &e] {
            for t in [0.2, 0.9, 2.4] {
                let h = 1e-5;
                let num = (s.mixing_sq(t + h).unwrap().0 - s.mixing_sq(t - h).unwrap().0) / (2.0 * h);
                assert!((num - s.cos_sq_rate(t).unwrap()).abs() < 1e-8);
            }
        }
        assert_relative_eq!(e.cos_sq_rate(0.0).unwrap(), -1.7);
    }

    #[test]
    fn works_in_single_precision() {
        let s = CouplingSchedule::<f32>::exponential(1.0).unwrap();
        let g = s.accumulated_phase(std::f32::consts::LN_2).unwrap();
        assert!((g - std::f32::consts::FRAC_PI_4).abs() < 1e-6);
    }
}
