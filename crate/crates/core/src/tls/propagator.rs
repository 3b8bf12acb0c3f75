use super::state::{adjoint, matmul, unitarity_defect, zero_mat, Mat, TlsBathSpec, TlsDensity, TotalDensity};
use crate::error::{invalid, Error, Result};
use crate::mode_dynamics::check_gamma;
use crate::scalar::{phase, Cplx, Real};
use crate::schedules::CouplingSchedule;

/// Basis indices of `(++−, +−+, −++)`.
pub const HOLE_SECTOR: [usize; 3] = [1, 2, 4];
/// Basis indices of `(+−−, −+−, −−+)`.
pub const PARTICLE_SECTOR: [usize; 3] = [3, 5, 6];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlockPropagator<T>(pub Mat<T, 3>);

impl<T: Real> BlockPropagator<T> {
    pub fn unitarity_defect(&self) -> T {
        unitarity_defect(&self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FullPropagator<T>(pub Mat<T, 8>);

impl<T: Real> FullPropagator<T> {
    pub fn unitarity_defect(&self) -> T {
        unitarity_defect(&self.0)
    }

    /// Largest entry coupling different excitation sectors.
    pub fn leakage(&self) -> T {
        let sector = |i: usize| i.count_ones();
        let mut worst = T::zero();
        for i in 0..8 {
            for j in 0..8 {
                if sector(i) != sector(j) {
                    worst = worst.max(self.0[i][j].norm());
                }
            }
        }
        worst
    }

    pub fn compose(&self, other: &Self) -> Self {
        Self(matmul(&self.0, &other.0))
    }

    pub fn apply(&self, v: &[Cplx<T>; 8]) -> [Cplx<T>; 8] {
        let mut out = [Cplx::new(T::zero(), T::zero()); 8];
        for (i, o) in out.iter_mut().enumerate() {
            for (j, x) in v.iter().enumerate() {
                *o = *o + self.0[i][j] * x;
            }
        }
        out
    }

    /// `W ρ W†`.
    pub fn conjugate(&self, rho: &TotalDensity<T>) -> TotalDensity<T> {
        TotalDensity(matmul(&matmul(&self.0, &rho.0), &adjoint(&self.0)))
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        let mut worst = T::zero();
        for i in 0..8 {
            for j in 0..8 {
                worst = worst.max((self.0[i][j] - other.0[i][j]).norm());
            }
        }
        worst
    }
}

/// Long-time populations and coherence magnitude of the system.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TlsStationary<T> {
    pub excited: T,
    pub coherence_abs: T,
}

/// A two-level system between two two-level reservoirs.
#[derive(Debug, Clone, PartialEq)]
pub struct TlsModel<T> {
    pub bath1: TlsBathSpec<T>,
    pub bath2: TlsBathSpec<T>,
    pub omega0: T,
    pub sched: CouplingSchedule<T>,
}

fn symmetric3<T: Real>(d: [Cplx<T>; 3], o12: Cplx<T>, o13: Cplx<T>, o23: Cplx<T>) -> Mat<T, 3> {
    [[d[0], o12, o13], [o12, d[1], o23], [o13, o23, d[2]]]
}

impl<T: Real> TlsModel<T> {
    pub fn new(bath1: TlsBathSpec<T>, bath2: TlsBathSpec<T>, omega0: T, sched: CouplingSchedule<T>) -> Result<Self> {
        bath1.validate()?;
        bath2.validate()?;
        if !omega0.is_finite() {
            return Err(invalid("two-level model", "omega0 must be finite"));
        }
        let gamma = bath1.gamma + bath2.gamma;
        if gamma <= T::zero() {
            return Err(Error::DegenerateBath);
        }
        check_gamma(&sched, gamma)?;
        Ok(Self { bath1, bath2, omega0, sched })
    }

    pub fn gamma(&self) -> T {
        self.bath1.gamma + self.bath2.gamma
    }

    /// `(N, M)`: the one-hole and one-excitation blocks of `W(t)`.
    pub fn block_propagators(&self, t: T) -> Result<(BlockPropagator<T>, BlockPropagator<T>)> {
        let (c, s) = self.sched.mixing(t)?;
        let (g1, g2) = (self.bath1.gamma, self.bath2.gamma);
        let g = g1 + g2;
        let zero = T::zero();
        let block = |ga: T, gb: T, sign: T| {
            let ph = phase(-sign * self.omega0 * t * T::half());
            let mi = Cplx::new(zero, -T::one());
            let d = [
                ph * ((ga + gb * c) / g),
                ph * c,
                ph * ((gb + ga * c) / g),
            ];
            let o12 = ph * mi * (gb.sqrt() * s / g.sqrt());
            let o13 = ph * ((ga * gb).sqrt() * (c - T::one()) / g);
            let o23 = ph * mi * (ga.sqrt() * s / g.sqrt());
            BlockPropagator(symmetric3(d, o12, o13, o23))
        };
        Ok((block(g1, g2, T::one()), block(g2, g1, -T::one())))
    }

    /// The 8×8 evolution operator.
    pub fn full_propagator(&self, t: T) -> Result<FullPropagator<T>> {
        let (n, m) = self.block_propagators(t)?;
        let mut w = zero_mat();
        let three_halves = T::lit(1.5) * self.omega0 * t;
        w[0][0] = phase(-three_halves);
        w[7][7] = phase(three_halves);
        for (block, idx) in [(n, HOLE_SECTOR), (m, PARTICLE_SECTOR)] {
            for (bi, &i) in idx.iter().enumerate() {
                for (bj, &j) in idx.iter().enumerate() {
                    w[i][j] = block.0[bi][bj];
                }
            }
        }
        Ok(FullPropagator(w))
    }

    pub fn evolve_pure(&self, amplitudes: &[Cplx<T>; 8], t: T) -> Result<[Cplx<T>; 8]> {
        let norm_sqr = amplitudes.iter().fold(T::zero(), |a, x| a + x.norm_sqr());
        if (norm_sqr - T::one()).abs() > T::lit(1e-9) || !norm_sqr.is_finite() {
            return Err(Error::Normalization { norm_sqr: norm_sqr.to_f64().unwrap_or(f64::NAN) });
        }
        Ok(self.full_propagator(t)?.apply(amplitudes))
    }

    /// Evolves `ρ₁ ⊗ ρ_S ⊗ ρ₂` to time `t`.
    pub fn evolve_density(&self, system: &TlsDensity<T>, t: T) -> Result<TotalDensity<T>> {
        system.validate()?;
        let rho = TotalDensity::product(system, &self.bath1, &self.bath2);
        Ok(self.full_propagator(t)?.conjugate(&rho))
    }

    /// Closed-form reduced state at time `t`.
    pub fn explicit_components(&self, system: &TlsDensity<T>, t: T) -> Result<TlsDensity<T>> {
        system.validate()?;
        let (c2, s2) = self.sched.mixing_sq(t)?;
        let (c, _) = self.sched.mixing(t)?;
        let (g1, g2) = (self.bath1.gamma, self.bath2.gamma);
        let g = g1 + g2;
        let (p1, q1, p2, q2) = (self.bath1.p, self.bath1.q(), self.bath2.p, self.bath2.q());
        let pbar = (g1 * p1 + g2 * p2) / g;
        let a = system.a * c2 + pbar * s2;
        let mixed = (T::two() * g1 * g2 + (g1 - g2).powi(2) * c + T::two() * g1 * g2 * c2) / (g * g);
        let factor = (p1 * p2 + q1 * q2) * c + (p1 * q2 + q1 * p2) * mixed;
        let coherence = system.c * phase(self.omega0 * t) * factor;
        Ok(TlsDensity { a, b: T::one() - a, c: coherence })
    }

    /// Long-time limit for schedules with `cos G̃ → 0`.
    pub fn stationary(&self, system: &TlsDensity<T>) -> TlsStationary<T> {
        let (g1, g2) = (self.bath1.gamma, self.bath2.gamma);
        let g = g1 + g2;
        let (p1, q1, p2, q2) = (self.bath1.p, self.bath1.q(), self.bath2.p, self.bath2.q());
        TlsStationary {
            excited: (g1 * p1 + g2 * p2) / g,
            coherence_abs: T::two() * system.c.norm() * g1 * g2 * (p1 * q2 + q1 * p2) / (g * g),
        }
    }

    /// Reservoir 1 in `√p₁|+⟩ + √q₁|−⟩`, system and reservoir 2 in `|−⟩`.
    pub fn pure_state_reduced(&self, p1: T, t: T) -> Result<TlsDensity<T>> {
        if !(p1 >= T::zero() && p1 <= T::one()) {
            return Err(invalid("initial amplitude", format!("p1 = {p1} not in [0, 1]")));
        }
        let s = self.sched.mixing(t)?.1;
        let g = self.gamma();
        let a = p1 * s * s * self.bath1.gamma / g;
        let upper = Cplx::new(T::zero(), -T::one())
            * phase(-self.omega0 * t)
            * ((self.bath1.gamma / g).sqrt() * s * (p1 * (T::one() - p1)).sqrt());
        Ok(TlsDensity { a, b: T::one() - a, c: upper.conj() })
    }

    /// `dD/dt` for two diagonal initial states.
    pub fn markov_rate(&self, t: T, r1: &TlsDensity<T>, r2: &TlsDensity<T>) -> Result<T> {
        if !r1.is_diagonal() || !r2.is_diagonal() {
            return Err(invalid("markov rate", "both states must be diagonal"));
        }
        Ok((r1.a - r2.a).abs() * self.sched.cos_sq_rate(t)?)
    }
}

#[cfg(test)]
mod tests {
    use super::super::state::{basis_index, reduce_system, trace_distance};
    use super::*;
    use num_complex::Complex64 as C;

    fn model(g1: f64, g2: f64, p1: f64, p2: f64) -> TlsModel<f64> {
        TlsModel::new(
            TlsBathSpec::new(p1, g1).unwrap(),
            TlsBathSpec::new(p2, g2).unwrap(),
            1.3,
            CouplingSchedule::exponential(g1 + g2).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn identity_at_zero() {
        let m = model(0.4, 1.1, 0.2, 0.7);
        let w = m.full_propagator(0.0).unwrap();
        for i in 0..8 {
            for j in 0..8 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((w.0[i][j] - C::new(want, 0.0)).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn unitary_and_closed() {
        let m = model(0.4, 1.1, 0.2, 0.7);
        for t in [0.01, 0.5, 2.0, 9.0] {
            let w = m.full_propagator(t).unwrap();
            assert!(w.unitarity_defect() < 1e-13);
            assert_eq!(w.leakage(), 0.0);
            let (n, mm) = m.block_propagators(t).unwrap();
            assert!(n.unitarity_defect() < 1e-13 && mm.unitarity_defect() < 1e-13);
        }
    }

    #[test]
    fn degenerate_and_mismatched() {
        let b = TlsBathSpec::new(0.5, 0.0).unwrap();
        let s = CouplingSchedule::exponential(1.0).unwrap();
        assert_eq!(TlsModel::new(b, b, 1.0, s.clone()), Err(Error::DegenerateBath));
        let b1 = TlsBathSpec::new(0.5, 0.7).unwrap();
        assert!(TlsModel::new(b1, b1, 1.0, s).is_err());
    }

    #[test]
    fn closed_form_matches_propagated_state() {
        let m = model(0.4, 1.1, 0.2, 0.7);
        let s = TlsDensity::new(0.35, C::new(0.2, -0.3)).unwrap();
        for t in [0.0, 0.3, 1.0, 4.0] {
            let brute = reduce_system(&m.evolve_density(&s, t).unwrap());
            let closed = m.explicit_components(&s, t).unwrap();
            assert!((brute.a - closed.a).abs() < 1e-13);
            assert!((brute.c - closed.c).norm() < 1e-13, "t={t}: {:?} vs {:?}", brute.c, closed.c);
        }
        let late = m.explicit_components(&s, 60.0).unwrap();
        let st = m.stationary(&s);
        assert!((late.a - st.excited).abs() < 1e-12);
        assert!((late.c.norm() - st.coherence_abs).abs() < 1e-12);
    }

    #[test]
    fn pure_state_example() {
        let m = model(0.6, 0.9, 0.0, 0.0);
        let p1: f64 = 0.3;
        let mut psi = [C::new(0.0, 0.0); 8];
        psi[basis_index(0, 1, 1)] = C::new(p1.sqrt(), 0.0);
        psi[basis_index(1, 1, 1)] = C::new((1.0 - p1).sqrt(), 0.0);
        for t in [0.2, 1.0, 3.0] {
            let out = m.evolve_pure(&psi, t).unwrap();
            let brute = reduce_system(&TotalDensity::pure(&out));
            let closed = m.pure_state_reduced(p1, t).unwrap();
            assert!((brute.a - closed.a).abs() < 1e-14, "{brute:?} vs {closed:?}");
            assert!((brute.c - closed.c).norm() < 1e-14);
        }
        assert!(matches!(m.evolve_pure(&[C::new(1.0, 0.0); 8], 1.0), Err(Error::Normalization { .. })));
    }

    #[test]
    fn markov_rate_matches_finite_difference() {
        let m = model(0.4, 1.1, 0.2, 0.7);
        let r1 = TlsDensity::diagonal(0.9).unwrap();
        let r2 = TlsDensity::diagonal(0.1).unwrap();
        let d = |t: f64| {
            trace_distance(&m.explicit_components(&r1, t).unwrap(), &m.explicit_components(&r2, t).unwrap())
        };
        for t in [0.2, 1.0, 2.5] {
            let h = 1e-5;
            let fd = (d(t + h) - d(t - h)) / (2.0 * h);
            let sigma = m.markov_rate(t, &r1, &r2).unwrap();
            assert!((fd - sigma).abs() < 1e-8);
            assert!(sigma <= 0.0);
        }
        let coh = TlsDensity::new(0.5, C::new(0.1, 0.0)).unwrap();
        assert!(m.markov_rate(0.5, &coh, &r2).is_err());
    }
}
