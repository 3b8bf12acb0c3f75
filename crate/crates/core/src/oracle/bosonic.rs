use super::{decompose, Component, OracleState, TruncationConfig, MAX_EXPLICIT_BATHS};
use crate::bath::ReservoirSpec;
use crate::error::{invalid, Result};
use crate::mode_dynamics::{check_gamma, ModeInitialState};
use crate::schedules::CouplingSchedule;
use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use std::collections::HashMap;

/// Occupations `[n_mode, n_bath1, n_bath2]`.
type Occupation = [usize; 1 + MAX_EXPLICIT_BATHS];

/// All states with a fixed total excitation number, and the eigensystem of
/// the exchange generator `K = Σ_k √(γ_k/γ)(a b_k† + a† b_k)` restricted to them.
struct Sector {
    states: Vec<Occupation>,
    index: HashMap<Occupation, usize>,
    vectors: DMatrix<f64>,
    values: DVector<f64>,
}

impl Sector {
    fn new(total: usize, weights: &[f64]) -> Self {
        let mut states = Vec::new();
        match weights.len() {
            1 => states.extend((0..=total).map(|n| [n, total - n, 0])),
            _ => {
                for n in 0..=total {
                    for n1 in 0..=total - n {
                        states.push([n, n1, total - n - n1]);
                    }
                }
            }
        }
        let index: HashMap<_, _> = states.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        let dim = states.len();
        let mut k = DMatrix::<f64>::zeros(dim, dim);
        for (i, s) in states.iter().enumerate() {
            if s[0] == 0 {
                continue;
            }
            for (b, w) in weights.iter().enumerate() {
                let mut to = *s;
                to[0] -= 1;
                to[b + 1] += 1;
                let j = index[&to];
                let amp = w * (s[0] as f64).sqrt() * (to[b + 1] as f64).sqrt();
                k[(j, i)] += amp;
                k[(i, j)] += amp;
            }
        }
        let eig = SymmetricEigen::new(k);
        Self { states, index, vectors: eig.eigenvectors, values: eig.eigenvalues }
    }

    /// `exp(−iG̃K)` applied to `x`.
    fn apply(&self, x: &[Complex64], mixing_angle: f64) -> Vec<Complex64> {
        if mixing_angle == 0.0 {
            return x.to_vec();
        }
        let dim = self.states.len();
        let v = &self.vectors;
        let mut y = vec![Complex64::new(0.0, 0.0); dim];
        for e in 0..dim {
            let mut proj = Complex64::new(0.0, 0.0);
            for i in 0..dim {
                proj += x[i] * v[(i, e)];
            }
            let proj = proj * Complex64::from_polar(1.0, -mixing_angle * self.values[e]);
            for i in 0..dim {
                y[i] += proj * v[(i, e)];
            }
        }
        y
    }

    fn dense(&self, mixing_angle: f64) -> DMatrix<Complex64> {
        let dim = self.states.len();
        let mut u = DMatrix::zeros(dim, dim);
        for j in 0..dim {
            let mut e = vec![Complex64::new(0.0, 0.0); dim];
            e[j] = Complex64::new(1.0, 0.0);
            for (i, z) in self.apply(&e, mixing_angle).into_iter().enumerate() {
                u[(i, j)] = z;
            }
        }
        u
    }
}

pub(crate) struct SectorCache {
    weights: Vec<f64>,
    sectors: HashMap<usize, Sector>,
}

impl SectorCache {
    pub(crate) fn new(reservoirs: &[ReservoirSpec<f64>]) -> Self {
        let gamma: f64 = reservoirs.iter().map(|r| r.gamma).sum();
        Self { weights: reservoirs.iter().map(|r| (r.gamma / gamma).sqrt()).collect(), sectors: HashMap::new() }
    }

    fn sector(&mut self, total: usize) -> &Sector {
        let weights = &self.weights;
        self.sectors.entry(total).or_insert_with(|| Sector::new(total, weights))
    }
}

fn coupling_check(reservoirs: &[ReservoirSpec<f64>], sched: &CouplingSchedule<f64>) -> Result<()> {
    for r in reservoirs {
        r.validate()?;
    }
    let gamma: f64 = reservoirs.iter().map(|r| r.gamma).sum();
    if gamma <= 0.0 {
        return Err(crate::Error::DegenerateBath);
    }
    check_gamma(sched, gamma)
}

/// `exp(−iω₀tN)·exp(−iG̃K)` on the sector with `total` excitations.
pub fn sector_propagator(
    reservoirs: &[ReservoirSpec<f64>],
    sched: &CouplingSchedule<f64>,
    omega0: f64,
    t: f64,
    total: usize,
) -> Result<DMatrix<Complex64>> {
    if reservoirs.is_empty() || reservoirs.len() > MAX_EXPLICIT_BATHS {
        return Err(invalid("oracle reservoirs", "expected one or two explicit reservoirs"));
    }
    coupling_check(reservoirs, sched)?;
    let g = sched.accumulated_phase(t)?;
    let mut cache = SectorCache::new(reservoirs);
    let phase = Complex64::from_polar(1.0, -omega0 * t * total as f64);
    Ok(cache.sector(total).dense(g) * phase)
}

/// Exact evolution of one component; returns amplitudes keyed by reservoir occupations.
fn evolve_component(
    comp: &Component,
    cache: &mut SectorCache,
    mixing_angle: f64,
    omega0: f64,
    t: f64,
) -> Vec<(Occupation, Complex64)> {
    let bath_total: usize = comp.baths.iter().sum();
    let mut out = Vec::new();
    for &(n, amp) in &comp.system {
        let total = n + bath_total;
        let sector = cache.sector(total);
        let mut x = vec![Complex64::new(0.0, 0.0); sector.states.len()];
        x[sector.index[&[n, comp.baths[0], comp.baths[1]]]] = amp;
        let phase = Complex64::from_polar(1.0, -omega0 * t * total as f64);
        for (i, z) in sector.apply(&x, mixing_angle).into_iter().enumerate() {
            if z != Complex64::new(0.0, 0.0) {
                out.push((sector.states[i], z * phase));
            }
        }
    }
    out
}

/// Accumulates `weight·|ψ⟩⟨ψ|` traced over the reservoirs.
pub(crate) fn accumulate_reduced(
    rho: &mut DMatrix<Complex64>,
    bath_means: &mut [f64],
    weight: f64,
    amplitudes: &[(Occupation, Complex64)],
) {
    let mut by_bath: HashMap<[usize; MAX_EXPLICIT_BATHS], Vec<(usize, Complex64)>> = HashMap::new();
    for (s, z) in amplitudes {
        by_bath.entry([s[1], s[2]]).or_default().push((s[0], *z));
        let p = weight * z.norm_sqr();
        for (k, m) in bath_means.iter_mut().enumerate() {
            *m += p * s[k + 1] as f64;
        }
    }
    let mut keys: Vec<_> = by_bath.keys().copied().collect();
    keys.sort_unstable();
    for key in keys {
        let col = &by_bath[&key];
        for &(n, a) in col {
            for &(m, b) in col {
                rho[(n, m)] += a * b.conj() * weight;
            }
        }
    }
}

/// Reduced mode state after exact evolution of the mode and explicit reservoirs.
///
/// The truncated initial state is evolved in complete excitation-number
/// sectors, so the only approximation is the discarded initial weight.
pub fn bosonic_oracle(
    init: &ModeInitialState<f64>,
    reservoirs: &[ReservoirSpec<f64>],
    sched: &CouplingSchedule<f64>,
    omega0: f64,
    t: f64,
    trunc: &TruncationConfig,
) -> Result<OracleState> {
    let decomposition = decompose(init, reservoirs, trunc)?;
    coupling_check(reservoirs, sched)?;
    let g = sched.accumulated_phase(t)?;
    let mut cache = SectorCache::new(reservoirs);
    let max_total = decomposition
        .components
        .iter()
        .map(|c| c.system.iter().map(|(n, _)| n).max().copied().unwrap_or(0) + c.baths.iter().sum::<usize>())
        .max()
        .unwrap_or(0);
    let mut rho = DMatrix::zeros(max_total + 1, max_total + 1);
    let mut bath_means = vec![0.0; reservoirs.len()];
    for comp in &decomposition.components {
        let amps = evolve_component(comp, &mut cache, g, omega0, t);
        accumulate_reduced(&mut rho, &mut bath_means, comp.weight, &amps);
    }
    Ok(OracleState {
        rho,
        bath_mean_numbers: bath_means,
        discarded_weight: decomposition.discarded,
        fock_cutoff: trunc.fock_cutoff,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bath::effective_bath;
    use crate::mode_dynamics::mean_excitation;

    #[test]
    fn sector_unitarity() {
        let res = [ReservoirSpec::with_nbar(0.7, 0.0), ReservoirSpec::with_nbar(1.6, 0.0)];
        let s = CouplingSchedule::exponential(2.3).unwrap();
        for total in [0, 1, 5, 12] {
            let u = sector_propagator(&res, &s, 1.1, 0.8, total).unwrap();
            let p = u.adjoint() * &u;
            let defect = (p - DMatrix::identity(u.nrows(), u.ncols())).iter().map(|z| z.norm()).fold(0.0, f64::max);
            assert!(defect < 1e-12, "{defect}");
        }
    }

    #[test]
    fn initial_state_is_returned_at_zero() {
        let res = [ReservoirSpec::with_nbar(1.0, 0.0)];
        let s = CouplingSchedule::exponential(1.0).unwrap();
        let a0 = Complex64::new(1.0, 0.5);
        let o = bosonic_oracle(&ModeInitialState::Coherent(a0), &res, &s, 1.0, 0.0, &TruncationConfig::default()).unwrap();
        let amps = super::super::fock::coherent_amplitudes(a0, 30);
        let norm: f64 = amps.iter().map(|z| z.norm_sqr()).sum();
        for n in 0..31 {
            for m in 0..31 {
                assert!((o.rho[(n, m)] - amps[n] * amps[m].conj() / norm).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn fock_discharge_is_binomial() {
        let res = [ReservoirSpec::with_nbar(1.0, 0.0)];
        let s = CouplingSchedule::exponential(1.0).unwrap();
        let t = 0.6f64;
        let o = bosonic_oracle(&ModeInitialState::Fock(3), &res, &s, 1.3, t, &TruncationConfig::with_cutoff(20)).unwrap();
        let c2 = (-t).exp();
        for n in 0..=3 {
            let want = crate::special::binomial::<f64>(3, n) * c2.powi(n as i32) * (1.0 - c2).powi(3 - n as i32);
            assert!((o.population(n) - want).abs() < 1e-13);
        }
        assert!((o.bath_mean_numbers[0] - 3.0 * (1.0 - c2)).abs() < 1e-12);
        assert!(o.max_off_diagonal() < 1e-15);
    }

    #[test]
    fn two_baths_match_effective_mean_number() {
        let res = [ReservoirSpec::with_nbar(0.8, 0.1), ReservoirSpec::with_nbar(0.4, 0.3)];
        let eff = effective_bath(&res).unwrap();
        let s = CouplingSchedule::exponential(eff.gamma).unwrap();
        let init = ModeInitialState::Fock(2);
        let o = bosonic_oracle(&init, &res, &s, 1.0, 1.1, &TruncationConfig::with_cutoff(20)).unwrap();
        let want = mean_excitation(1.1, &init, &eff, &s).unwrap();
        assert!((o.mean_number() - want).abs() < 1e-10);
        assert!((o.trace() - 1.0).abs() < 1e-12);
    }
}
