use crate::error::{domain, invalid, Result};
use crate::tls::{TlsDensity, TlsModel, TotalDensity};
use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

#[derive(Debug, Clone, PartialEq)]
pub struct TlsOracleOutput {
    /// `exp(−i∫H) ρ(0) exp(i∫H)` by eigendecomposition.
    pub exact: TotalDensity<f64>,
    /// Time-ordered product of per-step exponentials.
    pub stepped: TotalDensity<f64>,
    pub step_count: usize,
}

fn kron3(a: &DMatrix<f64>, b: &DMatrix<f64>, c: &DMatrix<f64>) -> DMatrix<f64> {
    a.kronecker(b).kronecker(c)
}

/// `∫₀ᵗ H dt′` in the basis `|i₁ i i₂⟩` with `|+⟩` first.
pub fn tls_hamiltonian_integral(model: &TlsModel<f64>, t: f64) -> Result<DMatrix<f64>> {
    let id = DMatrix::<f64>::identity(2, 2);
    let sz = DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1.0]);
    let sp = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 0.0, 0.0]);
    let sm = sp.transpose();
    let free = kron3(&sz, &id, &id) + kron3(&id, &sz, &id) + kron3(&id, &id, &sz);
    let x1 = kron3(&sm, &sp, &id) + kron3(&sp, &sm, &id);
    let x2 = kron3(&id, &sp, &sm) + kron3(&id, &sm, &sp);
    // √γ_k ∫g = √(γ_k/γ) G̃
    let g = model.sched.accumulated_phase(t)?;
    let gamma = model.gamma();
    Ok(free * (0.5 * model.omega0 * t)
        + x1 * (g * (model.bath1.gamma / gamma).sqrt())
        + x2 * (g * (model.bath2.gamma / gamma).sqrt()))
}

fn exact_unitary(h: &DMatrix<f64>) -> DMatrix<Complex64> {
    let eig = SymmetricEigen::new(h.clone());
    let v = eig.eigenvectors.map(|x| Complex64::new(x, 0.0));
    let phases = DMatrix::from_diagonal(&eig.eigenvalues.map(|l| Complex64::from_polar(1.0, -l)));
    &v * phases * v.transpose()
}

/// `exp(−iA)` by scaling and a Taylor series.
fn taylor_unitary(a: &DMatrix<f64>) -> DMatrix<Complex64> {
    let norm = a.row_iter().map(|r| r.iter().map(|x| x.abs()).sum::<f64>()).fold(0.0, f64::max);
    let pieces = norm.ceil().max(1.0) as usize;
    let step = a.map(|x| Complex64::new(0.0, -x / pieces as f64));
    let mut e = DMatrix::<Complex64>::identity(8, 8);
    let mut term = DMatrix::<Complex64>::identity(8, 8);
    for k in 1..40 {
        term = &term * &step / Complex64::new(k as f64, 0.0);
        e += &term;
        if term.iter().map(|z| z.norm()).fold(0.0, f64::max) < 1e-18 {
            break;
        }
    }
    let mut out = DMatrix::<Complex64>::identity(8, 8);
    for _ in 0..pieces {
        out = &e * out;
    }
    out
}

fn conjugate(u: &DMatrix<Complex64>, rho: &TotalDensity<f64>) -> TotalDensity<f64> {
    let r = DMatrix::from_fn(8, 8, |i, j| rho.0[i][j]);
    let out = u * r * u.adjoint();
    let mut m = [[Complex64::new(0.0, 0.0); 8]; 8];
    for (i, row) in m.iter_mut().enumerate() {
        for (j, z) in row.iter_mut().enumerate() {
            *z = out[(i, j)];
        }
    }
    TotalDensity(m)
}

/// Brute-force evolution of `ρ₁ ⊗ ρ_S ⊗ ρ₂` under the lab-frame Hamiltonian.
///
/// The Hamiltonian commutes with itself at different times, so
/// `exp(−i∫H)` is exact; the stepped path multiplies `step_count` short-time
/// exponentials as an independent check.
pub fn tls_oracle(model: &TlsModel<f64>, system: &TlsDensity<f64>, t: f64, step_count: usize) -> Result<TlsOracleOutput> {
    if !(t >= 0.0) || !t.is_finite() {
        return Err(domain("time", t));
    }
    if step_count == 0 {
        return Err(invalid("step_count", "must be positive"));
    }
    system.validate()?;
    let rho0 = TotalDensity::product(system, &model.bath1, &model.bath2);
    let exact = exact_unitary(&tls_hamiltonian_integral(model, t)?);
    let dt = t / step_count as f64;
    let mut stepped = DMatrix::<Complex64>::identity(8, 8);
    let mut previous = tls_hamiltonian_integral(model, 0.0)?;
    for j in 0..step_count {
        let t1 = if j + 1 == step_count { t } else { (j + 1) as f64 * dt };
        let next = tls_hamiltonian_integral(model, t1)?;
        stepped = taylor_unitary(&(&next - &previous)) * stepped;
        previous = next;
    }
    Ok(TlsOracleOutput { exact: conjugate(&exact, &rho0), stepped: conjugate(&stepped, &rho0), step_count })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schedules::CouplingSchedule;
    use crate::tls::TlsBathSpec;

    #[test]
    fn generator_blocks_match_layout() {
        let m = TlsModel::new(
            TlsBathSpec::new(0.3, 0.5).unwrap(),
            TlsBathSpec::new(0.6, 1.5).unwrap(),
            1.0,
            CouplingSchedule::exponential(2.0).unwrap(),
        )
        .unwrap();
        let h = tls_hamiltonian_integral(&m, 0.7).unwrap();
        let g = m.sched.accumulated_phase(0.7).unwrap();
        assert!((h[(0, 0)] - 1.5 * 0.7).abs() < 1e-15);
        assert!((h[(7, 7)] + 1.5 * 0.7).abs() < 1e-15);
        // ⟨++−|∫H|+−+⟩ = √(γ₂/γ) G̃
        assert!((h[(1, 2)] - g * (1.5f64 / 2.0).sqrt()).abs() < 1e-15);
        // ⟨+−+|∫H|−++⟩ = √(γ₁/γ) G̃
        assert!((h[(2, 4)] - g * (0.5f64 / 2.0).sqrt()).abs() < 1e-15);
        assert_eq!(h[(1, 4)], 0.0);
    }
}
