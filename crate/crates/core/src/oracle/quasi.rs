use super::fock::{coherent_amplitudes, displacement_matrix};
use crate::error::{invalid, Result};
use crate::phase_space::DistributionKind;
use nalgebra::DMatrix;
use num_complex::Complex64;
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuasiValue {
    pub value: f64,
    /// Set when `|α|²` exceeds a quarter of the Fock cutoff.
    pub validity_warning: bool,
}

/// `Q(α) = ⟨α|ρ|α⟩/π` or `W(α) = (2/π) tr[ρ D(2α) Π]` from a Fock-basis density matrix.
pub fn quasi_distribution_from_oracle(
    rho: &DMatrix<Complex64>,
    alpha: Complex64,
    kind: DistributionKind,
) -> Result<QuasiValue> {
    let dim = rho.nrows();
    if dim == 0 || rho.ncols() != dim {
        return Err(invalid("density matrix", "must be square and non-empty"));
    }
    let validity_warning = alpha.norm_sqr() > (dim - 1) as f64 / 4.0;
    let value = match kind {
        DistributionKind::Husimi => {
            let c = coherent_amplitudes(alpha, dim - 1);
            let mut acc = Complex64::new(0.0, 0.0);
            for n in 0..dim {
                for m in 0..dim {
                    acc += c[n].conj() * rho[(n, m)] * c[m];
                }
            }
            acc.re / PI
        }
        DistributionKind::Wigner => {
            let d = displacement_matrix(alpha * 2.0, dim);
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..dim {
                let parity = if j % 2 == 0 { 1.0 } else { -1.0 };
                for k in 0..dim {
                    acc += rho[(j, k)] * d[(k, j)] * parity;
                }
            }
            2.0 * acc.re / PI
        }
        DistributionKind::GlauberP => {
            return Err(invalid("distribution kind", "the P function is not computable from a truncated density matrix"))
        }
    };
    Ok(QuasiValue { value, validity_warning })
}
