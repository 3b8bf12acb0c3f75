use crate::error::{Error, Result};
use nalgebra::DMatrix;
use num_complex::Complex64;

/// `⟨n|α⟩` for `n ≤ cutoff`.
pub fn coherent_amplitudes(alpha: Complex64, cutoff: usize) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(cutoff + 1);
    let mut c = Complex64::new((-0.5 * alpha.norm_sqr()).exp(), 0.0);
    out.push(c);
    for n in 1..=cutoff {
        c = c * alpha / (n as f64).sqrt();
        out.push(c);
    }
    out
}

/// Poisson weight beyond `cutoff`, summed directly to avoid cancellation.
pub fn coherent_tail(alpha: Complex64, cutoff: usize) -> f64 {
    let lambda = alpha.norm_sqr();
    if lambda == 0.0 {
        return 0.0;
    }
    if (cutoff as f64) < lambda {
        let head: f64 = coherent_amplitudes(alpha, cutoff).iter().map(|c| c.norm_sqr()).sum();
        return (1.0 - head).max(0.0);
    }
    let mut log_term = -lambda;
    for n in 1..=cutoff + 1 {
        log_term += lambda.ln() - (n as f64).ln();
    }
    let mut term = log_term.exp();
    let mut sum = 0.0;
    let mut n = cutoff + 1;
    while term > sum * 1e-18 && term > 0.0 {
        sum += term;
        n += 1;
        term *= lambda / n as f64;
    }
    sum
}

/// Boltzmann weights `(1−x)xⁿ`, `x = n̄/(1+n̄)`, for `n ≤ cutoff`, with the tail beyond.
pub fn thermal_weights(nbar: f64, cutoff: usize) -> (Vec<f64>, f64) {
    if nbar == 0.0 {
        let mut w = vec![0.0; cutoff + 1];
        w[0] = 1.0;
        return (w, 0.0);
    }
    let x = nbar / (1.0 + nbar);
    let w = (0..=cutoff).map(|n| (1.0 - x) * x.powi(n as i32)).collect();
    (w, x.powi(cutoff as i32 + 1))
}

/// Smallest cutoff for which `tail(cutoff) ≤ tolerance`.
pub(crate) fn required_cutoff(tail: impl Fn(usize) -> f64, tolerance: f64, from: usize) -> usize {
    let mut c = from;
    while tail(c) > tolerance && c < 100_000 {
        c += 1;
    }
    c
}

pub(crate) fn truncation_error(discarded: f64, tolerance: f64, required_cutoff: usize) -> Error {
    Error::Truncation { discarded, tolerance, required_cutoff }
}

/// Matrix elements `⟨k|D(β)|j⟩` for `k, j < dim`, exact for the untruncated operator.
pub fn displacement_matrix(beta: Complex64, dim: usize) -> DMatrix<Complex64> {
    let mut d = DMatrix::zeros(dim, dim);
    if dim == 0 {
        return d;
    }
    let col0 = coherent_amplitudes(beta, dim - 1);
    for (k, c) in col0.iter().enumerate() {
        d[(k, 0)] = *c;
    }
    // D|j⟩ = (a† − β̄) D|j−1⟩ / √j
    for j in 1..dim {
        let sj = (j as f64).sqrt();
        for k in 0..dim {
            let raised = if k > 0 { d[(k - 1, j - 1)] * (k as f64).sqrt() } else { Complex64::new(0.0, 0.0) };
            d[(k, j)] = (raised - beta.conj() * d[(k, j - 1)]) / sj;
        }
    }
    d
}

/// Discarded weight check shared by the oracles.
pub(crate) fn check_discarded(discarded: f64, tolerance: f64, hint: impl FnOnce() -> usize) -> Result<()> {
    if discarded > tolerance {
        Err(truncation_error(discarded, tolerance, hint()))
    } else {
        Ok(())
    }
}
