//! Composite Simpson rules on uniform grids.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Unit-spacing weights for `n ≥ 2` equally spaced samples.
///
/// Odd `n` uses Simpson's 1/3 rule throughout; even `n ≥ 4` closes the last
/// three intervals with the 3/8 rule; `n = 2` degrades to the trapezoid.
pub fn simpson_weights<T: Real>(n: usize) -> Result<Vec<T>> {
    if n < 2 {
        return Err(Error::Quadrature { needed: 2, got: n });
    }
    let mut w = vec![T::zero(); n];
    if n == 2 {
        w[0] = T::half();
        w[1] = T::half();
        return Ok(w);
    }
    let third = T::one() / T::lit(3.0);
    let simpson_end = if n % 2 == 1 { n - 1 } else { n - 4 };
    let mut i = 0;
    while i < simpson_end {
        w[i] = w[i] + third;
        w[i + 1] = w[i + 1] + T::lit(4.0) * third;
        w[i + 2] = w[i + 2] + third;
        i += 2;
    }
    if n.is_multiple_of(2) {
        let e = T::lit(3.0 / 8.0);
        w[n - 4] = w[n - 4] + e;
        w[n - 3] = w[n - 3] + T::lit(3.0) * e;
        w[n - 2] = w[n - 2] + T::lit(3.0) * e;
        w[n - 1] = w[n - 1] + e;
    }
    Ok(w)
}

/// `∫ f` from samples `f(x0 + j·h)`.
pub fn simpson<T: Real>(values: &[T], h: T) -> Result<T> {
    let w = simpson_weights::<T>(values.len())?;
    Ok(values.iter().zip(&w).fold(T::zero(), |acc, (&v, &wj)| acc + v * wj) * h)
}

/// Tensor-product rule for a row-major `n_rows × n_cols` array.
pub fn simpson_2d<T: Real>(values: &[T], n_rows: usize, n_cols: usize, h_row: T, h_col: T) -> Result<T> {
    assert_eq!(values.len(), n_rows * n_cols, "array shape mismatch");
    let wr = simpson_weights::<T>(n_rows)?;
    let wc = simpson_weights::<T>(n_cols)?;
    let mut acc = T::zero();
    for (i, row) in values.chunks(n_cols).enumerate() {
        let inner = row.iter().zip(&wc).fold(T::zero(), |a, (&v, &w)| a + v * w);
        acc = acc + wr[i] * inner;
    }
    Ok(acc * h_row * h_col)
}
