//! Laguerre polynomials and binomial coefficients.

use crate::scalar::Real;

/// `L_n(x)` by the ascending three-term recurrence
/// `(k+1) L_{k+1} = (2k+1−x) L_k − k L_{k−1}`.
pub fn laguerre<T: Real>(n: usize, x: T) -> T {
    let mut prev = T::one();
    if n == 0 {
        return prev;
    }
    let mut cur = T::one() - x;
    for k in 1..n {
        let kf = T::count(k);
        let next = ((T::two() * kf + T::one() - x) * cur - kf * prev) / (kf + T::one());
        prev = cur;
        cur = next;
    }
    cur
}

/// `s^n · L_n(c/s)`, continuous through `s = 0` where it equals `(−c)^n/n!`.
///
/// Same recurrence as [`laguerre`] with each level rescaled by `s`, so the
/// large argument `c/s` is never formed.
pub fn scaled_laguerre<T: Real>(n: usize, scale: T, c: T) -> T {
    let mut prev = T::one();
    if n == 0 {
        return prev;
    }
    let mut cur = scale - c;
    for k in 1..n {
        let kf = T::count(k);
        let next = (((T::two() * kf + T::one()) * scale - c) * cur - kf * scale * scale * prev)
            / (kf + T::one());
        prev = cur;
        cur = next;
    }
    cur
}

/// `C(n, k)` as a float; zero for `k > n`.
pub fn binomial<T: Real>(n: usize, k: usize) -> T {
    if k > n {
        return T::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(T::one(), |acc, j| acc * T::count(n - j) / T::count(j + 1))
}
