use crate::bath::two_level_population;
use crate::error::{invalid, Result};
use crate::scalar::{Cplx, Real};

pub(crate) type Mat<T, const D: usize> = [[Cplx<T>; D]; D];

pub(crate) fn zero_mat<T: Real, const D: usize>() -> Mat<T, D> {
    [[Cplx::new(T::zero(), T::zero()); D]; D]
}

pub(crate) fn identity<T: Real, const D: usize>() -> Mat<T, D> {
    let mut m = zero_mat();
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Cplx::new(T::one(), T::zero());
    }
    m
}

pub(crate) fn matmul<T: Real, const D: usize>(a: &Mat<T, D>, b: &Mat<T, D>) -> Mat<T, D> {
    let mut out = zero_mat();
    for i in 0..D {
        for k in 0..D {
            let aik = a[i][k];
            for j in 0..D {
                out[i][j] = out[i][j] + aik * b[k][j];
            }
        }
    }
    out
}

pub(crate) fn adjoint<T: Real, const D: usize>(a: &Mat<T, D>) -> Mat<T, D> {
    let mut out = zero_mat();
    for i in 0..D {
        for j in 0..D {
            out[j][i] = a[i][j].conj();
        }
    }
    out
}

/// `max |A†A − 1|` over entries.
pub(crate) fn unitarity_defect<T: Real, const D: usize>(a: &Mat<T, D>) -> T {
    let p = matmul(&adjoint(a), a);
    let id = identity::<T, D>();
    let mut worst = T::zero();
    for i in 0..D {
        for j in 0..D {
            worst = worst.max((p[i][j] - id[i][j]).norm());
        }
    }
    worst
}

/// Reduced two-level density matrix `[[a, c̄], [c, b]]` in the `(+, −)` basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TlsDensity<T> {
    /// Excited population `ρ₊₊`.
    pub a: T,
    /// Ground population `ρ₋₋`.
    pub b: T,
    /// Lower-left coherence `ρ₋₊`; the upper-right entry is its conjugate.
    pub c: Cplx<T>,
}

impl<T: Real> TlsDensity<T> {
    /// `[[a, c̄], [c, 1−a]]`, validated.
    pub fn new(a: T, c: Cplx<T>) -> Result<Self> {
        let d = Self { a, b: T::one() - a, c };
        d.validate()?;
        Ok(d)
    }

    pub fn diagonal(a: T) -> Result<Self> {
        Self::new(a, Cplx::new(T::zero(), T::zero()))
    }

    pub fn excited() -> Self {
        Self { a: T::one(), b: T::zero(), c: Cplx::new(T::zero(), T::zero()) }
    }

    pub fn ground() -> Self {
        Self { a: T::zero(), b: T::one(), c: Cplx::new(T::zero(), T::zero()) }
    }

    pub fn validate(&self) -> Result<()> {
        let tol = T::lit(1e-9);
        if !(self.a.is_finite() && self.b.is_finite() && self.c.re.is_finite() && self.c.im.is_finite()) {
            return Err(invalid("two-level state", "entries must be finite"));
        }
        if (self.a + self.b - T::one()).abs() > tol {
            return Err(invalid("two-level state", format!("a + b = {} != 1", self.a + self.b)));
        }
        if self.a < -tol || self.b < -tol {
            return Err(invalid("two-level state", "populations must be non-negative"));
        }
        let bloch = (self.a - self.b).powi(2) + T::lit(4.0) * self.c.norm_sqr();
        if bloch > T::one() + tol {
            return Err(invalid("two-level state", format!("(a-b)^2 + 4|c|^2 = {bloch} > 1")));
        }
        Ok(())
    }

    /// `ρ₊₋`.
    pub fn upper_coherence(&self) -> Cplx<T> {
        self.c.conj()
    }

    pub fn is_diagonal(&self) -> bool {
        self.c.norm() <= T::lit(1e-15)
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> (T, T) {
        let mean = (self.a + self.b) * T::half();
        let r = ((self.a - self.b).powi(2) * T::lit(0.25) + self.c.norm_sqr()).sqrt();
        (mean - r, mean + r)
    }

    pub fn as_matrix(&self) -> Mat<T, 2> {
        [
            [Cplx::new(self.a, T::zero()), self.c.conj()],
            [self.c, Cplx::new(self.b, T::zero())],
        ]
    }
}

/// Thermal state `diag(p, 1−p)` of a two-level reservoir and its coupling weight.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TlsBathSpec<T> {
    pub p: T,
    pub gamma: T,
}

impl<T: Real> TlsBathSpec<T> {
    pub fn new(p: T, gamma: T) -> Result<Self> {
        let b = Self { p, gamma };
        b.validate()?;
        Ok(b)
    }

    /// `p = e^{−θ}/(1+e^{−θ})` with `θ = ω₀/T`.
    pub fn from_theta(theta: T, gamma: T) -> Result<Self> {
        Self::new(two_level_population(theta)?, gamma)
    }

    pub fn q(&self) -> T {
        T::one() - self.p
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.p >= T::zero() && self.p <= T::one()) {
            return Err(invalid("two-level reservoir", format!("p = {} not in [0, 1]", self.p)));
        }
        if !(self.gamma >= T::zero()) || !self.gamma.is_finite() {
            return Err(invalid("two-level reservoir", format!("gamma = {} must be >= 0", self.gamma)));
        }
        Ok(())
    }
}

/// Full 8×8 density matrix in the basis `|i₁ i i₂⟩` (reservoir 1 ⊗ system ⊗
/// reservoir 2), ordered `+++, ++−, +−+, +−−, −++, −+−, −−+, −−−`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TotalDensity<T>(pub Mat<T, 8>);

/// Index of `|i₁ i i₂⟩` with `0 = +`, `1 = −`.
pub const fn basis_index(bath1: usize, system: usize, bath2: usize) -> usize {
    4 * bath1 + 2 * system + bath2
}

impl<T: Real> TotalDensity<T> {
    /// `ρ₁ ⊗ ρ_S ⊗ ρ₂` for diagonal reservoir states.
    pub fn product(system: &TlsDensity<T>, bath1: &TlsBathSpec<T>, bath2: &TlsBathSpec<T>) -> Self {
        let s = system.as_matrix();
        let w1 = [bath1.p, bath1.q()];
        let w2 = [bath2.p, bath2.q()];
        let mut m = zero_mat();
        for i1 in 0..2 {
            for i2 in 0..2 {
                for i in 0..2 {
                    for j in 0..2 {
                        m[basis_index(i1, i, i2)][basis_index(i1, j, i2)] = s[i][j] * (w1[i1] * w2[i2]);
                    }
                }
            }
        }
        Self(m)
    }

    /// `|ψ⟩⟨ψ|`.
    pub fn pure(amplitudes: &[Cplx<T>; 8]) -> Self {
        let mut m = zero_mat();
        for i in 0..8 {
            for j in 0..8 {
                m[i][j] = amplitudes[i] * amplitudes[j].conj();
            }
        }
        Self(m)
    }

    pub fn trace(&self) -> Cplx<T> {
        (0..8).fold(Cplx::new(T::zero(), T::zero()), |acc, i| acc + self.0[i][i])
    }

    pub fn hermiticity_defect(&self) -> T {
        let mut worst = T::zero();
        for i in 0..8 {
            for j in 0..8 {
                worst = worst.max((self.0[i][j] - self.0[j][i].conj()).norm());
            }
        }
        worst
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

/// Partial trace over both reservoirs.
pub fn reduce_system<T: Real>(rho: &TotalDensity<T>) -> TlsDensity<T> {
    let mut s: Mat<T, 2> = zero_mat();
    for i1 in 0..2 {
        for i2 in 0..2 {
            for i in 0..2 {
                for j in 0..2 {
                    s[i][j] = s[i][j] + rho.0[basis_index(i1, i, i2)][basis_index(i1, j, i2)];
                }
            }
        }
    }
    TlsDensity { a: s[0][0].re, b: s[1][1].re, c: s[1][0] }
}

/// `½ tr|ρ₁ − ρ₂|` from the closed-form eigenvalues of a 2×2 Hermitian matrix.
pub fn trace_distance<T: Real>(r1: &TlsDensity<T>, r2: &TlsDensity<T>) -> T {
    let da = r1.a - r2.a;
    let db = r1.b - r2.b;
    let dc = r1.c - r2.c;
    let mean = (da + db) * T::half();
    let r = ((da - db).powi(2) * T::lit(0.25) + dc.norm_sqr()).sqrt();
    ((mean - r).abs() + (mean + r).abs()) * T::half()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64 as C;

    #[test]
    fn validation() {
        assert!(TlsDensity::new(0.5, C::new(0.5, 0.0)).is_ok());
        assert!(TlsDensity::new(0.5, C::new(0.6, 0.0)).is_err());
        assert!(TlsDensity::new(1.2, C::new(0.0, 0.0)).is_err());
        assert!(TlsDensity { a: 0.3, b: 0.3, c: C::new(0.0, 0.0) }.validate().is_err());
        assert!(TlsBathSpec::new(1.1, 1.0).is_err());
        assert!(TlsBathSpec::new(0.5, -1.0).is_err());
        let b = TlsBathSpec::from_theta(0.0, 1.0).unwrap();
        assert_eq!(b.p, 0.5);
    }

    #[test]
    fn product_state_is_normalized_and_reduces_back() {
        let s = TlsDensity::new(0.3, C::new(0.2, 0.1)).unwrap();
        let rho = TotalDensity::product(&s, &TlsBathSpec::new(0.7, 1.0).unwrap(), &TlsBathSpec::new(0.2, 1.0).unwrap());
        assert!((rho.trace() - C::new(1.0, 0.0)).norm() < 1e-15);
        assert!(rho.hermiticity_defect() < 1e-16);
        let r = reduce_system(&rho);
        assert!((r.a - 0.3).abs() < 1e-15 && (r.c - s.c).norm() < 1e-15);
        // entry (0, 2) is p1 p2 c̄
        assert!((rho.0[0][2] - s.c.conj() * 0.7 * 0.2).norm() < 1e-16);
    }

    #[test]
    fn trace_distance_examples() {
        let s = TlsDensity::new(0.3, C::new(0.2, 0.1)).unwrap();
        assert_eq!(trace_distance(&s, &s), 0.0);
        assert_eq!(trace_distance(&TlsDensity::<f64>::excited(), &TlsDensity::ground()), 1.0);
        let plus = TlsDensity::new(0.5f64, C::new(0.5, 0.0)).unwrap();
        let minus = TlsDensity::new(0.5, C::new(-0.5, 0.0)).unwrap();
        assert!((trace_distance(&plus, &minus) - 1.0).abs() < 1e-15);
        let d1 = TlsDensity::diagonal(0.8f64).unwrap();
        let d2 = TlsDensity::diagonal(0.35).unwrap();
        assert!((trace_distance(&d1, &d2) - 0.45).abs() < 1e-15);
    }

    #[test]
    fn eigenvalues_of_pure_state() {
        let plus = TlsDensity::new(0.5, C::new(0.0, 0.5)).unwrap();
        let (lo, hi) = plus.eigenvalues();
        assert!(lo.abs() < 1e-15 && (hi - 1.0).abs() < 1e-15);
    }
}
