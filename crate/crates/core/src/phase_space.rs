//! Quasi-probability distributions of the reduced mode state.
//!
//! For a coherent initial state `|α₀⟩` the reduced state stays Gaussian with
//! center `μα₀` and thermal spread `n̄ sin²G̃`; the Husimi, Wigner and
//! Glauber-Sudarshan functions differ only in the width they add to it
//! (1, 1/2 and 0 respectively). Measure convention: `d²α = d(Re α) d(Im α)`.

use crate::bath::EffectiveBath;
use crate::error::{invalid, Error, Result};
use crate::mode_dynamics::check_gamma;
use crate::quadrature::simpson_2d;
use crate::scalar::{phase, Cplx, Real};
use crate::schedules::CouplingSchedule;
use crate::special::{binomial, scaled_laguerre};

/// Parameters below this are treated as exactly zero by the limit branches.
pub const DEGENERACY_THRESHOLD: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DistributionKind {
    Husimi,
    GlauberP,
    Wigner,
}

impl DistributionKind {
    pub fn name(self) -> &'static str {
        match self {
            Self::Husimi => "husimi",
            Self::GlauberP => "glauber_p",
            Self::Wigner => "wigner",
        }
    }

    /// Width added on top of the thermal spread `n̄ sin²G̃`.
    fn vacuum_width<T: Real>(self) -> T {
        match self {
            Self::Husimi => T::one(),
            Self::GlauberP => T::zero(),
            Self::Wigner => T::half(),
        }
    }
}

/// Operator ordering of a characteristic function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CharacteristicKind {
    Antinormal,
    Normal,
    Wigner,
}

/// Rectangular sampling grid over the complex plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseGrid<T> {
    pub re_min: T,
    pub re_max: T,
    pub im_min: T,
    pub im_max: T,
    pub n_re: usize,
    pub n_im: usize,
}

impl<T: Real> PhaseGrid<T> {
    pub fn new(re: (T, T), im: (T, T), n_re: usize, n_im: usize) -> Result<Self> {
        let g = Self {
            re_min: re.0,
            re_max: re.1,
            im_min: im.0,
            im_max: im.1,
            n_re,
            n_im,
        };
        g.validate()?;
        Ok(g)
    }

    /// Square grid centered on `center` with half-width `6√width`, 257 × 257 points.
    pub fn around(center: Cplx<T>, width: T) -> Self {
        let half = T::lit(6.0) * width.max(T::lit(DEGENERACY_THRESHOLD)).sqrt();
        Self {
            re_min: center.re - half,
            re_max: center.re + half,
            im_min: center.im - half,
            im_max: center.im + half,
            n_re: 257,
            n_im: 257,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.re_max > self.re_min) || !(self.im_max > self.im_min) {
            return Err(invalid("phase grid", "bounds must satisfy max > min"));
        }
        if self.n_re < 2 || self.n_im < 2 {
            return Err(invalid("phase grid", "need at least 2 points per axis"));
        }
        Ok(())
    }

    pub fn re_step(&self) -> T {
        (self.re_max - self.re_min) / T::count(self.n_re - 1)
    }

    pub fn im_step(&self) -> T {
        (self.im_max - self.im_min) / T::count(self.n_im - 1)
    }

    pub fn cell_area(&self) -> T {
        self.re_step() * self.im_step()
    }

    pub fn point(&self, i_re: usize, i_im: usize) -> Cplx<T> {
        Cplx::new(
            self.re_min + T::count(i_re) * self.re_step(),
            self.im_min + T::count(i_im) * self.im_step(),
        )
    }

    /// Points in row-major order (real part outer).
    pub fn points(&self) -> impl Iterator<Item = Cplx<T>> + '_ {
        (0..self.n_re).flat_map(move |i| (0..self.n_im).map(move |j| self.point(i, j)))
    }
}

/// A distribution sampled on a [`PhaseGrid`], row-major with the real part outer.
#[derive(Debug, Clone, PartialEq)]
pub struct DistributionField<T> {
    pub grid: PhaseGrid<T>,
    pub values: Vec<T>,
    pub kind: DistributionKind,
}

impl<T: Real> DistributionField<T> {
    pub fn sample(
        grid: PhaseGrid<T>,
        kind: DistributionKind,
        mut f: impl FnMut(Cplx<T>) -> Result<T>,
    ) -> Result<Self> {
        grid.validate()?;
        let values = grid.points().map(&mut f).collect::<Result<Vec<_>>>()?;
        Ok(Self { grid, values, kind })
    }

    pub fn peak(&self) -> T {
        self.values.iter().fold(T::zero(), |m, v| m.max(v.abs()))
    }
}

/// Result of integrating a field, with a flag raised when the field has not
/// decayed to `1e-8 × peak` on the grid boundary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureEstimate<T> {
    pub value: T,
    pub boundary_max: T,
    pub grid_too_small: bool,
}

/// `∫ |α|^{2m} F(α) d²α` by the tensor-product Simpson rule.
pub fn quadrature_integrate<T: Real>(field: &DistributionField<T>, moment: u32) -> Result<QuadratureEstimate<T>> {
    let g = &field.grid;
    let weighted: Vec<T> = g
        .points()
        .zip(&field.values)
        .map(|(a, &v)| v * a.norm_sqr().powi(moment as i32))
        .collect();
    let value = simpson_2d(&weighted, g.n_re, g.n_im, g.re_step(), g.im_step())?;
    let mut boundary_max = T::zero();
    for i in 0..g.n_re {
        for j in 0..g.n_im {
            if i == 0 || j == 0 || i + 1 == g.n_re || j + 1 == g.n_im {
                boundary_max = boundary_max.max(field.values[i * g.n_im + j].abs());
            }
        }
    }
    Ok(QuadratureEstimate {
        value,
        boundary_max,
        grid_too_small: boundary_max > T::lit(1e-8) * field.peak(),
    })
}

/// Center and width of a Gaussian distribution `exp(−|α−center|²/width)/(π·width)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianSummary<T> {
    pub center: Cplx<T>,
    pub width: T,
    pub kind: DistributionKind,
}

impl<T: Real> GaussianSummary<T> {
    /// Summary for a coherent initial state `|α₀⟩`.
    pub fn coherent(
        kind: DistributionKind,
        t: T,
        alpha0: Cplx<T>,
        eff: &EffectiveBath<T>,
        sched: &CouplingSchedule<T>,
        omega0: T,
    ) -> Result<Self> {
        check_gamma(sched, eff.gamma)?;
        let (c, s) = sched.mixing(t)?;
        Ok(Self {
            center: phase(-omega0 * t) * c * alpha0,
            width: kind.vacuum_width::<T>() + eff.nbar * s * s,
            kind,
        })
    }

    pub fn density(&self, alpha: Cplx<T>) -> T {
        (-(alpha - self.center).norm_sqr() / self.width).exp() / (T::PI() * self.width)
    }

    pub fn default_grid(&self) -> PhaseGrid<T> {
        PhaseGrid::around(self.center, self.width)
    }
}

/// Husimi `Q(α,t) = exp(−|α−μα₀|²/(1+n̄ sin²G̃)) / (π(1+n̄ sin²G̃))`.
pub fn husimi_q<T: Real>(
    alpha: Cplx<T>,
    t: T,
    alpha0: Cplx<T>,
    eff: &EffectiveBath<T>,
    sched: &CouplingSchedule<T>,
    omega0: T,
) -> Result<T> {
    Ok(GaussianSummary::coherent(DistributionKind::Husimi, t, alpha0, eff, sched, omega0)?.density(alpha))
}

/// Location of the Husimi maximum under the exponential schedule: `e^{-iω₀t} e^{-γt/2} α₀`.
pub fn husimi_peak_path<T: Real>(t: T, alpha0: Cplx<T>, gamma: T, omega0: T) -> Cplx<T> {
    phase(-omega0 * t) * (-gamma * t * T::half()).exp() * alpha0
}

/// `C_A`, `C_N` or `C_W` at `λ` for a coherent initial state.
pub fn characteristic_fn<T: Real>(
    lambda: Cplx<T>,
    t: T,
    alpha0: Cplx<T>,
    eff: &EffectiveBath<T>,
    sched: &CouplingSchedule<T>,
    omega0: T,
    kind: CharacteristicKind,
) -> Result<Cplx<T>> {
    let normal = GaussianSummary::coherent(DistributionKind::GlauberP, t, alpha0, eff, sched, omega0)?;
    let spread = normal.width
        + match kind {
            CharacteristicKind::Antinormal => T::one(),
            CharacteristicKind::Normal => T::zero(),
            CharacteristicKind::Wigner => T::half(),
        };
    let center = normal.center;
    // λ μ̄ᾱ₀ − λ̄ μα₀ is purely imaginary
    let shift = lambda * center.conj() - lambda.conj() * center;
    Ok((shift - Cplx::new(spread * lambda.norm_sqr(), T::zero())).exp())
}

/// Glauber-Sudarshan `P(α,t)`, Gaussian with width `σ = n̄ sin²G̃`.
///
/// For `σ` below [`DEGENERACY_THRESHOLD`] the function is a delta at `μα₀`,
/// reported as [`Error::SingularDistribution`].
pub fn glauber_p<T: Real>(
    alpha: Cplx<T>,
    t: T,
    alpha0: Cplx<T>,
    eff: &EffectiveBath<T>,
    sched: &CouplingSchedule<T>,
    omega0: T,
) -> Result<T> {
    let g = GaussianSummary::coherent(DistributionKind::GlauberP, t, alpha0, eff, sched, omega0)?;
    if g.width < T::lit(DEGENERACY_THRESHOLD) {
        return Err(Error::SingularDistribution {
            re: g.center.re.to_f64().unwrap_or(f64::NAN),
            im: g.center.im.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(g.density(alpha))
}

/// Wigner function for a coherent initial state.
pub fn wigner_coherent<T: Real>(
    alpha: Cplx<T>,
    t: T,
    alpha0: Cplx<T>,
    eff: &EffectiveBath<T>,
    sched: &CouplingSchedule<T>,
    omega0: T,
) -> Result<T> {
    Ok(GaussianSummary::coherent(DistributionKind::Wigner, t, alpha0, eff, sched, omega0)?.density(alpha))
}

/// Photon-number distribution `P_n(t)` for a coherent initial state:
/// `σⁿ/(1+σ)^{n+1} · e^{−|δ|²/(1+σ)} · L_n(−|δ|²/(σ(1+σ)))`.
pub fn pn_coherent<T: Real>(
    n: usize,
    t: T,
    alpha0: Cplx<T>,
    eff: &EffectiveBath<T>,
    sched: &CouplingSchedule<T>,
) -> Result<T> {
    check_gamma(sched, eff.gamma)?;
    let (c2, s2) = sched.mixing_sq(t)?;
    let sigma = eff.nbar * s2;
    let delta_sq = c2 * alpha0.norm_sqr();
    if sigma < T::lit(DEGENERACY_THRESHOLD) {
        // Poisson limit, built up multiplicatively to avoid n! overflow
        let mut p = (-delta_sq).exp();
        for k in 1..=n {
            p = p * delta_sq / T::count(k);
        }
        return Ok(p);
    }
    let one_p = T::one() + sigma;
    // σⁿ L_n(−|δ|²/(σ(1+σ))) in the rescaled form
    let poly = scaled_laguerre(n, sigma, -delta_sq / one_p);
    Ok(poly / one_p.powi(n as i32 + 1) * (-delta_sq / one_p).exp())
}

/// Zero-temperature populations for a Fock initial state `|N⟩`:
/// `C(N,n) (cos²G̃)ⁿ (sin²G̃)^{N−n}`.
pub fn pn_fock_zero_temp<T: Real>(n: usize, t: T, big_n: usize, sched: &CouplingSchedule<T>) -> Result<T> {
    if n > big_n {
        return Ok(T::zero());
    }
    let (c2, s2) = sched.mixing_sq(t)?;
    Ok(binomial::<T>(big_n, n) * c2.powi(n as i32) * s2.powi((big_n - n) as i32))
}

/// `(φ, ψ)` with `φ = n̄ sin²G̃ + 1/2` and `ψ = cos²G̃ − n̄ sin²G̃ − 1/2`.
pub fn fock_wigner_params<T: Real>(t: T, eff: &EffectiveBath<T>, sched: &CouplingSchedule<T>) -> Result<(T, T)> {
    check_gamma(sched, eff.gamma)?;
    let (c2, s2) = sched.mixing_sq(t)?;
    let phi = eff.nbar * s2 + T::half();
    Ok((phi, c2 - eff.nbar * s2 - T::half()))
}

/// Wigner function for a Fock initial state `|N⟩`:
/// `(−1)ᴺ/π · ψᴺ/φ^{N+1} · e^{−|α|²/φ} · L_N((φ+ψ)|α|²/(φψ))`.
pub fn wigner_fock<T: Real>(
    alpha: Cplx<T>,
    t: T,
    big_n: usize,
    eff: &EffectiveBath<T>,
    sched: &CouplingSchedule<T>,
) -> Result<T> {
    let (phi, psi) = fock_wigner_params(t, eff, sched)?;
    let r2 = alpha.norm_sqr();
    let c = (phi + psi) * r2 / phi;
    // ψᴺ L_N(c/ψ); at ψ = 0 only the top Laguerre coefficient survives
    let poly = if psi.abs() < T::lit(DEGENERACY_THRESHOLD) {
        scaled_laguerre(big_n, T::zero(), c)
    } else {
        scaled_laguerre(big_n, psi, c)
    };
    let sign = if big_n.is_multiple_of(2) { T::one() } else { -T::one() };
    Ok(sign / T::PI() * poly / phi.powi(big_n as i32 + 1) * (-r2 / phi).exp())
}

/// `⟨â â†⟩ = 1 + |α₀|² cos²G̃ + n̄ sin²G̃`.
pub fn antinormal_second_moment<T: Real>(
    t: T,
    alpha0: Cplx<T>,
    eff: &EffectiveBath<T>,
    sched: &CouplingSchedule<T>,
) -> Result<T> {
    check_gamma(sched, eff.gamma)?;
    let (c2, s2) = sched.mixing_sq(t)?;
    Ok(T::one() + alpha0.norm_sqr() * c2 + eff.nbar * s2)
}
