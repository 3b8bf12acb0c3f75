//! Exact dynamics of a bosonic mode, or a two-level system, coupled to several
//! thermal reservoirs through a collision-model interaction.
//!
//! Closed forms are generic over the real scalar type; the root re-exports
//! `f64` aliases for the common case. The [`oracle`] module brute-forces the
//! same quantities in a truncated Fock space for cross-checking.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod bath;
pub mod current;
pub mod error;
pub mod mode_dynamics;
pub mod oracle;
pub mod phase_space;
pub mod quadrature;
pub mod scalar;
pub mod schedules;
pub mod special;
pub mod tls;

pub use bath::{effective_bath, thermal_occupation, EffectiveBath, Occupancy, ReservoirSpec};
pub use current::{quantum_current, stationary_current, CurrentReport};
pub use error::{Error, Result};
pub use mode_dynamics::{LadderCoefficients, ModeInitialState};
pub use phase_space::{DistributionKind, GaussianSummary, PhaseGrid};
pub use scalar::{Cplx, Real};
pub use schedules::{CouplingSchedule, ScheduleKind};
pub use tls::{TlsBathSpec, TlsDensity, TlsModel};

pub type Complex64 = num_complex::Complex64;
pub type Schedule = CouplingSchedule<f64>;
pub type Reservoir = ReservoirSpec<f64>;
pub type Bath = EffectiveBath<f64>;
pub type InitialState = ModeInitialState<f64>;
pub type Grid = PhaseGrid<f64>;
pub type Gaussian = GaussianSummary<f64>;
pub type Current = CurrentReport<f64>;
pub type Tls = TlsModel<f64>;
pub type TlsState = TlsDensity<f64>;
pub type TlsReservoir = TlsBathSpec<f64>;
