//! Two-level system coupled to two two-level reservoirs.
//!
//! The total Hamiltonian conserves the number of excitations, so the
//! evolution `W(t)` splits into two phases on `|+++⟩`, `|−−−⟩` and two 3×3
//! unitaries: `N` on the one-hole sector `(++−, +−+, −++)` and `M` on the
//! one-excitation sector `(+−−, −+−, −−+)`.

mod propagator;
mod state;

pub use propagator::{BlockPropagator, FullPropagator, TlsModel, TlsStationary, HOLE_SECTOR, PARTICLE_SECTOR};
pub use state::{basis_index, reduce_system, trace_distance, TlsBathSpec, TlsDensity, TotalDensity};
