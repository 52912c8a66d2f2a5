//! Two-point spin correlations and entanglement of the BCS ground state.
//!
//! This crate computes, in fully dimensionless form, the equal-time normal and
//! anomalous correlators of a weak-coupling BCS superconductor, assembles from
//! them the reduced two-spin density matrix of two electrons at separation
//! r — a Werner state — and evaluates its entanglement: the PPT criterion,
//! the concurrence, and the entanglement length, i.e. the separation beyond
//! which the two spins are no longer entangled. That length comes out of
//! order the Fermi wavelength, far below the superconducting coherence
//! length.
//!
//! Units: momenta in k_F, energies in ε_F, separations as x = k_F·r.
//!
//! Module map:
//!
//! * [`model`] — gap profile, dispersion and BCS coherence factors;
//! * [`quadrature`] — adaptive Gauss–Kronrod integration for oscillatory and
//!   sharply peaked integrands;
//! * [`bessel`] — the modified Bessel function K₀ two independent ways;
//! * [`correlators`] — the correlator integrals G, F and their normalized
//!   forms g, f, F̃, plus the two-particle space-spin tensor;
//! * [`entanglement`] — Werner-state construction, PPT, concurrence, and the
//!   entanglement length;
//! * [`sweep`] — grid evaluation and CSV/JSON serialization of sweep tables.

pub mod bessel;
pub mod correlators;
pub mod entanglement;
pub mod error;
pub mod model;
pub mod quadrature;
pub mod sweep;

pub use correlators::CorrelatorSample;
pub use entanglement::{EntanglementLengthReport, SpinDensityMatrix, WernerState};
pub use error::{Error, Result};
pub use model::{Kappa, MaterialParams};
pub use quadrature::QuadratureSettings;
pub use sweep::{CoherenceRow, CoherenceTable, Grid, SweepRow, SweepTable};
