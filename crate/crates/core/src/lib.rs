//! Single-photon scattering off a driven Λ-type giant atom that couples
//! chirally to a one-dimensional waveguide at two points.
//!
//! All energies and rates are dimensionless, measured in units of the
//! left decay rate of the first coupling point (`gamma_l1`). The group
//! velocity is set to one, so the propagation time `tau` between the
//! coupling points equals their separation.
//!
//! The crate is split into
//! - [`params`]: validated domain types (couplings, atom levels, geometry),
//! - [`scattering`]: closed-form transmission/reflection amplitudes,
//! - [`regime`]: BEC / BUEC classification of the chiral couplings,
//! - [`oracle`]: an independent solve of the stationary scattering problem
//!   as a dense 6×6 complex linear system,
//! - [`spectral`]: sweeps, heatmaps, special-point search and the special
//!   propagation times that align decoupling with the dressed resonances,
//! - [`verify`]: seeded randomized comparison of the closed form against
//!   the oracle.

pub mod error;
pub mod oracle;
pub mod params;
pub mod regime;
pub mod scattering;
pub mod spectral;
pub mod verify;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use oracle::{residual_norm, solve_scattering_linear_system, ScatteringState};
pub use params::{AtomParams, ChiralCoupling, Detuning, GeometryPhase, ThetaMode};
pub use regime::{classify_coupling, Classification, CouplingRegime, DEFAULT_REGIME_TOL};
pub use scattering::{
    amplitudes, buec_reduced_transmission, markovian_amplitudes, markovianity_ratio,
    resonant_transmission, ScatteringAmplitudes,
};
