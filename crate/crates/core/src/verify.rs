//! Seeded randomized comparison of the closed form against the oracle.
//!
//! Draws come from a `ChaCha8Rng` seeded with `seed_from_u64(seed)`. Each draw
//! samples, in this order and uniformly:
//!
//! | quantity            | range      |
//! |---------------------|------------|
//! | `gamma_l1`, `gamma_r1`, `gamma_l2`, `gamma_r2` | `[0, 5)` |
//! | `omega_drive`       | `[0, 10)`  |
//! | `tau`               | `[0, 3)`   |
//! | `theta`             | `[0, 2π)`  |
//! | `delta`             | `[-30, 30)`|
//! | `omega_e`           | `[0, 10)`  |
//! | `omega_s - omega_e` | `[-5, 5)`  |

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::oracle::{residual_norm, solve_scattering_linear_system, ScatteringState};
use crate::params::{AtomParams, ChiralCoupling, GeometryPhase};
use crate::scattering::amplitudes;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Draw {
    pub coupling: ChiralCoupling,
    pub atom: AtomParams,
    pub geom: GeometryPhase,
    pub delta: f64,
}

/// Deterministic stream of random parameter draws.
pub fn random_draws(seed: u64, count: usize) -> Result<Vec<Draw>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let coupling = ChiralCoupling::new(
                rng.gen_range(0.0..5.0),
                rng.gen_range(0.0..5.0),
                rng.gen_range(0.0..5.0),
                rng.gen_range(0.0..5.0),
            )?;
            let omega_drive = rng.gen_range(0.0..10.0);
            let tau = rng.gen_range(0.0..3.0);
            let theta = rng.gen_range(0.0..TAU);
            let delta = rng.gen_range(-30.0..30.0);
            let omega_e = rng.gen_range(0.0..10.0);
            let offset = rng.gen_range(-5.0..5.0);
            Ok(Draw {
                coupling,
                atom: AtomParams::new(omega_e, omega_e + offset, omega_drive)?,
                geom: GeometryPhase::free(tau, theta)?,
                delta,
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquivalenceReport {
    pub seed: u64,
    pub draws: usize,
    /// Draws where the oracle system was singular (decoupling points).
    pub singular_draws: usize,
    /// `max |t_closed - t_oracle|`
    pub max_t_deviation: f64,
    /// `max | |r_closed| - |r_oracle| |`
    pub max_r_modulus_deviation: f64,
    /// `max |T + R - 1|` over both routes.
    pub max_unitarity_defect: f64,
    /// Largest residual of the closed-form state in the scattering equations.
    pub max_closed_form_residual: f64,
}

/// Compares closed form and oracle on `count` seeded draws.
pub fn verify_equivalence(seed: u64, count: usize) -> Result<EquivalenceReport> {
    let mut report = EquivalenceReport {
        seed,
        draws: count,
        singular_draws: 0,
        max_t_deviation: 0.0,
        max_r_modulus_deviation: 0.0,
        max_unitarity_defect: 0.0,
        max_closed_form_residual: 0.0,
    };
    for d in random_draws(seed, count)? {
        let closed = amplitudes(&d.coupling, &d.atom, &d.geom, d.delta)?;
        let oracle = solve_scattering_linear_system(&d.coupling, &d.atom, &d.geom, d.delta)?;
        if oracle.decoupled {
            report.singular_draws += 1;
        }
        report.max_t_deviation = report.max_t_deviation.max((closed.t - oracle.t).norm());
        report.max_r_modulus_deviation = report
            .max_r_modulus_deviation
            .max((closed.r.norm() - oracle.r.norm()).abs());
        report.max_unitarity_defect = report
            .max_unitarity_defect
            .max((closed.big_t + closed.big_r - 1.0).abs())
            .max((oracle.big_t() + oracle.big_r() - 1.0).abs());
        let rebuilt =
            ScatteringState::from_amplitudes(&d.coupling, &d.atom, &d.geom, d.delta, &closed);
        report.max_closed_form_residual = report.max_closed_form_residual.max(residual_norm(
            &rebuilt,
            &d.coupling,
            &d.atom,
            &d.geom,
            d.delta,
        ));
    }
    Ok(report)
}
