//! Spectral scans built on the closed-form amplitudes.
//!
//! Grid evaluations are independent and run data-parallel; results are
//! always returned in grid order.

mod grid;
mod refine;
mod special;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::params::{AtomParams, ChiralCoupling, GeometryPhase};
use crate::scattering::amplitudes;

pub use grid::{Axis, SweepGrid};
pub use refine::{count_local_minima, local_minimum_indices, refine_minimum};
pub use special::{
    dip_separation, find_special_points, special_tau_in_window, special_tau_solutions, PointKind,
    SpecialPoint, SpecialPointScan, SpecialTau, TauSign, DEFAULT_SPECIAL_TOL, DIP_THRESHOLD,
    MIN_SCAN_NODES,
};

/// One row of a transmission spectrum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumRow {
    pub delta: f64,
    pub t: Complex64,
    pub r: Complex64,
    pub big_t: f64,
    pub big_r: f64,
    pub decoupled: bool,
}

/// One node of a detuning × drive-strength scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeatmapCell {
    pub delta: f64,
    pub omega: f64,
    pub big_t: f64,
}

/// Evaluates the amplitudes on every detuning node of `grid`, in increasing
/// detuning order.
pub fn sweep_spectrum(
    coupling: &ChiralCoupling,
    atom: &AtomParams,
    geom: &GeometryPhase,
    grid: &SweepGrid,
) -> Result<Vec<SpectrumRow>> {
    let axis = grid.delta;
    (0..axis.steps)
        .into_par_iter()
        .map(|i| {
            let delta = axis.node(i);
            let a = amplitudes(coupling, atom, geom, delta).map_err(|e| Error::at_node(i, e))?;
            Ok(SpectrumRow {
                delta,
                t: a.t,
                r: a.r,
                big_t: a.big_t,
                big_r: a.big_r,
                decoupled: a.decoupled,
            })
        })
        .collect()
}

/// Transmission on the product of the drive-strength and detuning axes.
///
/// Cells are row-major with the drive strength as the outer (slow) index:
/// cell `j * delta_steps + i` holds `(delta_i, omega_j)`.
pub fn heatmap_delta_omega(
    coupling: &ChiralCoupling,
    atom_base: &AtomParams,
    geom: &GeometryPhase,
    grid: &SweepGrid,
) -> Result<Vec<HeatmapCell>> {
    let omega_axis = grid
        .omega
        .ok_or_else(|| Error::InvalidGrid("heatmap needs a drive-strength axis".into()))?;
    let delta_axis = grid.delta;
    let n_delta = delta_axis.steps;
    (0..omega_axis.steps * n_delta)
        .into_par_iter()
        .map(|k| {
            let (j, i) = (k / n_delta, k % n_delta);
            let delta = delta_axis.node(i);
            let omega = omega_axis.node(j);
            let atom = atom_base
                .with_drive(omega)
                .map_err(|e| Error::at_node(k, e))?;
            let a = amplitudes(coupling, &atom, geom, delta).map_err(|e| Error::at_node(k, e))?;
            Ok(HeatmapCell {
                delta,
                omega,
                big_t: a.big_t,
            })
        })
        .collect()
}

/// `max |T(Δ) - T(-Δ)|` over the nodes of a grid symmetric about zero.
pub fn symmetry_defect(
    coupling: &ChiralCoupling,
    atom: &AtomParams,
    geom: &GeometryPhase,
    grid: &SweepGrid,
) -> Result<f64> {
    let axis = grid.delta;
    if !axis.is_symmetric() {
        return Err(Error::InvalidGrid(format!(
            "symmetry check needs a grid symmetric about 0, got [{}, {}]",
            axis.min, axis.max
        )));
    }
    let defects: Result<Vec<f64>> = (0..axis.steps)
        .into_par_iter()
        .map(|i| {
            let delta = axis.node(i);
            let plus = amplitudes(coupling, atom, geom, delta).map_err(|e| Error::at_node(i, e))?;
            let minus =
                amplitudes(coupling, atom, geom, -delta).map_err(|e| Error::at_node(i, e))?;
            Ok((plus.big_t - minus.big_t).abs())
        })
        .collect();
    Ok(defects?.into_iter().fold(0.0, f64::max))
}

/// Number of local minima of `T` along a computed spectrum.
pub fn spectrum_minima(rows: &[SpectrumRow]) -> usize {
    let values: Vec<f64> = rows.iter().map(|r| r.big_t).collect();
    count_local_minima(&values)
}
