//! Perfect-transmission, perfect-reflection and decoupling points, and the
//! propagation times that place decoupling on the dressed resonances.

use std::f64::consts::PI;
use std::ops::RangeInclusive;

use rayon::prelude::*;

use super::grid::Axis;
use super::refine::{local_minimum_indices, refine_minimum};
use crate::error::{Error, Result};
use crate::params::{AtomParams, ChiralCoupling, GeometryPhase};
use crate::scattering::{amplitudes, cleared_form, ScatteringAmplitudes};

/// Nodes in the pre-scan that brackets candidate points.
pub const MIN_SCAN_NODES: usize = 10_001;

pub const DEFAULT_SPECIAL_TOL: f64 = 1e-9;

/// A local minimum of `T` counts as a dip only below this value.
pub const DIP_THRESHOLD: f64 = 0.5;

/// Relative resolution at which refined points are deduplicated.
const DEDUP_RESOLUTION: f64 = 1e-10;

/// Refinement keeps going down to this fraction of the scanned span, well
/// below the deduplication resolution, so that 0/0 points land inside the
/// tolerance band of the decoupling test.
const REFINE_FLOOR: f64 = 1e-15;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PointKind {
    /// `|T - 1| < tol`.
    PerfectTransmission,
    /// `T < tol`.
    PerfectReflection,
    /// Removable 0/0 point of the closed form; the atom decouples.
    Decoupling,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpecialPoint {
    pub delta: f64,
    pub kind: PointKind,
    /// Transmission probability at `delta`.
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpecialPointScan {
    pub points: Vec<SpecialPoint>,
    /// Every scan node already satisfies the criterion, so no isolated
    /// points are reported.
    pub everywhere: bool,
    /// Points closer than this are merged.
    pub resolution: f64,
}

/// Finds isolated points of the requested kind in `range`.
///
/// A dense pre-scan brackets the discrete minima of an objective that has a
/// simple (V-shaped) zero at the sought point: `|t|` for reflection, `|r|`
/// for transmission and the cleared denominator for decoupling. Each bracket
/// is refined by bisection on the local slope and accepted only if the
/// refined point meets the criterion at `tol`. Decoupling additionally
/// requires the 0/0 flag from [`amplitudes`].
pub fn find_special_points(
    coupling: &ChiralCoupling,
    atom: &AtomParams,
    geom: &GeometryPhase,
    range: (f64, f64),
    kind: PointKind,
    tol: f64,
) -> Result<SpecialPointScan> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "tolerance must be > 0, got {tol}"
        )));
    }
    let axis = Axis::new(range.0, range.1, MIN_SCAN_NODES)?;
    let resolution = DEDUP_RESOLUTION * axis.span();

    let objective = |delta: f64| -> Result<(f64, ScatteringAmplitudes)> {
        let amps = amplitudes(coupling, atom, geom, delta)?;
        let value = match kind {
            PointKind::PerfectReflection => amps.t.norm(),
            PointKind::PerfectTransmission => amps.r.norm(),
            PointKind::Decoupling => cleared_form(coupling, atom, geom, delta).denominator.norm(),
        };
        Ok((value, amps))
    };
    let accepts = |amps: &ScatteringAmplitudes| match kind {
        PointKind::PerfectReflection => amps.big_t < tol,
        PointKind::PerfectTransmission => (amps.big_t - 1.0).abs() < tol,
        PointKind::Decoupling => amps.decoupled,
    };

    let scan: Vec<(f64, ScatteringAmplitudes)> = (0..axis.steps)
        .into_par_iter()
        .map(|i| objective(axis.node(i)).map_err(|e| Error::at_node(i, e)))
        .collect::<Result<_>>()?;

    if kind != PointKind::Decoupling && scan.iter().all(|(_, a)| accepts(a)) {
        return Ok(SpecialPointScan {
            points: Vec::new(),
            everywhere: true,
            resolution,
        });
    }

    let values: Vec<f64> = scan.iter().map(|(v, _)| *v).collect();
    let mut candidates = local_minimum_indices(&values);
    candidates.extend(
        scan.iter()
            .enumerate()
            .filter(|(_, (v, a))| *v == 0.0 || (kind == PointKind::Decoupling && a.decoupled))
            .map(|(i, _)| i),
    );
    candidates.sort_unstable();
    candidates.dedup();

    let floor = REFINE_FLOOR * axis.span();
    let mut found: Vec<(f64, SpecialPoint)> = Vec::new();
    for i in candidates {
        let lo = axis.node(i.saturating_sub(1));
        let hi = axis.node((i + 1).min(axis.steps - 1));
        let refined = refine_minimum(
            |x| objective(x).map(|(v, _)| v).unwrap_or(f64::INFINITY),
            lo,
            hi,
            floor,
        );
        let (value, amps) = objective(refined)?;
        let (delta, value, amps) = if accepts(&amps) {
            (refined, value, amps)
        } else if accepts(&scan[i].1) {
            (axis.node(i), scan[i].0, scan[i].1)
        } else {
            continue;
        };
        found.push((
            value,
            SpecialPoint {
                delta,
                kind,
                value: amps.big_t,
            },
        ));
    }

    found.sort_by(|a, b| a.1.delta.total_cmp(&b.1.delta));
    let mut points: Vec<(f64, SpecialPoint)> = Vec::with_capacity(found.len());
    for (value, point) in found {
        match points.last_mut() {
            Some(last) if (point.delta - last.1.delta).abs() <= resolution => {
                if value < last.0 {
                    *last = (value, point);
                }
            }
            _ => points.push((value, point)),
        }
    }
    Ok(SpecialPointScan {
        points: points.into_iter().map(|(_, p)| p).collect(),
        everywhere: false,
        resolution,
    })
}

/// Separation between the two transmission dips in `range`.
///
/// A dip is a local minimum of `T` below [`DIP_THRESHOLD`]. Anything other
/// than exactly two dips is a [`Error::CountMismatch`].
pub fn dip_separation(
    coupling: &ChiralCoupling,
    atom: &AtomParams,
    geom: &GeometryPhase,
    range: (f64, f64),
) -> Result<f64> {
    let axis = Axis::new(range.0, range.1, MIN_SCAN_NODES)?;
    let modulus = |delta: f64| amplitudes(coupling, atom, geom, delta).map(|a| a.t.norm());
    let values: Vec<f64> = (0..axis.steps)
        .into_par_iter()
        .map(|i| modulus(axis.node(i)).map_err(|e| Error::at_node(i, e)))
        .collect::<Result<_>>()?;

    let floor = REFINE_FLOOR * axis.span();
    let mut dips: Vec<f64> = Vec::new();
    for i in local_minimum_indices(&values) {
        let x = refine_minimum(
            |x| modulus(x).unwrap_or(f64::INFINITY),
            axis.node(i - 1),
            axis.node(i + 1),
            floor,
        );
        let t = modulus(x)?;
        if t * t < DIP_THRESHOLD
            && dips
                .last()
                .is_none_or(|&last| (x - last).abs() > DEDUP_RESOLUTION * axis.span())
        {
            dips.push(x);
        }
    }
    match dips.as_slice() {
        [a, b] => Ok((b - a).abs()),
        _ => Err(Error::CountMismatch { found: dips.len() }),
    }
}

/// Which dressed resonance, `Δ = +Ω` or `Δ = -Ω`, meets the phase condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TauSign {
    Plus,
    Minus,
}

impl TauSign {
    fn signum(self) -> f64 {
        match self {
            TauSign::Plus => 1.0,
            TauSign::Minus => -1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpecialTau {
    pub sign: TauSign,
    /// The odd integer `2n + 1`.
    pub odd_multiple: i64,
    pub tau: f64,
}

fn resonance_rate(omega_e: f64, omega_drive: f64, sign: TauSign) -> Result<f64> {
    if !(omega_e.is_finite() && omega_drive.is_finite()) || omega_drive < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "need finite omega_e and omega_drive ≥ 0, got {omega_e}, {omega_drive}"
        )));
    }
    let rate = omega_e + sign.signum() * omega_drive;
    if rate <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "omega_e {} omega_drive must be > 0, got {rate}",
            if sign == TauSign::Plus { "+" } else { "-" }
        )));
    }
    Ok(rate)
}

/// Propagation times `tau = (2n+1)π / (omega_e ± omega_drive)` for `n` in
/// `n_range`, with `theta = omega_e * tau`.
///
/// At these times the total phase `(Δ + omega_e) tau` at `Δ = ±omega_drive`
/// is an odd multiple of π. Negative times are skipped.
pub fn special_tau_solutions(
    omega_e: f64,
    omega_drive: f64,
    sign: TauSign,
    n_range: RangeInclusive<i64>,
) -> Result<Vec<SpecialTau>> {
    let rate = resonance_rate(omega_e, omega_drive, sign)?;
    Ok(n_range
        .map(|n| 2 * n + 1)
        .filter(|&odd| odd > 0)
        .map(|odd| SpecialTau {
            sign,
            odd_multiple: odd,
            tau: odd as f64 * PI / rate,
        })
        .collect())
}

/// All special propagation times in `[tau_min, tau_max]`.
pub fn special_tau_in_window(
    omega_e: f64,
    omega_drive: f64,
    sign: TauSign,
    tau_min: f64,
    tau_max: f64,
) -> Result<Vec<SpecialTau>> {
    if !(tau_min.is_finite() && tau_max.is_finite()) || tau_min < 0.0 || tau_min > tau_max {
        return Err(Error::InvalidParameter(format!(
            "need 0 ≤ tau_min ≤ tau_max, got [{tau_min}, {tau_max}]"
        )));
    }
    let rate = resonance_rate(omega_e, omega_drive, sign)?;
    // one extra n on each side absorbs rounding in the bounds
    let n_lo = ((tau_min * rate / PI - 1.0) / 2.0).floor() as i64 - 1;
    let n_hi = ((tau_max * rate / PI - 1.0) / 2.0).ceil() as i64 + 1;
    Ok(
        special_tau_solutions(omega_e, omega_drive, sign, n_lo.max(0)..=n_hi)?
            .into_iter()
            .filter(|s| s.tau >= tau_min && s.tau <= tau_max)
            .collect(),
    )
}
