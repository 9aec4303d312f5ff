//! Validated parameter types.
//!
//! Every constructor checks its invariants, so downstream code can assume
//! finite, non-negative rates and a normalized phase.

use std::f64::consts::TAU;

use crate::error::{Error, Result};

/// Low-order part of 2π, so that `TAU + TAU_LO` carries ~32 significant digits.
const TAU_LO: f64 = 2.449_293_598_294_706_4e-16;

/// Left/right decay rates at the two coupling points.
///
/// The rates relate to the real coupling amplitudes by `gamma = g² / 2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChiralCoupling {
    pub gamma_l1: f64,
    pub gamma_r1: f64,
    pub gamma_l2: f64,
    pub gamma_r2: f64,
}

impl ChiralCoupling {
    pub fn new(gamma_l1: f64, gamma_r1: f64, gamma_l2: f64, gamma_r2: f64) -> Result<Self> {
        for (name, value) in [
            ("gamma_l1", gamma_l1),
            ("gamma_r1", gamma_r1),
            ("gamma_l2", gamma_l2),
            ("gamma_r2", gamma_r2),
        ] {
            if !value.is_finite() {
                return Err(Error::InvalidInput(format!(
                    "{name} must be finite, got {value}"
                )));
            }
            if value < 0.0 {
                return Err(Error::InvalidInput(format!(
                    "{name}: rate must be ≥ 0, got {value}"
                )));
            }
        }
        Ok(Self {
            gamma_l1,
            gamma_r1,
            gamma_l2,
            gamma_r2,
        })
    }

    /// Builds the coupling from real amplitudes `g`, using `gamma = g² / 2`.
    pub fn from_amplitudes(g_l1: f64, g_r1: f64, g_l2: f64, g_r2: f64) -> Result<Self> {
        Self::new(
            0.5 * g_l1 * g_l1,
            0.5 * g_r1 * g_r1,
            0.5 * g_l2 * g_l2,
            0.5 * g_r2 * g_r2,
        )
    }

    /// No coupling at all; the atom is invisible to the waveguide.
    pub fn zero() -> Self {
        Self {
            gamma_l1: 0.0,
            gamma_r1: 0.0,
            gamma_l2: 0.0,
            gamma_r2: 0.0,
        }
    }

    /// Coupling amplitudes `(g_l1, g_r1, g_l2, g_r2)` with `g = sqrt(2 gamma)`.
    pub fn amplitudes(&self) -> [f64; 4] {
        [
            g_from_gamma(self.gamma_l1),
            g_from_gamma(self.gamma_r1),
            g_from_gamma(self.gamma_l2),
            g_from_gamma(self.gamma_r2),
        ]
    }

    /// Decay rate of coupling point `j` (1 or 2): `gamma_Lj + gamma_Rj`.
    pub fn point_rate(&self, j: usize) -> f64 {
        match j {
            1 => self.gamma_l1 + self.gamma_r1,
            2 => self.gamma_l2 + self.gamma_r2,
            _ => panic!("coupling point index must be 1 or 2, got {j}"),
        }
    }

    /// Total decay rate summed over both points and both directions.
    pub fn total_rate(&self) -> f64 {
        self.gamma_l1 + self.gamma_r1 + self.gamma_l2 + self.gamma_r2
    }

    /// Swaps the roles of left- and right-moving channels at both points.
    pub fn mirrored(&self) -> Self {
        Self {
            gamma_l1: self.gamma_r1,
            gamma_r1: self.gamma_l1,
            gamma_l2: self.gamma_r2,
            gamma_r2: self.gamma_l2,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.total_rate() == 0.0
    }
}

/// Coupling amplitude for a decay rate: `g = sqrt(2 gamma)`.
pub fn g_from_gamma(gamma: f64) -> f64 {
    (2.0 * gamma).sqrt()
}

/// Level energies and classical drive of the Λ atom.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AtomParams {
    pub omega_e: f64,
    pub omega_s: f64,
    pub omega_drive: f64,
}

impl AtomParams {
    pub fn new(omega_e: f64, omega_s: f64, omega_drive: f64) -> Result<Self> {
        for (name, value) in [
            ("omega_e", omega_e),
            ("omega_s", omega_s),
            ("omega_drive", omega_drive),
        ] {
            if !value.is_finite() {
                return Err(Error::InvalidInput(format!(
                    "{name} must be finite, got {value}"
                )));
            }
        }
        if omega_drive < 0.0 {
            return Err(Error::InvalidInput(format!(
                "omega_drive must be ≥ 0, got {omega_drive}"
            )));
        }
        Ok(Self {
            omega_e,
            omega_s,
            omega_drive,
        })
    }

    /// Two-photon resonant atom, `omega_s = omega_e`.
    pub fn resonant(omega_e: f64, omega_drive: f64) -> Result<Self> {
        Self::new(omega_e, omega_e, omega_drive)
    }

    /// `omega_s - omega_e`.
    pub fn two_photon_offset(&self) -> f64 {
        self.omega_s - self.omega_e
    }

    pub fn with_drive(&self, omega_drive: f64) -> Result<Self> {
        Self::new(self.omega_e, self.omega_s, omega_drive)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThetaMode {
    /// `theta` is an independent input.
    Free,
    /// `theta = omega_e * tau (mod 2π)`.
    DerivedFromOmegaE,
}

/// Propagation delay between the coupling points and the static phase.
///
/// The phase picked up between the points at detuning `delta` is
/// `phi = delta * tau + theta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeometryPhase {
    tau: f64,
    theta: f64,
    mode: ThetaMode,
}

impl GeometryPhase {
    pub fn free(tau: f64, theta: f64) -> Result<Self> {
        check_tau(tau)?;
        if !theta.is_finite() {
            return Err(Error::InvalidInput(format!(
                "theta must be finite, got {theta}"
            )));
        }
        Ok(Self {
            tau,
            theta: normalize_angle(theta),
            mode: ThetaMode::Free,
        })
    }

    /// Markovian limit: no delay, the phase is the static `theta`.
    pub fn markovian(theta: f64) -> Result<Self> {
        Self::free(0.0, theta)
    }

    /// Static phase fixed by the transition frequency: `theta = omega_e * tau mod 2π`.
    ///
    /// The reduction is carried out in compensated arithmetic, so `theta`
    /// is accurate to a few ulps even when `omega_e * tau` spans thousands
    /// of periods.
    pub fn derived(tau: f64, omega_e: f64) -> Result<Self> {
        check_tau(tau)?;
        if !omega_e.is_finite() {
            return Err(Error::InvalidInput(format!(
                "omega_e must be finite, got {omega_e}"
            )));
        }
        Ok(Self {
            tau,
            theta: reduce_product_mod_tau(omega_e, tau),
            mode: ThetaMode::DerivedFromOmegaE,
        })
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn mode(&self) -> ThetaMode {
        self.mode
    }

    pub fn is_markovian(&self) -> bool {
        self.tau == 0.0
    }

    /// Accumulated phase between adjacent coupling points.
    pub fn phase(&self, delta: f64) -> f64 {
        delta.mul_add(self.tau, self.theta)
    }
}

fn check_tau(tau: f64) -> Result<()> {
    if !tau.is_finite() || tau < 0.0 {
        return Err(Error::InvalidInput(format!(
            "tau must be finite and ≥ 0, got {tau}"
        )));
    }
    Ok(())
}

/// Maps an angle onto `[0, 2π)`.
pub fn normalize_angle(angle: f64) -> f64 {
    let reduced = angle.rem_euclid(TAU);
    // rem_euclid can round up to exactly TAU for tiny negative inputs
    if reduced >= TAU {
        0.0
    } else {
        reduced
    }
}

/// `(a * b) mod 2π` using an exact product and a two-word 2π.
fn reduce_product_mod_tau(a: f64, b: f64) -> f64 {
    let hi = a * b;
    let lo = a.mul_add(b, -hi);
    let turns = (hi / TAU).floor();
    let rem = (-turns).mul_add(TAU, hi);
    let rem = (-turns).mul_add(TAU_LO, rem) + lo;
    normalize_angle(rem)
}

/// Detuning of the incident photon from the `|g⟩ ↔ |e⟩` transition.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Detuning(f64);

impl Detuning {
    pub fn new(delta: f64) -> Result<Self> {
        if !delta.is_finite() {
            return Err(Error::InvalidInput(format!(
                "detuning must be finite, got {delta}"
            )));
        }
        Ok(Self(delta))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl From<Detuning> for f64 {
    fn from(d: Detuning) -> f64 {
        d.0
    }
}
