//! Closed-form single-photon transmission and reflection amplitudes.
//!
//! With real coupling amplitudes `g = sqrt(2 gamma)`, phase `phi` between the
//! two coupling points and `e = exp(i phi)`, define
//!
//! ```text
//! P_L = g_l1 + g_l2 e        P_R = g_r1 + g_r2 e
//! C_L = |P_L|² / 2           C_R = |P_R|² / 2
//! K   = sqrt(gamma_l1 gamma_l2) + sqrt(gamma_r1 gamma_r2)
//! X   = delta - Omega² / delta_s - 2 K sin(phi),   delta_s = delta + omega_e - omega_s
//!
//! t = (X + i (C_L - C_R)) / (X + i (C_L + C_R))
//! r = -i P_L P_R / (X + i (C_L + C_R))
//! ```
//!
//! `C_L` and `C_R` equal the double sums `Σ_ij sqrt(gamma_Li gamma_Lj) cos(phi_ij)`
//! and `P_L P_R` equals `Σ_ij 2 sqrt(gamma_Li gamma_Rj) exp(i (i+j-2) phi)`.
//! The factored forms keep full relative precision near the zeros that
//! define decoupling and total reflection.
//!
//! The drive term has a pole at `delta_s = 0`, so both numerators and the
//! denominator are multiplied by `delta_s` whenever `Omega > 0`. With no drive
//! the metastable level is dark and nothing is multiplied.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::params::{AtomParams, ChiralCoupling, GeometryPhase};
use crate::regime::{classify_coupling, CouplingRegime, DEFAULT_REGIME_TOL};

/// Relative size below which a cleared numerator and denominator are both
/// treated as zero (a removable 0/0 point, i.e. decoupling).
pub const DECOUPLING_TOL: f64 = 1e-12;

/// Absolute floor for the cleared denominator of a non-decoupled point.
pub const SINGULAR_DENOMINATOR: f64 = 1e-300;

/// Slack allowed above one for `|t|²` and `|r|²`.
pub const PROBABILITY_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatteringAmplitudes {
    pub t: Complex64,
    pub r: Complex64,
    /// `|t|²`
    pub big_t: f64,
    /// `|r|²`
    pub big_r: f64,
    /// The point is a removable 0/0 singularity, resolved as `t = 1`, `r = 0`.
    pub decoupled: bool,
}

impl ScatteringAmplitudes {
    fn from_parts(t: Complex64, r: Complex64, decoupled: bool) -> Self {
        Self {
            t,
            r,
            big_t: t.norm_sqr(),
            big_r: r.norm_sqr(),
            decoupled,
        }
    }

    fn transparent() -> Self {
        Self::from_parts(Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0), true)
    }
}

/// Denominator-cleared amplitude fractions at one detuning.
///
/// `t = transmission_numerator / denominator` and
/// `r = reflection_numerator / denominator`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClearedForm {
    pub transmission_numerator: Complex64,
    pub reflection_numerator: Complex64,
    pub denominator: Complex64,
    /// Sum of the magnitudes of the terms that enter the denominator.
    pub scale: f64,
}

impl ClearedForm {
    /// Both cleared numerator and denominator vanish relative to `scale`.
    pub fn is_removable_singularity(&self) -> bool {
        let limit = DECOUPLING_TOL * self.scale;
        self.transmission_numerator.norm() <= limit && self.denominator.norm() <= limit
    }
}

/// Evaluates the cleared numerators and denominator at detuning `delta`.
pub fn cleared_form(
    coupling: &ChiralCoupling,
    atom: &AtomParams,
    geom: &GeometryPhase,
    delta: f64,
) -> ClearedForm {
    let [g_l1, g_r1, g_l2, g_r2] = coupling.amplitudes();
    let phi = geom.phase(delta);
    let (sin_phi, cos_phi) = phi.sin_cos();
    let e = Complex64::new(cos_phi, sin_phi);

    let p_l = g_l1 + e * g_l2;
    let p_r = g_r1 + e * g_r2;
    let c_l = 0.5 * p_l.norm_sqr();
    let c_r = 0.5 * p_r.norm_sqr();
    // 2K = g_l1 g_l2 + g_r1 g_r2
    let two_k = g_l1 * g_l2 + g_r1 * g_r2;

    let drive = atom.omega_drive;
    let clearing = if drive == 0.0 {
        1.0
    } else {
        delta + atom.omega_e - atom.omega_s
    };
    let shifted = delta - two_k * sin_phi;
    let real = if drive == 0.0 {
        shifted
    } else {
        shifted * clearing - drive * drive
    };

    let scale = (delta * clearing).abs()
        + drive * drive
        + (coupling.total_rate() + 2.0 * two_k) * clearing.abs();

    ClearedForm {
        transmission_numerator: Complex64::new(real, (c_l - c_r) * clearing),
        reflection_numerator: Complex64::new(0.0, -clearing) * p_l * p_r,
        denominator: Complex64::new(real, (c_l + c_r) * clearing),
        scale,
    }
}

/// Transmission and reflection amplitudes of a photon incident from the left.
///
/// The reflection amplitude is reported with its propagation phases taken
/// from `phi = delta * tau + theta`, so `r` carries `exp(i (i+j-2) phi)` for the
/// `(i, j)` pair of coupling points. Only `|r|` is convention-independent.
pub fn amplitudes(
    coupling: &ChiralCoupling,
    atom: &AtomParams,
    geom: &GeometryPhase,
    delta: impl Into<f64>,
) -> Result<ScatteringAmplitudes> {
    let delta = delta.into();
    if !delta.is_finite() {
        return Err(Error::InvalidInput(format!(
            "detuning must be finite, got {delta}"
        )));
    }
    let form = cleared_form(coupling, atom, geom, delta);
    if form.is_removable_singularity() {
        return Ok(ScatteringAmplitudes::transparent());
    }
    if form.denominator.norm() < SINGULAR_DENOMINATOR {
        return Err(Error::NumericalSingularity(format!(
            "cleared denominator {:e} vanishes at delta = {delta}",
            form.denominator.norm()
        )));
    }
    let t = form.transmission_numerator / form.denominator;
    let r = form.reflection_numerator / form.denominator;
    let out = ScatteringAmplitudes::from_parts(t, r, false);
    if !(out.big_t.is_finite() && out.big_r.is_finite()) {
        return Err(Error::NumericalSingularity(format!(
            "non-finite amplitudes at delta = {delta}"
        )));
    }
    Ok(out)
}

/// Amplitudes in the Markovian limit: the phase is `theta` at every detuning.
pub fn markovian_amplitudes(
    coupling: &ChiralCoupling,
    atom: &AtomParams,
    theta: f64,
    delta: impl Into<f64>,
) -> Result<ScatteringAmplitudes> {
    amplitudes(coupling, atom, &GeometryPhase::markovian(theta)?, delta)
}

/// Transmission probability for a two-photon resonant atom (`omega_s = omega_e`),
/// written directly in terms of the decay rates.
///
/// ```text
///        [Δ - 2K sin φ - Ω²/Δ]² + [γ_L1+γ_L2-γ_R1-γ_R2 + 2(√γ_L1γ_L2 - √γ_R1γ_R2) cos φ]²
/// T = ---------------------------------------------------------------------------------
///        [Δ - 2K sin φ - Ω²/Δ]² + [γ_L1+γ_L2+γ_R1+γ_R2 + 2(√γ_L1γ_L2 + √γ_R1γ_R2) cos φ]²
/// ```
///
/// Every bracket is multiplied by `Δ` when `Ω > 0`, which makes `Δ = 0` regular
/// (`T = 1` there). A 0/0 point returns 1.
pub fn resonant_transmission(
    coupling: &ChiralCoupling,
    atom: &AtomParams,
    geom: &GeometryPhase,
    delta: impl Into<f64>,
) -> Result<f64> {
    let delta = delta.into();
    require_resonance(atom)?;
    if !delta.is_finite() {
        return Err(Error::InvalidInput(format!(
            "detuning must be finite, got {delta}"
        )));
    }
    let c = coupling;
    let k_l = (c.gamma_l1 * c.gamma_l2).sqrt();
    let k_r = (c.gamma_r1 * c.gamma_r2).sqrt();
    let (sin_phi, cos_phi) = geom.phase(delta).sin_cos();
    let drive = atom.omega_drive;

    let clearing = if drive == 0.0 { 1.0 } else { delta };
    let shifted = delta - 2.0 * (k_l + k_r) * sin_phi;
    let real = if drive == 0.0 {
        shifted
    } else {
        shifted * delta - drive * drive
    };
    let diff = (c.gamma_l1 + c.gamma_l2 - c.gamma_r1 - c.gamma_r2 + 2.0 * (k_l - k_r) * cos_phi)
        * clearing;
    let sum = (c.total_rate() + 2.0 * (k_l + k_r) * cos_phi) * clearing;

    let num = real * real + diff * diff;
    let den = real * real + sum * sum;
    let scale = (delta * clearing).abs()
        + drive * drive
        + (c.total_rate() + 4.0 * (k_l + k_r)) * clearing.abs();
    if den.sqrt() <= DECOUPLING_TOL * scale {
        return Ok(1.0);
    }
    Ok(num / den)
}

/// Reduced transmission for BUEC coupling on the total-reflection phase
/// condition `delta * tau + theta = (2n+1)π`:
///
/// ```text
/// T = (Δ - Ω²/Δ)² / [ (Δ - Ω²/Δ)² + ((√γ_L1 - √γ_L2)² + (√γ_R1 - √γ_R2)²)² ]
/// ```
///
/// The phase condition is the caller's responsibility.
pub fn buec_reduced_transmission(
    coupling: &ChiralCoupling,
    atom: &AtomParams,
    delta: impl Into<f64>,
) -> Result<f64> {
    let delta = delta.into();
    let class = classify_coupling(coupling, DEFAULT_REGIME_TOL);
    if class.regime != CouplingRegime::Buec && !class.symmetric {
        return Err(Error::RegimeMismatch {
            expected: CouplingRegime::Buec,
            found: class.regime,
        });
    }
    require_resonance(atom)?;
    if !delta.is_finite() {
        return Err(Error::InvalidInput(format!(
            "detuning must be finite, got {delta}"
        )));
    }
    let c = coupling;
    let width = (c.gamma_l1.sqrt() - c.gamma_l2.sqrt()).powi(2)
        + (c.gamma_r1.sqrt() - c.gamma_r2.sqrt()).powi(2);
    let drive = atom.omega_drive;
    let (real, clearing) = if drive == 0.0 {
        (delta, 1.0)
    } else {
        (delta * delta - drive * drive, delta)
    };
    let imag = width * clearing;
    let den = real * real + imag * imag;
    let scale = (delta * clearing).abs() + drive * drive + width * clearing.abs();
    if den.sqrt() <= DECOUPLING_TOL * scale {
        return Ok(1.0);
    }
    Ok(real * real / den)
}

/// `tau * Γ̃`; small values mean the Markovian limit applies.
pub fn markovianity_ratio(coupling: &ChiralCoupling, geom: &GeometryPhase) -> f64 {
    geom.tau() * coupling.total_rate()
}

fn require_resonance(atom: &AtomParams) -> Result<()> {
    let tol = 1e-12 * atom.omega_e.abs().max(1.0);
    if (atom.omega_s - atom.omega_e).abs() > tol {
        return Err(Error::ResonanceRequired {
            omega_e: atom.omega_e,
            omega_s: atom.omega_s,
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn rates(l1: f64, r1: f64, l2: f64, r2: f64) -> ChiralCoupling {
        ChiralCoupling::new(l1, r1, l2, r2).unwrap()
    }

    /// T written literally with the double sums, no clearing.
    fn literal_t(c: &ChiralCoupling, atom: &AtomParams, phi: f64, delta: f64) -> Complex64 {
        let l = [c.gamma_l1, c.gamma_l2];
        let r = [c.gamma_r1, c.gamma_r2];
        let mut sin_l = 0.0;
        let mut sin_r = 0.0;
        let mut cos_l = 0.0;
        let mut cos_r = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                let p = (i as f64 - j as f64).abs() * phi;
                sin_l += (l[i] * l[j]).sqrt() * p.sin();
                sin_r += (r[i] * r[j]).sqrt() * p.sin();
                cos_l += (l[i] * l[j]).sqrt() * p.cos();
                cos_r += (r[i] * r[j]).sqrt() * p.cos();
            }
        }
        let x = delta
            - atom.omega_drive.powi(2) / (delta + atom.omega_e - atom.omega_s)
            - sin_r
            - sin_l;
        Complex64::new(x, cos_l - cos_r) / Complex64::new(x, cos_l + cos_r)
    }

    #[test]
    fn zero_coupling_is_transparent() {
        let atom = AtomParams::new(0.3, 1.1, 2.0).unwrap();
        let geom = GeometryPhase::free(1.2, 0.4).unwrap();
        for delta in [-5.0, -1.0, 0.0, 0.8, 3.0] {
            let a = amplitudes(&ChiralCoupling::zero(), &atom, &geom, delta).unwrap();
            assert!((a.t - 1.0).norm() < 1e-15);
            assert!(a.r.norm() < 1e-15);
        }
    }

    #[test]
    fn cleared_form_matches_literal_double_sums() {
        let c = rates(1.0, 0.25, 0.6, 1.7);
        let atom = AtomParams::new(0.4, 1.3, 1.5).unwrap();
        let geom = GeometryPhase::free(0.9, 2.1).unwrap();
        for delta in [-7.5, -2.0, 0.3, 1.0, 4.4] {
            let got = amplitudes(&c, &atom, &geom, delta).unwrap().t;
            let want = literal_t(&c, &atom, geom.phase(delta), delta);
            assert!(
                (got - want).norm() < 1e-12,
                "delta {delta}: {got} vs {want}"
            );
        }
    }

    #[test]
    fn reflection_sum_equals_factored_product() {
        let c = rates(0.7, 2.0, 1.4, 0.3);
        let atom = AtomParams::resonant(0.0, 0.0).unwrap();
        let geom = GeometryPhase::free(1.3, 0.2).unwrap();
        let delta = 1.9;
        let phi = geom.phase(delta);
        let l = [c.gamma_l1, c.gamma_l2];
        let r = [c.gamma_r1, c.gamma_r2];
        let mut sum = Complex64::new(0.0, 0.0);
        for i in 0..2 {
            for j in 0..2 {
                let ph = (i + j) as f64 * phi;
                sum += 2.0 * (l[i] * r[j]).sqrt() * Complex64::new(ph.cos(), ph.sin());
            }
        }
        let form = cleared_form(&c, &atom, &geom, delta);
        let r_literal = Complex64::new(0.0, -1.0) * sum / form.denominator;
        let r_got = amplitudes(&c, &atom, &geom, delta).unwrap().r;
        assert!((r_literal - r_got).norm() < 1e-13);
    }

    #[test]
    fn pole_at_metastable_resonance_is_regular() {
        // delta_s = 0: the dark state gives t = 1
        let c = rates(1.0, 3.0, 3.0, 1.0);
        let atom = AtomParams::new(0.0, 0.75, 2.0).unwrap();
        let geom = GeometryPhase::free(0.5, 1.0).unwrap();
        let a = amplitudes(&c, &atom, &geom, 0.75).unwrap();
        assert!((a.t - 1.0).norm() < 1e-15);
        assert!(!a.decoupled);
    }

    #[test]
    fn bec_figure_2f_unit_transmission() {
        let c = rates(1.0, 3.0, 1.0, 3.0);
        let atom = AtomParams::resonant(0.0, 2.0 * PI).unwrap();
        for delta in [-9.0, -2.0 * PI, -1.0, 0.0, 0.5, 2.0 * PI, 11.0] {
            let a = markovian_amplitudes(&c, &atom, PI, delta).unwrap();
            assert!((a.big_t - 1.0).abs() < 1e-12);
        }
        assert!(
            markovian_amplitudes(&c, &atom, PI, 2.0 * PI)
                .unwrap()
                .decoupled
        );
        assert!(
            markovian_amplitudes(&c, &atom, PI, -2.0 * PI)
                .unwrap()
                .decoupled
        );
        assert!(!markovian_amplitudes(&c, &atom, PI, 1.0).unwrap().decoupled);
    }

    #[test]
    fn bec_without_drive_decouples_at_resonance() {
        let c = rates(1.0, 3.0, 1.0, 3.0);
        let atom = AtomParams::resonant(0.0, 0.0).unwrap();
        let a = markovian_amplitudes(&c, &atom, PI, 0.0).unwrap();
        assert_eq!(a.big_t, 1.0);
        assert!(a.decoupled);
    }

    #[test]
    fn dip_shifts_for_quarter_phase() {
        let c = rates(1.0, 3.0, 3.0, 1.0);
        let atom = AtomParams::resonant(0.0, 0.0).unwrap();
        let dip = 4.0 * 3f64.sqrt();
        let a = markovian_amplitudes(&c, &atom, PI / 2.0, dip).unwrap();
        assert!(a.big_t < 1e-12, "T = {}", a.big_t);
    }

    #[test]
    fn resonant_transmission_matches_amplitudes() {
        let c = rates(1.0, 0.25, 0.25, 1.0);
        let atom = AtomParams::resonant(1.0, 2.0 * PI).unwrap();
        let geom = GeometryPhase::free(1.0, 0.3).unwrap();
        for delta in [-15.0, -PI, -0.2, 0.0, 0.7, 2.0 * PI, 13.0] {
            let t1 = resonant_transmission(&c, &atom, &geom, delta).unwrap();
            let t2 = amplitudes(&c, &atom, &geom, delta).unwrap().big_t;
            assert!((t1 - t2).abs() < 1e-12, "delta {delta}: {t1} vs {t2}");
        }
    }

    #[test]
    fn resonant_transmission_figure_values() {
        let c = rates(1.0, 3.0, 3.0, 1.0);
        let undriven = AtomParams::resonant(0.0, 0.0).unwrap();
        let driven = AtomParams::resonant(0.0, 2.0 * PI).unwrap();
        let zero = GeometryPhase::markovian(0.0).unwrap();
        let pi = GeometryPhase::markovian(PI).unwrap();

        assert!(resonant_transmission(&c, &undriven, &zero, 0.0).unwrap() < 1e-12);
        assert!(resonant_transmission(&c, &driven, &zero, 2.0 * PI).unwrap() < 1e-12);
        assert!((resonant_transmission(&c, &driven, &zero, 0.0).unwrap() - 1.0).abs() < 1e-12);

        // 9π² / (9π² + (8 - 4√3)²)
        let w = 8.0 - 4.0 * 3f64.sqrt();
        let want = 9.0 * PI * PI / (9.0 * PI * PI + w * w);
        let got = resonant_transmission(&c, &driven, &pi, 4.0 * PI).unwrap();
        assert!((got - want).abs() < 1e-12);
        assert!((got - 0.987).abs() < 5e-4);
    }

    #[test]
    fn resonant_transmission_requires_resonance() {
        let c = rates(1.0, 3.0, 3.0, 1.0);
        let atom = AtomParams::new(0.0, 0.5, 1.0).unwrap();
        let geom = GeometryPhase::markovian(0.0).unwrap();
        assert!(matches!(
            resonant_transmission(&c, &atom, &geom, 1.0),
            Err(Error::ResonanceRequired { .. })
        ));
    }

    #[test]
    fn buec_reduced_values() {
        let c = rates(1.0, 3.0, 3.0, 1.0);
        let atom = AtomParams::resonant(0.0, 2.0 * PI).unwrap();
        assert!(buec_reduced_transmission(&c, &atom, 2.0 * PI).unwrap() < 1e-15);
        assert!(buec_reduced_transmission(&c, &atom, -2.0 * PI).unwrap() < 1e-15);
        let w = 8.0 - 4.0 * 3f64.sqrt();
        let want = 9.0 * PI * PI / (9.0 * PI * PI + w * w);
        let got = buec_reduced_transmission(&c, &atom, 4.0 * PI).unwrap();
        assert!((got - want).abs() < 1e-14);

        let pi = GeometryPhase::markovian(PI).unwrap();
        let full = resonant_transmission(&c, &atom, &pi, 4.0 * PI).unwrap();
        assert!((got - full).abs() < 1e-12);
    }

    #[test]
    fn buec_reduced_symmetric_is_transparent() {
        let c = rates(2.0, 2.0, 2.0, 2.0);
        let atom = AtomParams::resonant(0.0, 1.5).unwrap();
        for delta in [-3.0, -1.5, 0.0, 0.4, 1.5] {
            assert_eq!(buec_reduced_transmission(&c, &atom, delta).unwrap(), 1.0);
        }
    }

    #[test]
    fn buec_reduced_rejects_other_regimes() {
        let atom = AtomParams::resonant(0.0, 1.0).unwrap();
        assert!(matches!(
            buec_reduced_transmission(&rates(1.0, 3.0, 1.0, 3.0), &atom, 1.0),
            Err(Error::RegimeMismatch { .. })
        ));
        assert!(buec_reduced_transmission(&rates(1.0, 2.0, 3.0, 4.0), &atom, 1.0).is_err());
    }

    #[test]
    fn markovianity_ratio_sums_rates() {
        let c = rates(1.0, 0.25, 0.25, 1.0);
        let g = |tau| GeometryPhase::free(tau, 0.0).unwrap();
        assert_eq!(markovianity_ratio(&rates(1.0, 3.0, 1.0, 3.0), &g(0.0)), 0.0);
        assert!((markovianity_ratio(&c, &g(1.0)) - 2.5).abs() < 1e-15);
        assert!((markovianity_ratio(&c, &g(2.5)) - 6.25).abs() < 1e-15);
    }

    #[test]
    fn non_finite_detuning_is_rejected() {
        let c = rates(1.0, 1.0, 1.0, 1.0);
        let atom = AtomParams::resonant(0.0, 0.0).unwrap();
        let geom = GeometryPhase::markovian(0.0).unwrap();
        assert!(matches!(
            amplitudes(&c, &atom, &geom, f64::NAN),
            Err(Error::InvalidInput(_))
        ));
    }
}
