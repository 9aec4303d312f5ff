//! Independent solution of the stationary scattering problem.
//!
//! A photon of unit amplitude enters from the left. Between and outside the
//! coupling points the fields are plane waves,
//!
//! ```text
//! right movers:  exp(ikx)  |  A exp(ikx)   |  t exp(ikx)
//! left movers:  r exp(-ikx) |  B exp(-ikx)  |  0
//!                       x = 0          x = d
//! ```
//!
//! Integrating the field equations across each delta-function coupling gives
//! four jump conditions. The atomic amplitudes obey
//!
//! ```text
//! Δ C_e   = Ω C_s + Σ_j [g_Rj C_R(x_j) + g_Lj C_L(x_j)]
//! Δ_s C_s = Ω C_e
//! ```
//!
//! where the field at a coupling point is the mean of its one-sided limits.
//! With `v_g = 1`, `k_0 = 0` the propagation factor `exp(ikd)` is `exp(i phi)`,
//! `phi = delta * tau + theta`. The six equations in `(A, B, t, r, C_e, C_s)`
//! are solved by dense Gaussian elimination.

mod linalg;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::params::{AtomParams, ChiralCoupling, GeometryPhase};
use crate::scattering::ScatteringAmplitudes;

pub use linalg::{solve, Solve};

/// Pivot threshold, relative to the largest matrix entry, below which the
/// scattering system is treated as singular.
pub const SINGULAR_PIVOT_TOL: f64 = 1e-12;

const I: Complex64 = Complex64::new(0.0, 1.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Full solution of the piecewise scattering ansatz.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatteringState {
    /// Right-mover amplitude between the coupling points.
    pub a_mid: Complex64,
    /// Left-mover amplitude between the coupling points.
    pub b_mid: Complex64,
    pub t: Complex64,
    pub r: Complex64,
    pub c_e: Complex64,
    pub c_s: Complex64,
    /// The system was singular; the state is the by-continuity transparent one.
    pub decoupled: bool,
}

impl ScatteringState {
    /// Unit transmission with the atom left empty.
    pub fn transparent() -> Self {
        Self {
            a_mid: ONE,
            b_mid: ZERO,
            t: ONE,
            r: ZERO,
            c_e: ZERO,
            c_s: ZERO,
            decoupled: true,
        }
    }

    pub fn big_t(&self) -> f64 {
        self.t.norm_sqr()
    }

    pub fn big_r(&self) -> f64 {
        self.r.norm_sqr()
    }

    /// Rebuilds the full state from closed-form `t` and `r`.
    ///
    /// `C_e` comes from whichever jump condition (transmitted or reflected
    /// side) is better conditioned, then `A`, `B` and `C_s` follow from the
    /// remaining jump conditions and the drive equation.
    pub fn from_amplitudes(
        coupling: &ChiralCoupling,
        atom: &AtomParams,
        geom: &GeometryPhase,
        delta: f64,
        amps: &ScatteringAmplitudes,
    ) -> Self {
        let [g_l1, g_r1, g_l2, g_r2] = coupling.amplitudes();
        let e = Complex64::from_polar(1.0, geom.phase(delta));

        // t - 1 = -i C_e (g_r1 + g_r2 / e),  r = -i C_e (g_l1 + g_l2 e)
        let via_t = g_r1 + g_r2 / e;
        let via_r = g_l1 + g_l2 * e;
        let c_e = if via_t.norm() >= via_r.norm() {
            if via_t.norm() > 0.0 {
                I * (amps.t - 1.0) / via_t
            } else {
                ZERO
            }
        } else {
            I * amps.r / via_r
        };

        let a_mid = 1.0 - I * g_r1 * c_e;
        let b_mid = -I * g_l2 * c_e * e;

        let drive = atom.omega_drive;
        let detuning_s = delta + atom.omega_e - atom.omega_s;
        let c_s = if drive == 0.0 {
            ZERO
        } else if detuning_s.abs() >= 1e-6 * drive.max(1.0) {
            drive * c_e / detuning_s
        } else {
            let fields = field_drive(coupling, geom, delta, a_mid, b_mid, amps.t, amps.r);
            (delta * c_e - fields) / drive
        };

        Self {
            a_mid,
            b_mid,
            t: amps.t,
            r: amps.r,
            c_e,
            c_s,
            decoupled: amps.decoupled,
        }
    }
}

/// `Σ_j [g_Rj C_R(x_j) + g_Lj C_L(x_j)]` with mean-of-limits field values.
fn field_drive(
    coupling: &ChiralCoupling,
    geom: &GeometryPhase,
    delta: f64,
    a_mid: Complex64,
    b_mid: Complex64,
    t: Complex64,
    r: Complex64,
) -> Complex64 {
    let [g_l1, g_r1, g_l2, g_r2] = coupling.amplitudes();
    let e = Complex64::from_polar(1.0, geom.phase(delta));
    let right_1 = 0.5 * (1.0 + a_mid);
    let left_1 = 0.5 * (r + b_mid);
    let right_2 = 0.5 * (a_mid + t) * e;
    let left_2 = 0.5 * b_mid / e;
    g_r1 * right_1 + g_l1 * left_1 + g_r2 * right_2 + g_l2 * left_2
}

/// Solves the six scattering equations as a dense complex linear system.
///
/// Without drive the metastable level cannot be reached from the waveguide,
/// and its equation is replaced by `C_s = 0`. A singular system is a
/// decoupling point; it resolves to [`ScatteringState::transparent`].
pub fn solve_scattering_linear_system(
    coupling: &ChiralCoupling,
    atom: &AtomParams,
    geom: &GeometryPhase,
    delta: impl Into<f64>,
) -> Result<ScatteringState> {
    let delta = delta.into();
    if !delta.is_finite() {
        return Err(Error::InvalidInput(format!(
            "detuning must be finite, got {delta}"
        )));
    }
    let (matrix, rhs) = assemble(coupling, atom, geom, delta);
    match solve(matrix, rhs, SINGULAR_PIVOT_TOL) {
        Solve::Solution([a_mid, b_mid, t, r, c_e, c_s]) => {
            let state = ScatteringState {
                a_mid,
                b_mid,
                t,
                r,
                c_e,
                c_s,
                decoupled: false,
            };
            if [a_mid, b_mid, t, r, c_e, c_s].iter().all(|z| z.is_finite()) {
                Ok(state)
            } else {
                Err(Error::NumericalSingularity(format!(
                    "non-finite oracle solution at delta = {delta}"
                )))
            }
        }
        Solve::Singular { .. } => Ok(ScatteringState::transparent()),
    }
}

/// Unknown order: `[A, B, t, r, C_e, C_s]`.
fn assemble(
    coupling: &ChiralCoupling,
    atom: &AtomParams,
    geom: &GeometryPhase,
    delta: f64,
) -> ([[Complex64; 6]; 6], [Complex64; 6]) {
    let [g_l1, g_r1, g_l2, g_r2] = coupling.amplitudes();
    let e = Complex64::from_polar(1.0, geom.phase(delta));
    let e_inv = e.conj();
    let c = |re: f64| Complex64::new(re, 0.0);
    let drive = atom.omega_drive;
    let detuning_s = delta + atom.omega_e - atom.omega_s;

    let mut m = [[ZERO; 6]; 6];
    let mut b = [ZERO; 6];

    // right movers jump at x = 0:  A - 1 = -i g_r1 C_e
    m[0][0] = ONE;
    m[0][4] = I * g_r1;
    b[0] = ONE;

    // left movers jump at x = 0:  B - r = +i g_l1 C_e
    m[1][1] = ONE;
    m[1][3] = -ONE;
    m[1][4] = -I * g_l1;

    // right movers jump at x = d:  (t - A) e = -i g_r2 C_e
    m[2][0] = -e;
    m[2][2] = e;
    m[2][4] = I * g_r2;

    // left movers jump at x = d:  0 - B / e = +i g_l2 C_e
    m[3][1] = -e_inv;
    m[3][4] = -I * g_l2;

    // Δ C_e - Ω C_s - [g_r1 (1 + A)/2 + g_l1 (r + B)/2 + g_r2 e (A + t)/2 + g_l2 B / (2e)] = 0
    m[4][0] = c(-0.5 * g_r1) - 0.5 * g_r2 * e;
    m[4][1] = c(-0.5 * g_l1) - 0.5 * g_l2 * e_inv;
    m[4][2] = -0.5 * g_r2 * e;
    m[4][3] = c(-0.5 * g_l1);
    m[4][4] = c(delta);
    m[4][5] = c(-drive);
    b[4] = c(0.5 * g_r1);

    if drive == 0.0 {
        m[5][5] = ONE;
    } else {
        // Δ_s C_s - Ω C_e = 0
        m[5][4] = c(-drive);
        m[5][5] = c(detuning_s);
    }
    (m, b)
}

/// Largest absolute residual of the six scattering equations for `state`.
///
/// The equations are evaluated directly, not through the assembled matrix.
pub fn residual_norm(
    state: &ScatteringState,
    coupling: &ChiralCoupling,
    atom: &AtomParams,
    geom: &GeometryPhase,
    delta: f64,
) -> f64 {
    let [g_l1, g_r1, g_l2, g_r2] = coupling.amplitudes();
    let e = Complex64::from_polar(1.0, geom.phase(delta));
    let s = state;
    let detuning_s = delta + atom.omega_e - atom.omega_s;

    let fields = field_drive(coupling, geom, delta, s.a_mid, s.b_mid, s.t, s.r);
    let residuals = [
        s.a_mid - 1.0 + I * g_r1 * s.c_e,
        s.b_mid - s.r - I * g_l1 * s.c_e,
        (s.t - s.a_mid) * e + I * g_r2 * s.c_e,
        -s.b_mid / e - I * g_l2 * s.c_e,
        delta * s.c_e - atom.omega_drive * s.c_s - fields,
        detuning_s * s.c_s - atom.omega_drive * s.c_e,
    ];
    residuals.iter().map(|z| z.norm()).fold(0.0, f64::max)
}
