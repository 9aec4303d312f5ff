//! Classification of the chiral coupling pattern.

use crate::params::ChiralCoupling;

/// Default classification tolerance, in units of `gamma_l1`.
pub const DEFAULT_REGIME_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CouplingRegime {
    /// Bidirectional even coupling: `gamma_l1 = gamma_l2`, `gamma_r1 = gamma_r2`.
    Bec,
    /// Bidirectional uneven coupling: `gamma_l1 = gamma_r2`, `gamma_r1 = gamma_l2`.
    Buec,
    General,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Classification {
    pub regime: CouplingRegime,
    /// All four rates coincide, so both equality sets hold. Reported as BEC.
    pub symmetric: bool,
    pub tolerance: f64,
}

/// Classifies `coupling` as BEC, BUEC or general.
///
/// BEC additionally requires `|gamma_l1 - gamma_r1| > tol`. When all four
/// rates agree the coupling satisfies both equality sets; it is reported as
/// BEC with `symmetric = true`.
pub fn classify_coupling(coupling: &ChiralCoupling, tol: f64) -> Classification {
    assert!(tol > 0.0, "classification tolerance must be positive");
    let close = |a: f64, b: f64| (a - b).abs() <= tol;
    let c = coupling;

    let even = close(c.gamma_l1, c.gamma_l2) && close(c.gamma_r1, c.gamma_r2);
    let uneven = close(c.gamma_l1, c.gamma_r2) && close(c.gamma_r1, c.gamma_l2);
    let chiral = !close(c.gamma_l1, c.gamma_r1);

    let (regime, symmetric) = if even && uneven {
        (CouplingRegime::Bec, true)
    } else if even && chiral {
        (CouplingRegime::Bec, false)
    } else if uneven {
        (CouplingRegime::Buec, false)
    } else {
        (CouplingRegime::General, false)
    };
    Classification {
        regime,
        symmetric,
        tolerance: tol,
    }
}
