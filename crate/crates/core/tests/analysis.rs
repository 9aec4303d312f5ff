use std::f64::consts::PI;

use giant_atom_core::oracle::solve_scattering_linear_system;
use giant_atom_core::spectral::{
    dip_separation, find_special_points, heatmap_delta_omega, special_tau_in_window,
    sweep_spectrum, PointKind, SweepGrid, TauSign, DEFAULT_SPECIAL_TOL,
};
use giant_atom_core::{AtomParams, ChiralCoupling, GeometryPhase};

fn rates(l1: f64, r1: f64, l2: f64, r2: f64) -> ChiralCoupling {
    ChiralCoupling::new(l1, r1, l2, r2).unwrap()
}

#[test]
fn special_points_hold_under_both_routes() {
    let omega_e = 3000.0 * PI;
    let atom = AtomParams::resonant(omega_e, 3.0 * PI).unwrap();
    let geom = GeometryPhase::derived(5.0 / 3.0, omega_e).unwrap();
    let cases = [
        (rates(1.0, 0.25, 1.0, 0.25), PointKind::PerfectTransmission),
        (rates(1.0, 0.25, 1.0, 0.25), PointKind::Decoupling),
        (rates(1.0, 0.25, 0.25, 1.0), PointKind::PerfectReflection),
    ];
    for (c, kind) in cases {
        let scan = find_special_points(&c, &atom, &geom, (-12.0, 12.0), kind, DEFAULT_SPECIAL_TOL)
            .unwrap();
        assert!(!scan.points.is_empty(), "{kind:?}");
        for p in &scan.points {
            let oracle = solve_scattering_linear_system(&c, &atom, &geom, p.delta).unwrap();
            match kind {
                PointKind::PerfectReflection => {
                    assert!(p.value < DEFAULT_SPECIAL_TOL);
                    assert!(oracle.big_t() < DEFAULT_SPECIAL_TOL, "{p:?}");
                }
                PointKind::PerfectTransmission | PointKind::Decoupling => {
                    assert!((p.value - 1.0).abs() < DEFAULT_SPECIAL_TOL);
                    assert!((oracle.big_t() - 1.0).abs() < DEFAULT_SPECIAL_TOL, "{p:?}");
                }
            }
        }
    }
}

#[test]
fn bec_transmission_points_sit_on_odd_phases() {
    // non-Markovian BEC: T = 1 wherever Δτ + θ is an odd multiple of π
    let c = rates(1.0, 0.25, 1.0, 0.25);
    let atom = AtomParams::resonant(0.0, 0.0).unwrap();
    let geom = GeometryPhase::free(1.0, 0.0).unwrap();
    let scan = find_special_points(
        &c,
        &atom,
        &geom,
        (-10.0, 10.0),
        PointKind::PerfectTransmission,
        DEFAULT_SPECIAL_TOL,
    )
    .unwrap();
    let expected: Vec<f64> = (-2..2).map(|n| (2 * n + 1) as f64 * PI).collect();
    let found: Vec<f64> = scan.points.iter().map(|p| p.delta).collect();
    assert_eq!(found.len(), expected.len(), "{found:?}");
    for (f, e) in found.iter().zip(&expected) {
        assert!((f - e).abs() < 1e-9, "{f} vs {e}");
    }
}

#[test]
fn refinement_is_grid_independent() {
    let c = rates(1.0, 0.25, 0.25, 1.0);
    let atom = AtomParams::resonant(0.0, 2.0 * PI).unwrap();
    let geom = GeometryPhase::free(0.7, 0.3).unwrap();
    let find = |range: (f64, f64)| {
        find_special_points(&c, &atom, &geom, range, PointKind::PerfectReflection, 1e-9)
            .unwrap()
            .points
    };
    // halving the span halves the scan spacing around the same points
    let coarse = find((-20.0, 20.0));
    let fine = find((-10.0, 10.0));
    let inside: Vec<_> = coarse.iter().filter(|p| p.delta.abs() < 9.5).collect();
    assert!(!inside.is_empty());
    for p in inside {
        let q = fine
            .iter()
            .min_by(|a, b| {
                (a.delta - p.delta)
                    .abs()
                    .total_cmp(&(b.delta - p.delta).abs())
            })
            .unwrap();
        assert!((p.delta - q.delta).abs() < 1e-9 * 20.0, "{p:?} vs {q:?}");
    }
}

#[test]
fn dip_separation_is_twice_the_drive_on_a_log_grid() {
    let c = rates(1.0, 3.0, 3.0, 1.0);
    let geom = GeometryPhase::markovian(0.0).unwrap();
    let mut last = 0.0;
    for k in 0..=12 {
        let omega = 0.1 * 10f64.powf(k as f64 / 4.0);
        let atom = AtomParams::resonant(0.0, omega).unwrap();
        let span = 3.0 * omega;
        let sep = dip_separation(&c, &atom, &geom, (-span, span)).unwrap();
        assert!(
            (sep - 2.0 * omega).abs() < 1e-8 * omega.max(1.0),
            "Ω = {omega}: {sep}"
        );
        assert!(sep > last);
        last = sep;
    }
}

#[test]
fn special_tau_window_contains_figure_values() {
    let omega_e = 3000.0 * PI;
    let omega = 3.0 * PI;
    let mut all = special_tau_in_window(omega_e, omega, TauSign::Plus, 1.4, 1.9).unwrap();
    all.extend(special_tau_in_window(omega_e, omega, TauSign::Minus, 1.4, 1.9).unwrap());
    for want in [13.0 / 9.0, 5.0 / 3.0, 13.0 / 7.0] {
        assert!(
            all.iter().any(|s| (s.tau - want).abs() < 1e-12),
            "missing {want}"
        );
    }
    let five_thirds: Vec<_> = all
        .iter()
        .filter(|s| (s.tau - 5.0 / 3.0).abs() < 1e-12)
        .collect();
    assert_eq!(five_thirds.len(), 2);
}

#[test]
fn solution_count_scales_with_window() {
    let omega_e = 40.0;
    let omega = 5.0;
    for (sign, rate) in [(TauSign::Plus, 45.0), (TauSign::Minus, 35.0)] {
        for len in [1.0, 2.0, 4.0, 8.0] {
            let n = special_tau_in_window(omega_e, omega, sign, 0.5, 0.5 + len)
                .unwrap()
                .len();
            let density = rate / (2.0 * PI);
            assert!(
                (n as f64 - density * len).abs() <= 1.0,
                "{sign:?} {len}: {n}"
            );
        }
    }
}

#[test]
fn heatmap_rows_show_dip_splitting() {
    let c = rates(1.0, 3.0, 3.0, 1.0);
    let atom = AtomParams::resonant(0.0, 0.0).unwrap();
    let geom = GeometryPhase::markovian(0.0).unwrap();
    let grid = SweepGrid::new(-4.0 * PI, 4.0 * PI, 801)
        .unwrap()
        .with_omega(0.0, 2.0 * PI, 3)
        .unwrap();
    let cells = heatmap_delta_omega(&c, &atom, &geom, &grid).unwrap();
    let row = |j: usize| &cells[j * 801..(j + 1) * 801];

    let minima = |cells: &[giant_atom_core::spectral::HeatmapCell]| -> Vec<f64> {
        cells
            .windows(3)
            .filter(|w| w[1].big_t < w[0].big_t && w[1].big_t <= w[2].big_t && w[1].big_t < 0.5)
            .map(|w| w[1].delta)
            .collect()
    };
    assert_eq!(minima(row(0)), vec![0.0]);
    let split = minima(row(2));
    assert_eq!(split.len(), 2);
    assert!((split[0] + 2.0 * PI).abs() < 1e-12 && (split[1] - 2.0 * PI).abs() < 1e-12);

    // the dip separation at Ω = 2π is 4π
    let atom = AtomParams::resonant(0.0, 2.0 * PI).unwrap();
    let sep = dip_separation(&c, &atom, &geom, (-4.0 * PI, 4.0 * PI)).unwrap();
    assert!((sep - 4.0 * PI).abs() < 1e-8);
}

#[test]
fn nonmarkovian_spectrum_oscillates() {
    let c = rates(1.0, 0.25, 0.25, 1.0);
    let atom = AtomParams::resonant(0.0, 0.0).unwrap();
    let geom = GeometryPhase::free(2.5, PI).unwrap();
    let grid = SweepGrid::new(-20.0, 20.0, 2001).unwrap();
    let rows = sweep_spectrum(&c, &atom, &geom, &grid).unwrap();
    assert!(giant_atom_core::spectral::spectrum_minima(&rows) >= 3);
}
