//! Exit criteria for the library. Each criterion is its own test and prints
//! one PASS/FAIL line (`cargo test --test acceptance -- --nocapture`).

use std::f64::consts::PI;

use giant_atom_core::spectral::{
    dip_separation, find_special_points, spectrum_minima, sweep_spectrum, symmetry_defect,
    PointKind, SweepGrid, DEFAULT_SPECIAL_TOL,
};
use giant_atom_core::verify::verify_equivalence;
use giant_atom_core::{
    amplitudes, markovian_amplitudes, AtomParams, ChiralCoupling, GeometryPhase,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rates(l1: f64, r1: f64, l2: f64, r2: f64) -> ChiralCoupling {
    ChiralCoupling::new(l1, r1, l2, r2).unwrap()
}

fn report(id: u32, name: &str, ok: bool, detail: String) {
    println!(
        "[{}] criterion {id:>2} {name}: {detail}",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "criterion {id} ({name}) failed: {detail}");
}

#[test]
fn criterion_01_oracle_equivalence() {
    let r = verify_equivalence(42, 10_000).unwrap();
    let ok = r.max_t_deviation < 1e-9 && r.max_r_modulus_deviation < 1e-9;
    report(
        1,
        "oracle equivalence",
        ok,
        format!(
            "max|dt| = {:.3e}, max|d|r|| = {:.3e} over {} draws ({} singular)",
            r.max_t_deviation, r.max_r_modulus_deviation, r.draws, r.singular_draws
        ),
    );
}

#[test]
fn criterion_02_unitarity() {
    let r = verify_equivalence(42, 10_000).unwrap();
    report(
        2,
        "unitarity",
        r.max_unitarity_defect < 1e-10,
        format!("max|T+R-1| = {:.3e}", r.max_unitarity_defect),
    );
}

#[test]
fn criterion_03_single_dip_total_reflection() {
    let c = rates(1.0, 3.0, 3.0, 1.0);
    let atom = AtomParams::resonant(0.0, 0.0).unwrap();
    let t = markovian_amplitudes(&c, &atom, 0.0, 0.0).unwrap().big_t;
    report(
        3,
        "undriven BUEC T(0)",
        t < 1e-12,
        format!("T(0) = {t:.3e}"),
    );
}

#[test]
fn criterion_04_double_dip_with_central_peak() {
    let c = rates(1.0, 3.0, 3.0, 1.0);
    let atom = AtomParams::resonant(0.0, 2.0 * PI).unwrap();
    let at = |d: f64| markovian_amplitudes(&c, &atom, 0.0, d).unwrap().big_t;
    let (minus, plus, center) = (at(-2.0 * PI), at(2.0 * PI), at(0.0));
    let ok = minus < 1e-12 && plus < 1e-12 && (center - 1.0).abs() < 1e-12;
    report(
        4,
        "driven BUEC double dip",
        ok,
        format!("T(-2π) = {minus:.3e}, T(2π) = {plus:.3e}, T(0) = {center:.15}"),
    );
}

#[test]
fn criterion_05_bec_transparency_and_decoupling() {
    let c = rates(1.0, 3.0, 1.0, 3.0);
    let geom = GeometryPhase::markovian(PI).unwrap();
    let grid = SweepGrid::new(-4.0 * PI, 4.0 * PI, 1001).unwrap();
    let mut ok = true;
    let mut detail = Vec::new();
    for omega in [0.0, 2.0 * PI] {
        let atom = AtomParams::resonant(0.0, omega).unwrap();
        let rows = sweep_spectrum(&c, &atom, &geom, &grid).unwrap();
        let worst = rows
            .iter()
            .map(|r| (r.big_t - 1.0).abs())
            .fold(0.0, f64::max);
        ok &= worst < 1e-12;
        detail.push(format!("Ω={omega:.4}: max|T-1| = {worst:.1e}"));
        if omega > 0.0 {
            let flagged: Vec<f64> = rows
                .iter()
                .filter(|r| r.decoupled)
                .map(|r| r.delta)
                .collect();
            let on_resonance =
                flagged.len() == 2 && flagged.iter().all(|d| (d.abs() - omega).abs() < 1e-12);
            let exact = markovian_amplitudes(&c, &atom, PI, omega)
                .unwrap()
                .decoupled
                && markovian_amplitudes(&c, &atom, PI, -omega)
                    .unwrap()
                    .decoupled;
            ok &= on_resonance && exact;
            detail.push(format!("decoupled nodes {flagged:?}"));
        }
    }
    report(5, "BEC θ=π transparency", ok, detail.join("; "));
}

#[test]
fn criterion_06_shifted_dip() {
    let c = rates(1.0, 3.0, 3.0, 1.0);
    let atom = AtomParams::resonant(0.0, 0.0).unwrap();
    let geom = GeometryPhase::markovian(PI / 2.0).unwrap();
    let scan = find_special_points(
        &c,
        &atom,
        &geom,
        (-20.0, 20.0),
        PointKind::PerfectReflection,
        DEFAULT_SPECIAL_TOL,
    )
    .unwrap();
    let want = 4.0 * 3f64.sqrt();
    let ok = scan.points.len() == 1
        && (scan.points[0].delta - want).abs() < 1e-8
        && scan.points[0].value < 1e-12;
    report(
        6,
        "θ=π/2 dip at 4√3",
        ok,
        format!("points {:?}, expected Δ = {want}", scan.points),
    );
}

#[test]
fn criterion_07_special_tau_points() {
    let omega_e = 3000.0 * PI;
    let omega = 3.0 * PI;
    let atom = AtomParams::resonant(omega_e, omega).unwrap();
    let bec = rates(1.0, 0.25, 1.0, 0.25);
    let buec = rates(1.0, 0.25, 0.25, 1.0);

    // (tau, decoupling expected at +Ω, at -Ω)
    let cases = [
        (13.0 / 7.0, true, false),
        (13.0 / 9.0, false, true),
        (5.0 / 3.0, true, true),
    ];
    let mut ok = true;
    let mut detail = Vec::new();
    for (tau, at_plus, at_minus) in cases {
        let geom = GeometryPhase::derived(tau, omega_e).unwrap();
        for (delta, expected) in [(omega, at_plus), (-omega, at_minus)] {
            let even = amplitudes(&bec, &atom, &geom, delta).unwrap();
            let uneven = amplitudes(&buec, &atom, &geom, delta).unwrap();
            let bec_ok = if expected {
                even.decoupled && (even.big_t - 1.0).abs() < 1e-10
            } else {
                !even.decoupled && (even.big_t - 1.0).abs() > 1e-10
            };
            let buec_ok = if expected {
                uneven.big_t < 1e-10
            } else {
                uneven.big_t > 1e-10
            };
            ok &= bec_ok && buec_ok;
            detail.push(format!(
                "τ={tau:.6} Δ={:+}Ω: BEC T={:.12} dec={} BUEC T={:.3e}",
                delta.signum(),
                even.big_t,
                even.decoupled,
                uneven.big_t
            ));
        }

        // the decoupling search finds exactly the expected resonances
        let scan = find_special_points(
            &bec,
            &atom,
            &geom,
            (-4.0 * PI, 4.0 * PI),
            PointKind::Decoupling,
            DEFAULT_SPECIAL_TOL,
        )
        .unwrap();
        let mut expected: Vec<f64> = Vec::new();
        if at_minus {
            expected.push(-omega);
        }
        if at_plus {
            expected.push(omega);
        }
        let found: Vec<f64> = scan.points.iter().map(|p| p.delta).collect();
        let matches = found.len() == expected.len()
            && found
                .iter()
                .zip(&expected)
                .all(|(f, e)| (f - e).abs() < 1e-9);
        ok &= matches;
        detail.push(format!("τ={tau:.6} decoupling search {found:?}"));
    }
    for line in &detail {
        println!("    {line}");
    }
    report(
        7,
        "special-τ decoupling / reflection",
        ok,
        format!("{} checks", detail.len()),
    );
}

#[test]
fn criterion_08_mirror_symmetry() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let grid = SweepGrid::new(-30.0, 30.0, 2001).unwrap();
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let c = rates(
            rng.gen_range(0.0..5.0),
            rng.gen_range(0.0..5.0),
            rng.gen_range(0.0..5.0),
            rng.gen_range(0.0..5.0),
        );
        let atom =
            AtomParams::resonant(rng.gen_range(0.0..10.0), rng.gen_range(0.0..10.0)).unwrap();
        for theta in [0.0, PI] {
            let geom = GeometryPhase::markovian(theta).unwrap();
            worst = worst.max(symmetry_defect(&c, &atom, &geom, &grid).unwrap());
        }
    }
    let witness = symmetry_defect(
        &rates(1.0, 3.0, 3.0, 1.0),
        &AtomParams::resonant(0.0, 0.0).unwrap(),
        &GeometryPhase::markovian(PI / 2.0).unwrap(),
        &SweepGrid::new(-10.0, 10.0, 2001).unwrap(),
    )
    .unwrap();
    report(
        8,
        "Δ-mirror symmetry",
        worst < 1e-12 && witness > 0.01,
        format!("θ∈{{0,π}} max defect = {worst:.3e}, θ=π/2 witness = {witness:.4}"),
    );
}

#[test]
fn criterion_09_dip_separation_law() {
    let c = rates(1.0, 3.0, 3.0, 1.0);
    let geom = GeometryPhase::markovian(0.0).unwrap();
    let mut ok = true;
    let mut detail = Vec::new();
    for omega in [PI / 2.0, PI, 2.0 * PI, 10.0 * PI] {
        let atom = AtomParams::resonant(0.0, omega).unwrap();
        let sep = dip_separation(&c, &atom, &geom, (-3.0 * omega, 3.0 * omega)).unwrap();
        let err = (sep - 2.0 * omega).abs();
        ok &= err < 1e-8;
        detail.push(format!("Ω={omega:.4}: |sep-2Ω| = {err:.1e}"));
    }
    report(9, "dip separation = 2Ω", ok, detail.join("; "));
}

#[test]
fn criterion_10_oscillation_growth() {
    let c = rates(1.0, 0.25, 0.25, 1.0);
    let atom = AtomParams::resonant(0.0, 0.0).unwrap();
    let grid = SweepGrid::new(-20.0, 20.0, 4001).unwrap();
    let count = |tau: f64| {
        let geom = GeometryPhase::free(tau, PI).unwrap();
        spectrum_minima(&sweep_spectrum(&c, &atom, &geom, &grid).unwrap())
    };
    let (short, long) = (count(1.0), count(2.5));
    report(
        10,
        "non-Markovian oscillation growth",
        long > short,
        format!("minima at τ=1: {short}, at τ=2.5: {long}"),
    );
}
