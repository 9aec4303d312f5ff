//! Subcommand dispatch.

use serde_json::{json, Map, Value};

use giant_atom_core::spectral::{
    find_special_points, heatmap_delta_omega, special_tau_in_window, sweep_spectrum, PointKind,
    SweepGrid, TauSign,
};
use giant_atom_core::verify::verify_equivalence;
use giant_atom_core::{
    classify_coupling, markovianity_ratio, CouplingRegime, ThetaMode, DEFAULT_REGIME_TOL,
};

use crate::config::RunConfig;
use crate::output::{Cell, Table};
use crate::CliError;

/// Closed form and oracle must agree to this tolerance for `verify` to pass.
pub const VERIFY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Spectrum,
    Heatmap,
    SpecialPoints,
    SpecialTau,
    Verify,
    Classify,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Spectrum => "spectrum",
            Command::Heatmap => "heatmap",
            Command::SpecialPoints => "special-points",
            Command::SpecialTau => "special-tau",
            Command::Verify => "verify",
            Command::Classify => "classify",
        }
    }
}

/// Result of a subcommand. `failure` is set when the table was produced
/// but the run did not meet its acceptance tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub table: Table,
    pub notes: Vec<String>,
    pub failure: Option<CliError>,
}

impl Report {
    fn ok(table: Table) -> Self {
        Report {
            table,
            notes: Vec::new(),
            failure: None,
        }
    }
}

pub fn run(command: Command, config: &RunConfig) -> Result<Report, CliError> {
    let mut report = match command {
        Command::Spectrum => spectrum(config)?,
        Command::Heatmap => heatmap(config)?,
        Command::SpecialPoints => special_points(config)?,
        Command::SpecialTau => special_tau(config)?,
        Command::Verify => verify(config)?,
        Command::Classify => classify(config),
    };
    let mut meta = parameters(config);
    meta.append(&mut report.table.meta);
    report.table.meta = meta;
    Ok(report)
}

fn parameters(config: &RunConfig) -> Map<String, Value> {
    let c = &config.coupling;
    let a = &config.atom;
    let g = &config.geometry;
    let mut meta = Map::new();
    meta.insert(
        "coupling".into(),
        json!({
            "gamma_l1": c.gamma_l1,
            "gamma_r1": c.gamma_r1,
            "gamma_l2": c.gamma_l2,
            "gamma_r2": c.gamma_r2,
        }),
    );
    meta.insert(
        "atom".into(),
        json!({ "omega_e": a.omega_e, "omega_s": a.omega_s, "omega_drive": a.omega_drive }),
    );
    let mode = match g.mode() {
        ThetaMode::Free => "free",
        ThetaMode::DerivedFromOmegaE => "derived",
    };
    meta.insert(
        "geometry".into(),
        json!({ "tau": g.tau(), "theta": g.theta(), "theta_mode": mode }),
    );
    if let Some(grid) = &config.grid {
        let mut obj = json!({
            "delta_min": grid.delta_min(),
            "delta_max": grid.delta_max(),
            "steps": grid.steps(),
        });
        if let Some(o) = &grid.omega {
            obj["omega_min"] = json!(o.min);
            obj["omega_max"] = json!(o.max);
            obj["omega_steps"] = json!(o.steps);
        }
        meta.insert("grid".into(), obj);
    }
    meta
}

fn require_grid(config: &RunConfig) -> Result<&SweepGrid, CliError> {
    config
        .grid
        .as_ref()
        .ok_or_else(|| CliError::Input("this subcommand needs a [grid] section".into()))
}

fn spectrum(config: &RunConfig) -> Result<Report, CliError> {
    let grid = require_grid(config)?;
    let rows = sweep_spectrum(&config.coupling, &config.atom, &config.geometry, grid)?;
    let mut table = Table::new(
        "spectrum",
        &["delta", "t_re", "t_im", "r_re", "r_im", "T", "R"],
    );
    for r in &rows {
        table.push(vec![
            r.delta.into(),
            r.t.re.into(),
            r.t.im.into(),
            r.r.re.into(),
            r.r.im.into(),
            r.big_t.into(),
            r.big_r.into(),
        ]);
    }
    let mut report = Report::ok(table);
    let decoupled = rows.iter().filter(|r| r.decoupled).count();
    if decoupled > 0 {
        report.notes.push(format!(
            "{decoupled} grid node(s) sit on a decoupling point (t = 1, r = 0)"
        ));
    }
    Ok(report)
}

fn heatmap(config: &RunConfig) -> Result<Report, CliError> {
    let grid = require_grid(config)?;
    if grid.omega.is_none() {
        return Err(CliError::Input(
            "heatmap needs omega_min, omega_max and omega_steps in [grid]".into(),
        ));
    }
    let cells = heatmap_delta_omega(&config.coupling, &config.atom, &config.geometry, grid)?;
    let mut table = Table::new("heatmap", &["delta", "omega", "T"]);
    for c in &cells {
        table.push(vec![c.delta.into(), c.omega.into(), c.big_t.into()]);
    }
    Ok(Report::ok(table))
}

fn kind_name(kind: PointKind) -> &'static str {
    match kind {
        PointKind::PerfectTransmission => "transmission",
        PointKind::PerfectReflection => "reflection",
        PointKind::Decoupling => "decoupling",
    }
}

fn special_points(config: &RunConfig) -> Result<Report, CliError> {
    let grid = require_grid(config)?;
    let opts = &config.special_points;
    let kinds = match opts.kind {
        Some(k) => vec![k],
        None => vec![
            PointKind::PerfectTransmission,
            PointKind::PerfectReflection,
            PointKind::Decoupling,
        ],
    };
    let mut table = Table::new("special-points", &["kind", "delta", "T"]);
    let mut notes = Vec::new();
    let mut everywhere = Map::new();
    for kind in kinds {
        let scan = find_special_points(
            &config.coupling,
            &config.atom,
            &config.geometry,
            (grid.delta_min(), grid.delta_max()),
            kind,
            opts.tolerance,
        )?;
        if scan.everywhere {
            notes.push(format!(
                "{}: the criterion holds at every scan node; no isolated points reported",
                kind_name(kind)
            ));
        }
        everywhere.insert(kind_name(kind).into(), json!(scan.everywhere));
        for p in &scan.points {
            table.push(vec![kind_name(kind).into(), p.delta.into(), p.value.into()]);
        }
    }
    table.meta.insert("tolerance".into(), json!(opts.tolerance));
    table
        .meta
        .insert("everywhere".into(), Value::Object(everywhere));
    Ok(Report {
        table,
        notes,
        failure: None,
    })
}

fn special_tau(config: &RunConfig) -> Result<Report, CliError> {
    let (lo, hi) = config.special_tau.window.ok_or_else(|| {
        CliError::Input("special-tau needs tau_min and tau_max in [special_tau]".into())
    })?;
    let mut found = Vec::new();
    for &sign in config.special_tau.sign.signs() {
        found.extend(special_tau_in_window(
            config.atom.omega_e,
            config.atom.omega_drive,
            sign,
            lo,
            hi,
        )?);
    }
    found.sort_by(|a, b| {
        a.tau
            .total_cmp(&b.tau)
            .then((a.sign as u8).cmp(&(b.sign as u8)))
    });
    let mut table = Table::new("special-tau", &["sign", "odd_multiple", "tau"]);
    for s in &found {
        let sign = match s.sign {
            TauSign::Plus => "plus",
            TauSign::Minus => "minus",
        };
        table.push(vec![sign.into(), Cell::Int(s.odd_multiple), s.tau.into()]);
    }
    table.meta.insert("tau_window".into(), json!([lo, hi]));
    Ok(Report::ok(table))
}

fn verify(config: &RunConfig) -> Result<Report, CliError> {
    let opts = &config.verify;
    let r = verify_equivalence(opts.seed, opts.draws)?;
    let mut table = Table::new(
        "verify",
        &[
            "seed",
            "draws",
            "singular_draws",
            "max_t_deviation",
            "max_r_modulus_deviation",
            "max_unitarity_defect",
            "max_closed_form_residual",
        ],
    );
    table.push(vec![
        Cell::UInt(r.seed),
        Cell::UInt(r.draws as u64),
        Cell::UInt(r.singular_draws as u64),
        r.max_t_deviation.into(),
        r.max_r_modulus_deviation.into(),
        r.max_unitarity_defect.into(),
        r.max_closed_form_residual.into(),
    ]);
    let worst = r.max_t_deviation.max(r.max_r_modulus_deviation);
    let notes = vec![format!(
        "max deviation {worst:.3e} over {} draws (seed {})",
        r.draws, r.seed
    )];
    let failure = (worst >= VERIFY_TOL).then(|| {
        CliError::Numerical(format!(
            "closed form and oracle differ by {worst:.3e} (tolerance {VERIFY_TOL:e})"
        ))
    });
    Ok(Report {
        table,
        notes,
        failure,
    })
}

fn classify(config: &RunConfig) -> Report {
    let c = classify_coupling(&config.coupling, DEFAULT_REGIME_TOL);
    let regime = match c.regime {
        CouplingRegime::Bec => "BEC",
        CouplingRegime::Buec => "BUEC",
        CouplingRegime::General => "general",
    };
    let mut table = Table::new(
        "classify",
        &["regime", "symmetric", "tolerance", "markovianity_ratio"],
    );
    table.push(vec![
        regime.into(),
        c.symmetric.into(),
        c.tolerance.into(),
        markovianity_ratio(&config.coupling, &config.geometry).into(),
    ]);
    Report::ok(table)
}
