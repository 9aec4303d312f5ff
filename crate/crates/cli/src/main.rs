use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use giant_atom_cli::{parse_config, render, run, CliError, Command, Format};

/// Single-photon scattering spectra of a driven Λ-type giant atom.
#[derive(Parser)]
#[command(name = "giant-atom", version)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Transmission and reflection amplitudes over the Δ grid.
    Spectrum(Common),
    /// Transmission over the Δ × Ω grid.
    Heatmap(Common),
    /// Refined perfect-transmission, perfect-reflection and decoupling detunings.
    SpecialPoints(Common),
    /// Propagation times that put decoupling on a dressed resonance.
    SpecialTau(Common),
    /// Closed form against the linear-system oracle on seeded random draws.
    Verify(Common),
    /// Coupling regime and Markovianity ratio.
    Classify(Common),
}

#[derive(Args)]
struct Common {
    /// Configuration file.
    #[arg(long)]
    config: PathBuf,
    /// Output file (default: [output] path, else standard output).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format, overriding [output] format.
    #[arg(long, value_parser = ["csv", "json"])]
    format: Option<String>,
    /// Seed for `verify`, overriding [verify] seed.
    #[arg(long)]
    seed: Option<u64>,
}

fn execute(command: Command, args: &Common) -> Result<Option<CliError>, CliError> {
    let text = std::fs::read_to_string(&args.config)
        .map_err(|e| CliError::Input(format!("{}: {e}", args.config.display())))?;
    let mut config = parse_config(&text)?;
    if let Some(f) = &args.format {
        config.output.format = f.parse::<Format>().map_err(CliError::Input)?;
    }
    if let Some(seed) = args.seed {
        config.verify.seed = seed;
    }
    if let Some(out) = &args.out {
        config.output.path = Some(out.clone());
    }

    let report = run(command, &config)?;
    let body = render(&report.table, config.output.format);
    match &config.output.path {
        Some(path) => std::fs::write(path, body)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?,
        None => write_stdout(&body)?,
    }
    for note in &report.notes {
        eprintln!("{}: {note}", command.name());
    }
    Ok(report.failure)
}

fn write_stdout(body: &str) -> Result<(), CliError> {
    let mut out = std::io::stdout().lock();
    match out.write_all(body.as_bytes()).and_then(|_| out.flush()) {
        // a closed reader (e.g. `| head`) is not an error of ours
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
            Err(CliError::Input(format!("standard output: {e}")))
        }
        _ => Ok(()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let (command, args) = match &cli.command {
        Sub::Spectrum(a) => (Command::Spectrum, a),
        Sub::Heatmap(a) => (Command::Heatmap, a),
        Sub::SpecialPoints(a) => (Command::SpecialPoints, a),
        Sub::SpecialTau(a) => (Command::SpecialTau, a),
        Sub::Verify(a) => (Command::Verify, a),
        Sub::Classify(a) => (Command::Classify, a),
    };
    let failure = match execute(command, args) {
        Ok(failure) => failure,
        Err(e) => Some(e),
    };
    match failure {
        None => ExitCode::SUCCESS,
        Some(e) => {
            eprintln!("giant-atom {}: {e}", command.name());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
