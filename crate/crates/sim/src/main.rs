use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;

use szilard_sim::config::{parse_counts, parse_list, ConfigFile, Unit};
use szilard_sim::output::{manifest_path, write_csv, RunManifest};
use szilard_sim::presets::preset;
use szilard_sim::spec::{Axis, MuModeName, Target, Variable};
use szilard_sim::sweep::run_sweep;
use szilard_sim::validate::validate;
use szilard_sim::{ConfigError, SimError, SweepSpec};

/// Quantum Szilard engine sweeps: writes one CSV and one JSON manifest per run.
#[derive(Parser, Debug)]
#[command(name = "szilard-sim", version)]
struct Cli {
    /// fig2 … fig11, fig9-inset, or custom
    target: Option<String>,

    /// Flat key = value file overlaid on the preset
    #[arg(long)]
    config: Option<PathBuf>,

    /// Re-run the sweep recorded in a manifest
    #[arg(long, value_name = "FILE")]
    from_manifest: Option<PathBuf>,

    /// CSV path [default: <target>.csv]
    #[arg(long)]
    out: Option<PathBuf>,

    /// Manifest path [default: CSV path with .manifest.json]
    #[arg(long)]
    manifest: Option<PathBuf>,

    /// Worker threads [default: available cores]
    #[arg(long)]
    workers: Option<usize>,

    #[arg(long)]
    rel_tol: Option<f64>,

    #[arg(long)]
    max_terms: Option<u64>,

    /// Morse efficiency denominator with Z in place of ln Z
    #[arg(long)]
    eq38_literal: bool,

    /// Single power of the post-barrier bosonic factor
    #[arg(long)]
    eq18_literal: bool,

    /// Chemical potential: approx or exact
    #[arg(long)]
    mu_mode: Option<String>,

    /// Barrier strengths λ′, e.g. 0,1,10,inf
    #[arg(long)]
    lambda: Option<String>,

    /// Power-law exponents, e.g. 1.6,2
    #[arg(long)]
    nu: Option<String>,

    /// Particle numbers, e.g. 10,20,30 or 1..30
    #[arg(long = "N", value_name = "LIST")]
    particles: Option<String>,

    /// Check the grid and report expected failures without running it
    #[arg(long)]
    validate: bool,
}

fn resolve(cli: &Cli) -> Result<SweepSpec, SimError> {
    let mut spec = match (&cli.from_manifest, &cli.target) {
        (Some(path), _) => RunManifest::read(path)?.spec,
        (None, Some(t)) => preset(t.parse::<Target>()?),
        (None, None) => return Err(ConfigError::new("a target (or --from-manifest) is required").into()),
    };
    if let Some(path) = &cli.config {
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError::new(format!("{}: {e}", path.display())))?;
        ConfigFile::parse(&text)
            .and_then(|c| c.apply(&mut spec))
            .map_err(|e| ConfigError { message: format!("{}: {}", path.display(), e.message), ..e })?;
    }
    let flag = |name: &str, m: String| ConfigError::new(format!("--{name}: {m}"));
    if let Some(x) = cli.rel_tol {
        spec.numerics.rel_tol = x;
    }
    if let Some(m) = cli.max_terms {
        spec.numerics.max_terms = m;
    }
    if cli.eq38_literal {
        spec.numerics.eq38_literal = true;
    }
    if cli.eq18_literal {
        spec.numerics.eq18_literal = true;
    }
    if let Some(m) = &cli.mu_mode {
        spec.numerics.mu_mode = m.parse::<MuModeName>()?;
    }
    if let Some(v) = &cli.lambda {
        spec.axis = Axis::list(Variable::Lambda, parse_list(v, Unit::None).map_err(|m| flag("lambda", m))?);
    }
    if let Some(v) = &cli.nu {
        spec.exponents = parse_list(v, Unit::None).map_err(|m| flag("nu", m))?;
    }
    if let Some(v) = &cli.particles {
        spec.particles = parse_counts(v).map_err(|m| flag("N", m))?;
    }
    spec.validate()?;
    Ok(spec)
}

fn run(cli: Cli) -> Result<(), SimError> {
    let spec = resolve(&cli)?;
    if cli.validate {
        print!("{}", validate(&spec)?);
        return Ok(());
    }
    let workers = cli.workers.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let csv = cli.out.clone().unwrap_or_else(|| PathBuf::from(format!("{}.csv", spec.target)));
    let manifest = cli.manifest.clone().unwrap_or_else(|| manifest_path(&csv));

    let start = Instant::now();
    let output = run_sweep(&spec, workers)?;
    let elapsed = start.elapsed();
    write_csv(&csv, &output)?;
    RunManifest::new(&output, &csv, workers, elapsed).write(&manifest)?;

    let failed = output.failed();
    eprintln!(
        "{}: {} points ({} failed) in {:.2} s on {workers} workers -> {}",
        spec.target,
        output.points.len(),
        failed,
        elapsed.as_secs_f64(),
        csv.display()
    );
    if failed == output.points.len() {
        return Err(SimError::AllPointsFailed(failed));
    }
    Ok(())
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
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("szilard-sim: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
