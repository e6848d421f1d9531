//! CSV and manifest writers.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Duration;

use serde::{Deserialize, Serialize};

use szilard_core::constants::{ATOMIC_MASS_UNIT, BOLTZMANN, ELECTRON_VOLT, HBAR, PLANCK};

use crate::error::SimError;
use crate::spec::SweepSpec;
use crate::sweep::SweepOutput;

/// CSV bytes: header row, comma-separated, LF line endings.
pub fn csv_bytes(output: &SweepOutput) -> Vec<u8> {
    let mut writer = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    let write = |w: &mut csv::Writer<Vec<u8>>| -> csv::Result<()> {
        w.write_record(output.header())?;
        for row in output.rows() {
            w.write_record(&row)?;
        }
        w.flush()?;
        Ok(())
    };
    write(&mut writer).expect("writing to memory cannot fail");
    writer.into_inner().expect("in-memory writer flushes")
}

pub fn write_csv(path: &Path, output: &SweepOutput) -> Result<(), SimError> {
    fs::write(path, csv_bytes(output)).map_err(|e| SimError::io(path, e))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Constants {
    pub hbar: f64,
    pub planck: f64,
    pub boltzmann: f64,
    pub electron_volt: f64,
    pub atomic_mass_unit: f64,
}

impl Default for Constants {
    fn default() -> Self {
        Constants { hbar: HBAR, planck: PLANCK, boltzmann: BOLTZMANN, electron_volt: ELECTRON_VOLT, atomic_mass_unit: ATOMIC_MASS_UNIT }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointError {
    pub index: usize,
    pub message: String,
}

/// Everything needed to reproduce a CSV, plus how the run went.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub version: String,
    pub spec: SweepSpec,
    pub constants: Constants,
    pub csv: PathBuf,
    pub workers: usize,
    pub wall_clock_seconds: f64,
    pub points: usize,
    pub rows: usize,
    pub failed: usize,
    pub errors: Vec<PointError>,
}

impl RunManifest {
    pub fn new(output: &SweepOutput, csv: &Path, workers: usize, elapsed: Duration) -> Self {
        let errors: Vec<PointError> = output
            .points
            .iter()
            .filter_map(|p| p.result.as_ref().err().map(|m| PointError { index: p.point.index, message: m.clone() }))
            .collect();
        RunManifest {
            version: version_string(),
            spec: output.spec.clone(),
            constants: Constants::default(),
            csv: csv.to_path_buf(),
            workers,
            wall_clock_seconds: elapsed.as_secs_f64(),
            points: output.points.len(),
            rows: output.rows().len(),
            failed: errors.len(),
            errors,
        }
    }

    pub fn write(&self, path: &Path) -> Result<(), SimError> {
        let mut text = serde_json::to_string_pretty(self).expect("manifest serialises");
        text.push('\n');
        fs::write(path, text).map_err(|e| SimError::io(path, e))
    }

    pub fn read(path: &Path) -> Result<Self, SimError> {
        let text = fs::read_to_string(path).map_err(|e| SimError::io(path, e))?;
        serde_json::from_str(&text).map_err(|e| crate::ConfigError::new(format!("{}: {e}", path.display())).into())
    }
}

/// Crate version, with `git describe` appended when it was available at build time.
pub fn version_string() -> String {
    let base = format!("szilard-sim {}", env!("CARGO_PKG_VERSION"));
    match option_env!("SZILARD_GIT_DESCRIBE") {
        Some(d) if !d.is_empty() => format!("{base} ({d})"),
        _ => base,
    }
}

/// `out.csv` → `out.manifest.json`
pub fn manifest_path(csv: &Path) -> PathBuf {
    csv.with_extension("manifest.json")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets::preset;
    use crate::spec::Target;
    use crate::sweep::run_sweep;

    #[test]
    fn lf_endings_and_fixed_floats() {
        let out = run_sweep(&preset(Target::Fig6), 1).unwrap();
        let bytes = csv_bytes(&out);
        let text = String::from_utf8(bytes).unwrap();
        assert!(!text.contains('\r'));
        assert!(text.starts_with("lambda,k,epsilon,odd_epsilon,residual,error\n"));
        assert!(text.contains("\n0.0000000000000000e0,0,5.0000000000000000e-1,1.5000000000000000e0,"));
        assert!(text.ends_with('\n'));
    }

    #[test]
    fn manifest_round_trip_keeps_infinities() {
        let out = run_sweep(&preset(Target::Fig10), 1).unwrap();
        let m = RunManifest::new(&out, Path::new("fig10.csv"), 1, Duration::from_millis(5));
        let json = serde_json::to_string(&m).unwrap();
        let back: RunManifest = serde_json::from_str(&json).unwrap();
        assert_eq!(back.spec, m.spec);
        assert!(back.spec.depths.contains(&f64::INFINITY));
        assert_eq!(manifest_path(Path::new("a/fig10.csv")), PathBuf::from("a/fig10.manifest.json"));
    }
}
