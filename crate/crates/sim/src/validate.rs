//! Dry-run diagnostics: which grid points are expected to fail, and why.

use std::collections::BTreeMap;
use std::fmt;

use szilard_core::barrier::BarrierStrength;
use szilard_core::constants::beta;
use szilard_core::ensembles::bose::{chemical_potential, MuMode};
use szilard_core::series::TruncationPolicy;
use szilard_core::spectra::{Barrier, Potential, Spectrum};
use szilard_core::Error;

use crate::error::ConfigError;
use crate::spec::{Model, SweepSpec};
use crate::sweep::{grid, Point};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub target: String,
    pub points: usize,
    pub failing: usize,
    /// Reason → (count, first failing point index).
    pub reasons: BTreeMap<&'static str, (usize, usize)>,
}

impl ValidationReport {
    pub fn failing_fraction(&self) -> f64 {
        if self.points == 0 {
            0.0
        } else {
            self.failing as f64 / self.points as f64
        }
    }

    pub fn count(&self, reason: &str) -> usize {
        self.reasons.get(reason).map_or(0, |r| r.0)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "validate {}: {} points, {} expected to fail ({:.1}%)",
            self.target,
            self.points,
            self.failing,
            100.0 * self.failing_fraction()
        )?;
        for (reason, (count, first)) in &self.reasons {
            writeln!(f, "  {reason}: {count} (first at point {first})")?;
        }
        Ok(())
    }
}

/// Short category for a model error.
pub fn reason(e: &Error) -> &'static str {
    match e {
        Error::InvalidParameter { .. } => "invalid parameter",
        Error::InvalidExponent(_) => "invalid exponent",
        Error::IndexOutOfRange { .. } => "level index out of range",
        Error::NonBoundLevel { .. } => "non-bound level",
        Error::NoBoundStates { .. } => "no bound states",
        Error::EmptyPostBarrierSpectrum { .. } => "post-barrier spectrum empty",
        Error::GammaPole(_) => "gamma pole",
        Error::Truncation { .. } => "series exceeds max_terms",
        Error::RootNotBracketed { .. } => "root not bracketed",
        Error::ConvergenceViolation { .. } => "convergence violation (mu >= E1)",
        Error::IncompatibleEnsemble(_) => "incompatible ensemble",
    }
}

/// Rough number of terms before `power·β(E_n − E_1)` clears the tolerance.
fn estimated_terms(spectrum: &Spectrum, beta: f64, power: u32, policy: &TruncationPolicy) -> u64 {
    let target = -policy.rel_tol.ln() + 5.0;
    let ground = spectrum.ground_energy();
    let limit = spectrum.cutoff().unwrap_or(u64::MAX);
    let mut n: u64 = 1;
    while n < limit && f64::from(power) * beta * (spectrum.energy(n) - ground) < target {
        if n > policy.max_terms {
            break;
        }
        n = n.saturating_mul(2);
    }
    n.min(limit)
}

fn check_series(p: &Potential, temperatures: &[f64], power: u32, policy: &TruncationPolicy) -> Result<(), Error> {
    for barrier in [Barrier::Absent, Barrier::Inserted] {
        let spectrum = p.spectrum(barrier)?;
        for &t in temperatures {
            let terms = estimated_terms(&spectrum, beta(t), power, policy);
            if terms > policy.max_terms {
                return Err(Error::Truncation { terms, last_term: f64::NAN, partial_sum: f64::NAN });
            }
        }
    }
    Ok(())
}

fn check_point(spec: &SweepSpec, point: &Point, policy: &TruncationPolicy, mode: MuMode) -> Result<(), Error> {
    if spec.model == Model::Barrier {
        return BarrierStrength::new(point.x).map(|_| ());
    }
    let p = point.potential(spec)?;
    let mu_checks = |temperatures: &[f64], modes: &[MuMode]| -> Result<(), Error> {
        for &t in temperatures {
            for barrier in [Barrier::Absent, Barrier::Inserted] {
                for &m in modes {
                    chemical_potential(&p, point.particles, t, barrier, m, policy)?;
                }
            }
        }
        Ok(())
    };
    match spec.model {
        Model::Canonical => {
            point.baths()?;
            check_series(&p, &[point.hot, point.cold], point.particles, policy)
        }
        Model::Morse => {
            point.baths()?;
            check_series(&p, &[point.hot, point.cold], 1, policy)
        }
        Model::Bose => {
            point.baths()?;
            check_series(&p, &[point.hot, point.cold], 1, policy)?;
            mu_checks(&[point.hot, point.cold], &[mode])
        }
        Model::ChemicalPotential => {
            check_series(&p, &[point.x], 1, policy)?;
            mu_checks(&[point.x], &[MuMode::PaperApproximation, MuMode::ExactSolve])
        }
        Model::RelativePartition => {
            check_series(&p, &[point.x], 1, policy)?;
            mu_checks(&[point.x], &[mode])
        }
        Model::Barrier => unreachable!(),
    }
}

/// Checks every grid point without running the cycle.
pub fn validate(spec: &SweepSpec) -> Result<ValidationReport, ConfigError> {
    spec.validate()?;
    let policy = spec.numerics.policy()?;
    let mode = spec.numerics.mu_mode.into();
    let points = grid(spec);
    let mut reasons: BTreeMap<&'static str, (usize, usize)> = BTreeMap::new();
    let mut failing = 0;
    for point in &points {
        if let Err(e) = check_point(spec, point, &policy, mode) {
            failing += 1;
            reasons.entry(reason(&e)).or_insert((0, point.index)).0 += 1;
        }
    }
    Ok(ValidationReport { target: spec.target.to_string(), points: points.len(), failing, reasons })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets::preset;
    use crate::spec::Target;
    use szilard_core::constants::PLANCK;

    #[test]
    fn fig8_is_clean() {
        let r = validate(&preset(Target::Fig8)).unwrap();
        assert_eq!(r.points, 492);
        assert_eq!(r.failing, 0, "{r}");
    }

    #[test]
    fn shallow_morse_reports_empty_post_barrier_spectrum() {
        let mut spec = preset(Target::Fig9);
        // 2D/hν = 2.5 → n_m = 1
        spec.depths = vec![1.25 * PLANCK * spec.frequency];
        let r = validate(&spec).unwrap();
        assert_eq!(r.failing, r.points);
        assert_eq!(r.count("post-barrier spectrum empty"), r.points);
        assert!(r.to_string().contains("post-barrier spectrum empty: 60"));
    }

    #[test]
    fn tight_term_cap_is_flagged() {
        let mut spec = preset(Target::Fig5);
        spec.numerics.max_terms = 10;
        let r = validate(&spec).unwrap();
        assert!(r.count("series exceeds max_terms") > 0, "{r}");
    }
}
