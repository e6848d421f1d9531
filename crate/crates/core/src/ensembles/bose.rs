//! Grand-canonical non-interacting bosons in a harmonic or power-law trap.
//!
//! A stage grand partition function over levels of degeneracy `g` is
//!
//! ```text
//! ln Z = −g Σ_n ln(1 − e^{−β(E_n − μ)})
//! ```
//!
//! with `μ` below the lowest level of that stage. The chemical potential is
//! fixed by the particle number at each bath's own temperature, before (`μ_b`)
//! and after (`μ_a`) the barrier.
//!
//! All exponents are written as `β(E_n − E_1) + β·gap` with `gap = E_1 − μ`
//! carried separately, so that `μ` can sit arbitrarily close to `E_1`.

use crate::constants::{beta, BOLTZMANN};
use crate::cycle::StageModel;
use crate::roots::{bisect, Stop};
use crate::series::{sum_levels, TruncationPolicy};
use crate::spectra::{Barrier, Potential, Spectrum};
use crate::{Error, Result};

use super::{ln_one_minus_exp_neg, Bath, BathPair, Stage};

/// How the chemical potential is obtained from `N` and `T`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum MuMode {
    /// Ground-state dominance: `μ ≈ E_1 − k_B T ln(1 + d_1/N)`.
    PaperApproximation,
    /// Root of `Σ d_n / (e^{β(E_n − μ)} − 1) = N`.
    #[default]
    ExactSolve,
}

/// Power carried by the post-barrier factor of the relative partition function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum PostBarrierWeight {
    /// Each doubly degenerate post-barrier level contributes its factor squared,
    /// consistent with the factor 2 of the post-barrier internal energy.
    #[default]
    Degenerate,
    /// A single power of the post-barrier factor.
    Literal,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChemicalPotential {
    /// `μ` in joules.
    pub value: f64,
    /// `E_1 − μ > 0` in joules.
    pub gap: f64,
    /// Lowest level `E_1` of the spectrum the potential refers to.
    pub ground_energy: f64,
}

impl ChemicalPotential {
    fn from_gap(ground_energy: f64, gap: f64) -> Result<Self> {
        let value = ground_energy - gap;
        if !(gap > 0.0) || !value.is_finite() {
            return Err(Error::ConvergenceViolation { chemical_potential: value, ground_energy });
        }
        Ok(ChemicalPotential { value, gap, ground_energy })
    }
}

/// `(μ_b, μ_a)` at one temperature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChemicalPotentials {
    pub before: ChemicalPotential,
    pub after: ChemicalPotential,
    pub temperature: f64,
    pub particles: u32,
    pub mode: MuMode,
}

impl ChemicalPotentials {
    pub fn for_barrier(&self, barrier: Barrier) -> &ChemicalPotential {
        match barrier {
            Barrier::Absent => &self.before,
            Barrier::Inserted => &self.after,
        }
    }
}

fn bose_spectrum(potential: &Potential, barrier: Barrier) -> Result<Spectrum> {
    match potential {
        Potential::Harmonic(_) | Potential::PowerLaw(_) => potential.spectrum(barrier),
        Potential::Morse(_) => Err(Error::IncompatibleEnsemble("grand-canonical bosons need a harmonic or power-law trap")),
    }
}

fn check_temperature(temperature: f64) -> Result<()> {
    if temperature > 0.0 && temperature.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter { name: "temperature", value: temperature })
    }
}

/// Mean occupation `Σ d_n / (e^{β(E_n − μ)} − 1)` with `μ = E_1 − gap`.
pub fn occupation(spectrum: &Spectrum, gap: f64, beta: f64, policy: &TruncationPolicy) -> Result<f64> {
    let ground = spectrum.ground_energy();
    let g = f64::from(spectrum.degeneracy());
    let offset = beta * gap;
    sum_levels(policy, spectrum.cutoff(), |n| [g / libm::expm1(beta * (spectrum.energy(n) - ground) + offset)]).map(|s| s.sums[0])
}

/// Chemical potential of `particles` bosons at `temperature` in one barrier configuration.
pub fn chemical_potential(
    potential: &Potential,
    particles: u32,
    temperature: f64,
    barrier: Barrier,
    mode: MuMode,
    policy: &TruncationPolicy,
) -> Result<ChemicalPotential> {
    if particles == 0 {
        return Err(Error::InvalidParameter { name: "particle count", value: 0.0 });
    }
    check_temperature(temperature)?;
    let spectrum = bose_spectrum(potential, barrier)?;
    let ground = spectrum.ground_energy();
    let b = beta(temperature);
    let n = f64::from(particles);
    // ground level alone holds exactly N at y0 = β(E_1 − μ)
    let y0 = libm::log1p(f64::from(spectrum.degeneracy()) / n);
    let y = match mode {
        MuMode::PaperApproximation => y0,
        MuMode::ExactSolve => solve_gap(&spectrum, b, n, y0, policy)?,
    };
    ChemicalPotential::from_gap(ground, y / b)
}

fn solve_gap(spectrum: &Spectrum, b: f64, n: f64, y0: f64, policy: &TruncationPolicy) -> Result<f64> {
    let excess = |y: f64| occupation(spectrum, y / b, b, policy).map(|total| total / n - 1.0);
    let f0 = excess(y0)?;
    if f0 <= 0.0 {
        // excited levels hold nothing at this precision; the ground level alone is exact
        return Ok(y0);
    }
    // occupation only falls as y grows; widen until it drops below N
    let mut upper = y0;
    let mut f_upper = f0;
    while f_upper > 0.0 {
        upper *= 2.0;
        f_upper = excess(upper)?;
        if upper > 1e6 {
            return Err(Error::RootNotBracketed { lower: y0, upper, f_lower: f0, f_upper });
        }
    }
    let failure = core::cell::Cell::new(None);
    let stop = Stop { x_tol: 0.0, f_tol: 1e-13, max_iter: 400 };
    let root = bisect(
        |y| {
            excess(y).unwrap_or_else(|e| {
                failure.set(Some(e));
                f64::NAN
            })
        },
        y0,
        upper,
        f0,
        f_upper,
        stop,
    )?;
    match failure.take() {
        Some(e) => Err(e),
        None => Ok(root.x),
    }
}

/// `(μ_b, μ_a)` at one temperature.
pub fn chemical_potentials(
    potential: &Potential,
    particles: u32,
    temperature: f64,
    mode: MuMode,
    policy: &TruncationPolicy,
) -> Result<ChemicalPotentials> {
    Ok(ChemicalPotentials {
        before: chemical_potential(potential, particles, temperature, Barrier::Absent, mode, policy)?,
        after: chemical_potential(potential, particles, temperature, Barrier::Inserted, mode, policy)?,
        temperature,
        particles,
        mode,
    })
}

/// `ln` of the relative partition function `Z_post / Z_pre` at the temperature
/// the chemical potentials were evaluated at.
///
/// ```text
/// ln Z[T] = Σ_n ln(1 − e^{−β(E_n − μ_b)}) − w Σ_n ln(1 − e^{−β(E_{2n} − μ_a)})
/// ```
///
/// with `w = 2` for [`PostBarrierWeight::Degenerate`] and `w = 1` for
/// [`PostBarrierWeight::Literal`].
pub fn log_relative_partition(
    potential: &Potential,
    mus: &ChemicalPotentials,
    weight: PostBarrierWeight,
    policy: &TruncationPolicy,
) -> Result<f64> {
    let b = beta(mus.temperature);
    let pre = bose_spectrum(potential, Barrier::Absent)?;
    let post = bose_spectrum(potential, Barrier::Inserted)?;
    let pre_sum = ln_factor_sum(&pre, &mus.before, b, policy)?;
    let post_sum = ln_factor_sum(&post, &mus.after, b, policy)?;
    let w = match weight {
        PostBarrierWeight::Degenerate => f64::from(post.degeneracy()),
        PostBarrierWeight::Literal => 1.0,
    };
    Ok(pre_sum - w * post_sum)
}

/// `Σ_n ln(1 − e^{−β(E_n − μ)})`, always negative.
fn ln_factor_sum(spectrum: &Spectrum, mu: &ChemicalPotential, b: f64, policy: &TruncationPolicy) -> Result<f64> {
    let ground = spectrum.ground_energy();
    let offset = b * mu.gap;
    sum_levels(policy, spectrum.cutoff(), |n| [ln_one_minus_exp_neg(b * (spectrum.energy(n) - ground) + offset)]).map(|s| s.sums[0])
}

/// `Σ_n d (E_n − μ) / (e^{β(E_n − μ)} − 1)`.
fn occupation_energy(spectrum: &Spectrum, mu: &ChemicalPotential, b: f64, policy: &TruncationPolicy) -> Result<f64> {
    let ground = spectrum.ground_energy();
    let g = f64::from(spectrum.degeneracy());
    sum_levels(policy, spectrum.cutoff(), |n| {
        let x = spectrum.energy(n) - ground + mu.gap;
        [g * x / libm::expm1(b * x)]
    })
    .map(|s| s.sums[0])
}

/// All four stages of a bosonic cycle, with the chemical potentials resolved
/// at both bath temperatures.
#[derive(Debug, Clone, Copy)]
pub struct BoseCycle {
    potential: Potential,
    baths: BathPair,
    hot: ChemicalPotentials,
    cold: ChemicalPotentials,
    weight: PostBarrierWeight,
    policy: TruncationPolicy,
}

impl BoseCycle {
    pub fn new(
        potential: Potential,
        particles: u32,
        baths: BathPair,
        mode: MuMode,
        weight: PostBarrierWeight,
        policy: TruncationPolicy,
    ) -> Result<Self> {
        policy.validate()?;
        let hot = chemical_potentials(&potential, particles, baths.hot, mode, &policy)?;
        let cold = chemical_potentials(&potential, particles, baths.cold, mode, &policy)?;
        BoseCycle::with_chemical_potentials(potential, baths, hot, cold, weight, policy)
    }

    /// Uses externally supplied chemical potentials; they must have been
    /// evaluated at the matching bath temperatures.
    pub fn with_chemical_potentials(
        potential: Potential,
        baths: BathPair,
        hot: ChemicalPotentials,
        cold: ChemicalPotentials,
        weight: PostBarrierWeight,
        policy: TruncationPolicy,
    ) -> Result<Self> {
        bose_spectrum(&potential, Barrier::Absent)?;
        if hot.temperature != baths.hot || cold.temperature != baths.cold {
            return Err(Error::InvalidParameter { name: "chemical potential temperature", value: hot.temperature });
        }
        Ok(BoseCycle { potential, baths, hot, cold, weight, policy })
    }

    pub fn chemical_potentials(&self, bath: Bath) -> &ChemicalPotentials {
        match bath {
            Bath::Hot => &self.hot,
            Bath::Cold => &self.cold,
        }
    }

    /// `Z[T]` itself; may underflow where [`StageModel::log_relative_partition`] does not.
    pub fn relative_partition(&self, bath: Bath) -> Result<f64> {
        self.log_relative_partition(bath).map(libm::exp)
    }

    /// Stage grand partition function `ln Z = −g Σ ln(1 − e^{−β(E − μ)})` at an
    /// arbitrary `beta`, holding `μ` at its bath value.
    pub fn stage_log_partition(&self, stage: Stage, beta: f64) -> Result<f64> {
        let spectrum = self.potential.spectrum(stage.barrier())?;
        let mu = self.chemical_potentials(stage.bath()).for_barrier(stage.barrier());
        let g = f64::from(spectrum.degeneracy());
        Ok(-g * ln_factor_sum(&spectrum, mu, beta, &self.policy)?)
    }
}

impl StageModel for BoseCycle {
    fn baths(&self) -> BathPair {
        self.baths
    }

    fn log_relative_partition(&self, bath: Bath) -> Result<f64> {
        log_relative_partition(&self.potential, self.chemical_potentials(bath), self.weight, &self.policy)
    }

    fn internal_energy(&self, stage: Stage) -> Result<f64> {
        let spectrum = self.potential.spectrum(stage.barrier())?;
        let mus = self.chemical_potentials(stage.bath());
        occupation_energy(&spectrum, mus.for_barrier(stage.barrier()), beta(mus.temperature), &self.policy)
    }
}

/// Work `k_B T_h ln Z[T_h] − k_B T_c ln Z[T_c]` of the bosonic cycle.
pub fn bose_work(cycle: &BoseCycle) -> Result<f64> {
    let baths = cycle.baths();
    Ok(BOLTZMANN * baths.hot * cycle.log_relative_partition(Bath::Hot)?
        - BOLTZMANN * baths.cold * cycle.log_relative_partition(Bath::Cold)?)
}
