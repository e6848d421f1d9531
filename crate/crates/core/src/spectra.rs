//! Single-particle spectra of the three traps, with and without the central
//! barrier.
//!
//! Levels are indexed from `n = 1`. With the barrier fully inserted, every
//! even level has merged upward into the next odd one, so level `n` of the
//! inserted spectrum sits at the barrier-free index `2n` and is doubly
//! degenerate.

use core::f64::consts::PI;

use crate::constants::{HBAR, PLANCK};
use crate::special::ln_gamma;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Barrier {
    Absent,
    Inserted,
}

impl Barrier {
    pub fn degeneracy(self) -> u32 {
        match self {
            Barrier::Absent => 1,
            Barrier::Inserted => 2,
        }
    }

    /// Barrier-free index that level `n` of this configuration sits at.
    #[inline]
    pub fn source_index(self, n: u64) -> u64 {
        match self {
            Barrier::Absent => n,
            Barrier::Inserted => 2 * n,
        }
    }
}

fn positive(name: &'static str, value: f64) -> Result<f64> {
    if value > 0.0 && value.is_finite() {
        Ok(value)
    } else {
        Err(Error::InvalidParameter { name, value })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Harmonic {
    pub mass: f64,
    pub omega: f64,
}

impl Harmonic {
    pub fn new(mass: f64, omega: f64) -> Result<Self> {
        Ok(Harmonic { mass: positive("mass", mass)?, omega: positive("omega", omega)? })
    }

    /// `ħω`
    pub fn quantum(&self) -> f64 {
        HBAR * self.omega
    }

    fn energy(&self, index: u64) -> f64 {
        self.quantum() * (index as f64 + 0.5)
    }
}

/// `V(x) = α|x|^ν` with the coupling tied to the frequency, `α = mω²/2`.
///
/// Levels follow the WKB form `E_n = Ω(ν) (n + ½)^{2ν/(ν+2)}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerLaw {
    pub mass: f64,
    pub omega: f64,
    pub exponent: f64,
    energy_scale: f64,
}

/// WKB energy scale `Ω(ν)` of the power-law trap with `α = mω²/2`.
pub fn omega_prefactor(mass: f64, omega: f64, exponent: f64) -> Result<f64> {
    if !(exponent > 0.0 && exponent.is_finite()) {
        return Err(Error::InvalidExponent(exponent));
    }
    let mass = positive("mass", mass)?;
    let omega = positive("omega", omega)?;
    let alpha = 0.5 * mass * omega * omega;
    let inv = 1.0 / exponent;
    let gamma_quotient = libm::exp(ln_gamma(inv + 1.5)?.ln_abs - ln_gamma(1.0 + inv)?.ln_abs);
    let base = HBAR * libm::sqrt(PI / (2.0 * mass * alpha)) * gamma_quotient;
    let power = 2.0 * exponent / (exponent + 2.0);
    Ok(alpha * libm::pow(base, power))
}

impl PowerLaw {
    pub fn new(mass: f64, omega: f64, exponent: f64) -> Result<Self> {
        let energy_scale = omega_prefactor(mass, omega, exponent)?;
        Ok(PowerLaw { mass, omega, exponent, energy_scale })
    }

    /// Builds the trap from a target `Ω(ν)`, back-solving the frequency.
    ///
    /// With `α = mω²/2` substituted, `Ω ∝ ω^{4/(ν+2)}`. The requested `Ω` is
    /// kept verbatim so that sweeps over `Ω` land exactly on their grid.
    pub fn from_energy_scale(mass: f64, energy_scale: f64, exponent: f64) -> Result<Self> {
        let energy_scale = positive("energy scale", energy_scale)?;
        let unit = omega_prefactor(mass, 1.0, exponent)?;
        let omega = libm::pow(energy_scale / unit, (exponent + 2.0) / 4.0);
        positive("omega", omega)?;
        Ok(PowerLaw { mass, omega, exponent, energy_scale })
    }

    /// `Ω(ν)` in joules.
    pub fn energy_scale(&self) -> f64 {
        self.energy_scale
    }

    /// `2ν / (ν + 2)`
    pub fn level_power(&self) -> f64 {
        2.0 * self.exponent / (self.exponent + 2.0)
    }

    fn energy(&self, index: u64) -> f64 {
        self.energy_scale * libm::pow(index as f64 + 0.5, self.level_power())
    }
}

/// `V(r) = D (1 − e^{−a(r − r_e)})²`.
///
/// Levels are `E_n = hν(n + ½) − hνχ(n + ½)²` with `ν = (a/2π)√(2D/m)` and
/// `χ = hν/(4D)`. An infinite depth is the harmonic limit `χ = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Morse {
    pub mass: f64,
    /// Dissociation energy `D` in joules; `f64::INFINITY` in the harmonic limit.
    pub depth: f64,
    /// Range parameter `a` in 1/m.
    pub range: f64,
    /// Equilibrium position `r_e` in m. Does not enter any energy.
    pub equilibrium: f64,
    /// Fundamental frequency `ν` in Hz.
    pub frequency: f64,
    anharmonicity: f64,
}

impl Morse {
    pub fn new(mass: f64, depth: f64, range: f64, equilibrium: f64) -> Result<Self> {
        let mass = positive("mass", mass)?;
        let depth = positive("depth", depth)?;
        let range = positive("range", range)?;
        let frequency = range / (2.0 * PI) * libm::sqrt(2.0 * depth / mass);
        Ok(Morse { mass, depth, range, equilibrium, frequency, anharmonicity: PLANCK * frequency / (4.0 * depth) })
    }

    /// Parametrised by the fundamental frequency; the range is back-solved.
    pub fn from_frequency(mass: f64, depth: f64, frequency: f64, equilibrium: f64) -> Result<Self> {
        let mass = positive("mass", mass)?;
        let frequency = positive("frequency", frequency)?;
        if depth == f64::INFINITY {
            return Morse::harmonic_limit(mass, frequency);
        }
        let depth = positive("depth", depth)?;
        let range = 2.0 * PI * frequency / libm::sqrt(2.0 * depth / mass);
        Ok(Morse { mass, depth, range, equilibrium, frequency, anharmonicity: PLANCK * frequency / (4.0 * depth) })
    }

    /// Parametrised by frequency and anharmonicity, `D = hν/(4χ)`.
    pub fn from_anharmonicity(mass: f64, frequency: f64, anharmonicity: f64) -> Result<Self> {
        if anharmonicity == 0.0 {
            return Morse::harmonic_limit(mass, frequency);
        }
        let chi = positive("anharmonicity", anharmonicity)?;
        let frequency = positive("frequency", frequency)?;
        let mut morse = Morse::from_frequency(mass, PLANCK * frequency / (4.0 * chi), frequency, 0.0)?;
        morse.anharmonicity = chi;
        Ok(morse)
    }

    /// Infinitely deep well: harmonic levels `hν(n + ½)` with no bound-state cutoff.
    pub fn harmonic_limit(mass: f64, frequency: f64) -> Result<Self> {
        Ok(Morse {
            mass: positive("mass", mass)?,
            depth: f64::INFINITY,
            range: 0.0,
            equilibrium: 0.0,
            frequency: positive("frequency", frequency)?,
            anharmonicity: 0.0,
        })
    }

    /// `hν`
    pub fn quantum(&self) -> f64 {
        PLANCK * self.frequency
    }

    /// `χ = hν / (4D)`
    pub fn anharmonicity(&self) -> f64 {
        self.anharmonicity
    }

    /// Number of bound states `n_m = ⌊2D/hν − 1⌋`; `None` in the harmonic limit.
    pub fn bound_count(&self) -> Result<Option<u64>> {
        if self.depth.is_infinite() {
            return Ok(None);
        }
        let ratio = 2.0 * self.depth / self.quantum();
        let count = libm::floor(ratio - 1.0);
        if !(count >= 1.0) {
            return Err(Error::NoBoundStates { ratio });
        }
        Ok(Some(if count >= u64::MAX as f64 { u64::MAX } else { count as u64 }))
    }

    fn energy(&self, index: u64) -> f64 {
        let x = index as f64 + 0.5;
        self.quantum() * x * (1.0 - self.anharmonicity * x)
    }
}

/// Free-function form of [`Morse::bound_count`] for bounded wells.
pub fn morse_bound_count(morse: &Morse) -> Result<u64> {
    morse
        .bound_count()?
        .ok_or(Error::InvalidParameter { name: "depth", value: morse.depth })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Potential {
    Harmonic(Harmonic),
    PowerLaw(PowerLaw),
    Morse(Morse),
}

impl Potential {
    pub fn spectrum(&self, barrier: Barrier) -> Result<Spectrum> {
        let cutoff = match self {
            Potential::Morse(m) => match m.bound_count()? {
                None => None,
                Some(n_max) => {
                    let levels = match barrier {
                        Barrier::Absent => n_max,
                        Barrier::Inserted => n_max / 2,
                    };
                    if levels == 0 {
                        return Err(Error::EmptyPostBarrierSpectrum { bound_states: n_max });
                    }
                    Some(levels)
                }
            },
            _ => None,
        };
        Ok(Spectrum { potential: *self, barrier, cutoff })
    }

    /// Energy of level `n` in the given barrier configuration.
    pub fn level_energy(&self, n: u64, barrier: Barrier) -> Result<f64> {
        self.spectrum(barrier)?.level(n).map(|l| l.energy)
    }

    fn raw_energy(&self, index: u64) -> f64 {
        match self {
            Potential::Harmonic(h) => h.energy(index),
            Potential::PowerLaw(p) => p.energy(index),
            Potential::Morse(m) => m.energy(index),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Level {
    pub index: u64,
    pub energy: f64,
    pub degeneracy: u32,
}

/// Levels `n = 1, 2, ...` of a potential in one barrier configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Spectrum {
    potential: Potential,
    barrier: Barrier,
    cutoff: Option<u64>,
}

impl Spectrum {
    pub fn barrier(&self) -> Barrier {
        self.barrier
    }

    pub fn degeneracy(&self) -> u32 {
        self.barrier.degeneracy()
    }

    /// Highest admissible index, `None` for an infinite spectrum.
    pub fn cutoff(&self) -> Option<u64> {
        self.cutoff
    }

    pub fn level(&self, n: u64) -> Result<Level> {
        let limit = self.cutoff.unwrap_or(u64::MAX);
        if n == 0 || n > limit {
            return Err(Error::IndexOutOfRange { index: n, limit });
        }
        let energy = self.energy(n);
        if matches!(self.potential, Potential::Morse(_)) && !(energy > 0.0) {
            return Err(Error::NonBoundLevel { index: n, energy });
        }
        Ok(Level { index: n, energy, degeneracy: self.degeneracy() })
    }

    /// Energy of level `n` without range checks, for the inner loops of sums
    /// that already respect [`Spectrum::cutoff`].
    #[inline]
    pub fn energy(&self, n: u64) -> f64 {
        self.potential.raw_energy(self.barrier.source_index(n))
    }

    pub fn ground_energy(&self) -> f64 {
        self.energy(1)
    }

    pub fn iter(&self) -> impl Iterator<Item = Level> + '_ {
        (1..=self.cutoff.unwrap_or(u64::MAX)).map(|n| Level { index: n, energy: self.energy(n), degeneracy: self.degeneracy() })
    }
}
