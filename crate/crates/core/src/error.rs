use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Everything that can go wrong inside the models.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A physical parameter violated its domain (mass, frequency, depth...).
    InvalidParameter { name: &'static str, value: f64 },
    /// Power-law exponent `ν ≤ 0` (or not finite).
    InvalidExponent(f64),
    /// Level index outside `1..=limit` of a bounded spectrum.
    IndexOutOfRange { index: u64, limit: u64 },
    /// A Morse level at `index` has non-positive energy.
    NonBoundLevel { index: u64, energy: f64 },
    /// `⌊2D/hν − 1⌋ < 1`.
    NoBoundStates { ratio: f64 },
    /// Morse well with too few bound levels for any barrier-inserted level (`2n ≤ n_m`).
    EmptyPostBarrierSpectrum { bound_states: u64 },
    /// Argument sits on a pole of the gamma function.
    GammaPole(f64),
    /// A series did not meet its tolerance within the term cap.
    Truncation { terms: u64, last_term: f64, partial_sum: f64 },
    /// A bracketing root search failed.
    RootNotBracketed { lower: f64, upper: f64, f_lower: f64, f_upper: f64 },
    /// Chemical potential at or above the lowest level of its spectrum.
    ConvergenceViolation { chemical_potential: f64, ground_energy: f64 },
    /// Ensemble/potential/particle-number combination that the cycle cannot run.
    IncompatibleEnsemble(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidParameter { name, value } => write!(f, "invalid {name}: {value:e}"),
            Error::InvalidExponent(nu) => write!(f, "power-law exponent must be positive, got {nu}"),
            Error::IndexOutOfRange { index, limit } => {
                write!(f, "level index {index} outside 1..={limit}")
            }
            Error::NonBoundLevel { index, energy } => {
                write!(f, "level {index} is not bound (E = {energy:e} J)")
            }
            Error::NoBoundStates { ratio } => {
                write!(f, "no bound states: 2D/hν = {ratio} gives ⌊2D/hν − 1⌋ < 1")
            }
            Error::EmptyPostBarrierSpectrum { bound_states } => write!(
                f,
                "post-barrier spectrum empty: {bound_states} bound state(s), need 2n ≤ n_m for n = 1"
            ),
            Error::GammaPole(x) => write!(f, "gamma function pole at {x}"),
            Error::Truncation { terms, last_term, partial_sum } => write!(
                f,
                "series not converged after {terms} terms (last term {last_term:e}, sum {partial_sum:e})"
            ),
            Error::RootNotBracketed { lower, upper, f_lower, f_upper } => write!(
                f,
                "root not bracketed on [{lower}, {upper}] (f = {f_lower:e}, {f_upper:e})"
            ),
            Error::ConvergenceViolation { chemical_potential, ground_energy } => write!(
                f,
                "chemical potential {chemical_potential:e} J not below ground level {ground_energy:e} J"
            ),
            Error::IncompatibleEnsemble(msg) => write!(f, "incompatible ensemble: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
