//! Stage partition functions and internal energies for the four corners of
//! the cycle.
//!
//! Stages A and B are coupled to the hot bath, C and D to the cold one. The
//! barrier is in during B and C.

pub mod bose;
pub mod canonical;
pub mod morse;

use crate::spectra::Barrier;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BathPair {
    pub hot: f64,
    pub cold: f64,
}

impl BathPair {
    /// Both temperatures in kelvin. `hot < cold` is allowed and simply runs
    /// the cycle in reverse.
    pub fn new(hot: f64, cold: f64) -> Result<Self> {
        for (name, t) in [("hot temperature", hot), ("cold temperature", cold)] {
            if !(t > 0.0 && t.is_finite()) {
                return Err(Error::InvalidParameter { name, value: t });
            }
        }
        Ok(BathPair { hot, cold })
    }

    pub fn temperature(&self, bath: Bath) -> f64 {
        match bath {
            Bath::Hot => self.hot,
            Bath::Cold => self.cold,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Bath {
    Hot,
    Cold,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Stage {
    A,
    B,
    C,
    D,
}

impl Stage {
    pub const ALL: [Stage; 4] = [Stage::A, Stage::B, Stage::C, Stage::D];

    pub fn barrier(self) -> Barrier {
        match self {
            Stage::A | Stage::D => Barrier::Absent,
            Stage::B | Stage::C => Barrier::Inserted,
        }
    }

    pub fn bath(self) -> Bath {
        match self {
            Stage::A | Stage::B => Bath::Hot,
            Stage::C | Stage::D => Bath::Cold,
        }
    }
}

/// `ln(1 − e^{−y})` for `y > 0`, accurate at both ends.
#[inline]
pub(crate) fn ln_one_minus_exp_neg(y: f64) -> f64 {
    if y < core::f64::consts::LN_2 {
        libm::log(-libm::expm1(-y))
    } else {
        libm::log1p(-libm::exp(-y))
    }
}
