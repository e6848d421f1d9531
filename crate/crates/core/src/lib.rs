//! Numerics for quantum Szilard engines running a Stirling-like cycle.
//!
//! Three working media are modelled:
//!
//! * `N` non-interacting particles in a harmonic trap, canonical stage sums
//!   ([`ensembles::canonical`]);
//! * `N` non-interacting bosons in a power-law trap `V(x) = α|x|^ν`,
//!   grand-canonical ([`ensembles::bose`]);
//! * a single particle in a Morse well with a finite number of bound states
//!   ([`ensembles::morse`]).
//!
//! Each medium exposes its stage partition functions and internal energies
//! through [`cycle::StageModel`], and [`cycle::run_cycle`] turns those into
//! heats, work, efficiency and an operating regime. The finite-strength
//! delta-barrier spectrum of the harmonic trap lives in [`barrier`].
//!
//! The crate is `no_std` and only needs `alloc` for the barrier-level list.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod barrier;
pub mod constants;
pub mod cycle;
pub mod ensembles;
mod error;
pub mod roots;
pub mod series;
pub mod special;
pub mod spectra;

pub use error::{Error, Result};
