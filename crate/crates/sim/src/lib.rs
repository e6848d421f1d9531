//! Figure sweeps, CSV output and run manifests for the `szilard-core` engine
//! models.

pub mod config;
pub mod error;
pub mod output;
pub mod presets;
pub mod spec;
pub mod sweep;
pub mod validate;

pub use error::{ConfigError, SimError};
pub use spec::SweepSpec;
