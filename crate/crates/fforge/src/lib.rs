//! File formats, experiment drivers and the census for `fforge-core`.

pub mod census;
pub mod config;
pub mod error;
pub mod experiments;
pub mod formats;
pub mod output;

pub use config::{Config, OutputFormat};
pub use error::{Error, Result};
