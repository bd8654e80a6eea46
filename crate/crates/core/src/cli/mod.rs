//! Experiment presets, configuration and CSV reporting behind the `fracsrc` binary.

pub mod config;
pub mod presets;
pub mod report;

pub use config::{resolve, ConfigPatch, ExperimentConfig, SeedSpec, SourceSpec};
pub use presets::{preset_source, PresetId};
pub use report::{compute_report, run_experiment, write_report, ErrorReport};
