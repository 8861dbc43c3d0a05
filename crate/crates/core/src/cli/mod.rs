//! Config ingestion, orchestration of the engine, oracle and variation
//! pipelines, and deterministic output documents and renderings.

pub mod config;
pub mod probes;
pub mod render;
pub mod run;

pub use config::{parse_config, Command, ConfigError, OutputOptions, Probe, Render, RunConfig};
pub use probes::{run_probe, ProbeOutcome, ProbeStatus, SamplePoints};
pub use render::{render_dendrogram, render_svg, render_vary_ascii, render_vary_svg};
pub use run::{
    execute, run, run_text, Args, Outcome, Overrides, EXIT_MISMATCH, EXIT_OK, EXIT_OTHER, EXIT_VALIDATION, SCHEMA,
};
