//! Scenario files, built-in scenario generators, trajectory logs,
//! metrics, SVG rendering and log verification for the `centerstone` CLI.
//!
//! All geometry lives in `centerstone-core`; this crate only moves data in
//! and out of it.

pub mod config;
pub mod metrics;
pub mod runner;
pub mod scenarios;
pub mod svg;
pub mod trajectory;
pub mod verify;

pub use config::{ConfigError, ScenarioConfig};
pub use metrics::Metrics;
pub use runner::{run_scenario, RunOutput};
pub use trajectory::{LogError, TrajectoryHeader, TrajectoryLog, TrajectoryRow};
pub use verify::{verify_log, VerifyReport};

/// Build identifier written into log headers.
pub fn build_id() -> &'static str {
    match option_env!("CENTERSTONE_BUILD") {
        Some(b) => b,
        None => concat!("centerstone ", env!("CARGO_PKG_VERSION")),
    }
}
