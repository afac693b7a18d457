//! Running a scenario and writing its output directory.

use std::fs;
use std::io;
use std::path::Path;

use centerstone_core::consensus::{Role, Simulation};

use crate::config::{method_name, ConfigError, ScenarioConfig};
use crate::metrics::Metrics;
use crate::svg;
use crate::trajectory::{TrajectoryHeader, TrajectoryLog, TrajectoryRow};

#[derive(Debug, Clone)]
pub struct RunOutput {
    /// The configuration with generated agents spelled out and the seed set.
    pub config: ScenarioConfig,
    pub log: TrajectoryLog,
    pub metrics: Metrics,
}

/// Runs `cfg` under `seed`.
pub fn run_scenario(cfg: &ScenarioConfig, seed: u64) -> Result<RunOutput, ConfigError> {
    let resolved = cfg.resolved(seed);
    resolved.validate(None)?;
    let sim_cfg = resolved.to_sim(seed)?;
    let header = TrajectoryHeader {
        config_sha256: resolved.sha256(),
        seed,
        method: method_name(sim_cfg.method),
        build: crate::build_id().to_owned(),
        dimension: sim_cfg.dim,
    };
    let roles: Vec<Role> = sim_cfg.agents.iter().map(|a| a.role.clone()).collect();
    let mut sim = Simulation::new(sim_cfg).map_err(|e| ConfigError {
        message: e.to_string(),
        line: None,
        column: None,
    })?;
    let mut rows = Vec::new();
    while let Some(report) = sim.step() {
        rows.extend(TrajectoryRow::from_report(&report, &roles));
    }
    let log = TrajectoryLog { header, rows };
    let metrics = Metrics::from_log(&log, resolved.epsilon, resolved.max_steps);
    Ok(RunOutput {
        config: resolved,
        log,
        metrics,
    })
}

impl RunOutput {
    /// Writes `config.json`, `trajectory.csv`, `metrics.json` and, if asked,
    /// `positions.svg` into `dir`.
    pub fn write_to(&self, dir: &Path, with_svg: bool) -> io::Result<()> {
        fs::create_dir_all(dir)?;
        fs::write(dir.join("config.json"), self.config.to_json())?;
        let file = io::BufWriter::new(fs::File::create(dir.join("trajectory.csv"))?);
        self.log.write(file)?.into_inner().map_err(|e| e.into_error())?;
        fs::write(dir.join("metrics.json"), self.metrics.to_json())?;
        if with_svg {
            fs::write(dir.join("positions.svg"), svg::render(&self.config, &self.log))?;
        }
        Ok(())
    }
}
