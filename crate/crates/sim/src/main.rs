use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use centerstone::config::parse_method;
use centerstone::scenarios;
use centerstone::{run_scenario, verify_log, ScenarioConfig, TrajectoryLog};

/// Resilient vector consensus experiments.
#[derive(Parser)]
#[command(name = "centerstone", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario and write trajectory.csv, metrics.json and config.json.
    Run {
        /// Scenario file (JSON).
        #[arg(long, conflicts_with = "scenario", required_unless_present = "scenario")]
        config: Option<PathBuf>,
        /// Built-in scenario name instead of a file.
        #[arg(long)]
        scenario: Option<String>,
        /// centerpoint | tverberg | iterated-radon[:r]
        #[arg(long, visible_alias = "safe-point-method")]
        method: Option<String>,
        /// Overrides the config seed and CENTERSTONE_SEED.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value = "out")]
        out: PathBuf,
        /// Also write positions.svg.
        #[arg(long)]
        svg: bool,
    },
    /// Print (or write) a built-in scenario as JSON.
    Generate {
        name: String,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-check a trajectory log with brute-force geometry.
    Verify {
        #[arg(long)]
        log: PathBuf,
        /// Defaults to config.json next to the log.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Number of steps to re-check geometrically; 0 only parses the log.
        #[arg(long, default_value_t = 10)]
        depth_checks: usize,
    },
}

/// Exit status 2 (bad input) or 1 (runtime failure) with a message.
struct Failure(u8, String);

fn usage(msg: impl Into<String>) -> Failure {
    Failure(2, msg.into())
}

fn runtime(msg: impl Into<String>) -> Failure {
    Failure(1, msg.into())
}

fn env_seed() -> Result<Option<u64>, Failure> {
    match std::env::var("CENTERSTONE_SEED") {
        Ok(s) => s
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| usage(format!("CENTERSTONE_SEED={s:?} is not an unsigned integer"))),
        Err(_) => Ok(None),
    }
}

fn load_config(path: &Path) -> Result<ScenarioConfig, Failure> {
    let src = fs::read_to_string(path)
        .map_err(|e| usage(format!("{}: {e}", path.display())))?;
    ScenarioConfig::from_json(&src).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn cmd_run(
    config: Option<PathBuf>,
    scenario: Option<String>,
    method: Option<String>,
    seed: Option<u64>,
    out: PathBuf,
    svg: bool,
) -> Result<(), Failure> {
    let fallback = env_seed()?.unwrap_or(0);
    let mut cfg = match (&config, &scenario) {
        (Some(path), _) => load_config(path)?,
        (None, Some(name)) => scenarios::generate(name, seed.unwrap_or(fallback))
            .map_err(|e| usage(e.to_string()))?,
        (None, None) => return Err(usage("either --config or --scenario is required")),
    };
    let seed = seed.or(cfg.seed).unwrap_or(fallback);
    if let Some(m) = method {
        parse_method(&m).map_err(|e| usage(format!("--method: {e}")))?;
        cfg.method = m;
    }
    cfg.validate(None).map_err(|e| usage(e.to_string()))?;
    let output = run_scenario(&cfg, seed).map_err(|e| usage(e.to_string()))?;
    output
        .write_to(&out, svg)
        .map_err(|e| runtime(format!("{}: {e}", out.display())))?;
    let m = &output.metrics;
    println!(
        "method={} seed={} steps={} final_diameter={:.3e} steps_to_epsilon={} safety_violations={} terminal_clusters={}",
        m.method,
        m.seed,
        m.steps,
        m.final_diameter,
        m.steps_to_epsilon.map_or("NA".to_owned(), |s| s.to_string()),
        m.safety_violations,
        m.terminal_clusters
    );
    Ok(())
}

fn cmd_generate(name: String, seed: Option<u64>, out: Option<PathBuf>) -> Result<(), Failure> {
    let seed = match seed {
        Some(s) => s,
        None => env_seed()?.unwrap_or(0),
    };
    let cfg = scenarios::generate(&name, seed).map_err(|e| usage(e.to_string()))?;
    match out {
        Some(path) => fs::write(&path, cfg.to_json())
            .map_err(|e| runtime(format!("{}: {e}", path.display()))),
        None => {
            print!("{}", cfg.to_json());
            Ok(())
        }
    }
}

fn cmd_verify(log: PathBuf, config: Option<PathBuf>, k: usize) -> Result<(), Failure> {
    let src = fs::read_to_string(&log).map_err(|e| usage(format!("{}: {e}", log.display())))?;
    let parsed =
        TrajectoryLog::parse(&src).map_err(|e| usage(format!("{}: {e}", log.display())))?;
    if k == 0 {
        println!("parsed {} rows; no checks requested", parsed.rows.len());
        return Ok(());
    }
    let cfg_path = config.unwrap_or_else(|| {
        log.parent()
            .unwrap_or_else(|| Path::new("."))
            .join("config.json")
    });
    let cfg = load_config(&cfg_path)?;
    let report = verify_log(&parsed, &cfg, k).map_err(|e| runtime(e.to_string()))?;
    println!(
        "steps={} sampled={} hull_checks={} oracle_safety_violations={} depth_checks={} depth_skipped={}",
        report.steps,
        report.sampled_steps.len(),
        report.hull_checks,
        report.oracle_safety_violations,
        report.depth_checks,
        report.depth_skipped
    );
    if report.ok() {
        println!("ok");
        Ok(())
    } else {
        for d in report.discrepancies.iter().take(20) {
            eprintln!("discrepancy: {d}");
        }
        Err(runtime(format!(
            "{} discrepancies",
            report.discrepancies.len()
        )))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run {
            config,
            scenario,
            method,
            seed,
            out,
            svg,
        } => cmd_run(config, scenario, method, seed, out, svg),
        Command::Generate { name, seed, out } => cmd_generate(name, seed, out),
        Command::Verify {
            log,
            config,
            depth_checks,
        } => cmd_verify(log, config, depth_checks),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
