//! Independent re-checking of a trajectory log against its configuration.
//!
//! Every step is replayed algebraically: initial positions must match the
//! configuration, adversaries must sit where their behavior puts them, and
//! every normal row must follow from the previous one by the logged safe
//! point (or be held when flagged). On `K` sampled steps the views are rebuilt
//! and the monitor columns, the safety flags (against the brute-force hull)
//! and the depth of every logged safe point (against the brute-force depth)
//! are checked, and each safe point is recomputed bit for bit.

use std::fmt;

use centerstone_core::centerpoint::{exact_depth_bound, radon_depth_bound};
use centerstone_core::consensus::{
    adrc_step, agent_seed, gather_views, normal_diameter, Role, SafePointMethod, SimConfig,
    StepStatus,
};
use centerstone_core::oracle::{depth_limit, oracle_depth, OracleHull};
use centerstone_core::tverberg::tverberg_part_bound;
use centerstone_core::{Point, PointSet};

use crate::config::{method_name, ScenarioConfig};
use crate::trajectory::{RowStatus, TrajectoryLog, TrajectoryRow};

/// Hull margins this close to zero are not counted either way.
const HULL_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Default, PartialEq)]
pub struct VerifyReport {
    pub steps: usize,
    pub sampled_steps: Vec<u64>,
    pub hull_checks: usize,
    /// Normal positions the brute-force hull places outside `conv(X(0))`.
    pub oracle_safety_violations: usize,
    pub depth_checks: usize,
    /// Safe points whose neighborhood exceeds the brute-force depth limit.
    pub depth_skipped: usize,
    pub discrepancies: Vec<String>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.discrepancies.is_empty()
    }
}

/// The log cannot be checked at all.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyError(pub String);

impl fmt::Display for VerifyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for VerifyError {}

/// Depth every safe point of `method` must reach in a view of `n` points.
pub fn required_depth(method: SafePointMethod, n: usize, d: usize) -> usize {
    match method {
        SafePointMethod::Centerpoint => exact_depth_bound(n, d),
        SafePointMethod::IteratedRadon(r) => radon_depth_bound(n, d, r),
        SafePointMethod::Tverberg => tverberg_part_bound(n, d),
    }
}

/// Steps `0..=last` to sample: `k` of them spread evenly, both ends
/// included.
fn sample_steps(last: u64, k: usize) -> Vec<u64> {
    if k as u64 > last {
        return (0..=last).collect();
    }
    let mut out: Vec<u64> = (0..k)
        .map(|i| {
            if k == 1 {
                0
            } else {
                (i as u64 * last + (k as u64 - 1) / 2) / (k as u64 - 1)
            }
        })
        .collect();
    out.dedup();
    out
}

fn same(a: &[f64], b: &[f64]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.to_bits() == y.to_bits())
}

fn point(c: &[f64]) -> Point {
    Point::new(c.to_vec()).expect("parsed coordinates are finite")
}

/// Checks `log` against `cfg`. With `depth_checks == 0` nothing is checked.
pub fn verify_log(
    log: &TrajectoryLog,
    cfg: &ScenarioConfig,
    depth_checks: usize,
) -> Result<VerifyReport, VerifyError> {
    let mut report = VerifyReport::default();
    if depth_checks == 0 {
        return Ok(report);
    }
    let seed = log.header.seed;
    let resolved = cfg.resolved(seed);
    if resolved.sha256() != log.header.config_sha256 {
        return Err(VerifyError(
            "configuration hash differs from the log header; wrong --config?".to_owned(),
        ));
    }
    let mut bad = Vec::new();
    let sim: SimConfig = resolved
        .to_sim(seed)
        .map_err(|e| VerifyError(format!("configuration: {e}")))?;
    if method_name(sim.method) != log.header.method {
        bad.push(format!(
            "log method {} but configuration method {}",
            log.header.method,
            method_name(sim.method)
        ));
    }
    if sim.dim != log.header.dimension {
        return Err(VerifyError(format!(
            "log dimension {} but configuration dimension {}",
            log.header.dimension, sim.dim
        )));
    }

    let n = sim.agents.len();
    if log.rows.is_empty() || log.rows.len() % n != 0 {
        return Err(VerifyError(format!(
            "{} rows is not a whole number of steps of {n} agents",
            log.rows.len()
        )));
    }
    let steps: Vec<&[TrajectoryRow]> = log.rows.chunks(n).collect();
    report.steps = steps.len();
    for (t, step) in steps.iter().enumerate() {
        for (i, row) in step.iter().enumerate() {
            if row.t != t as u64 || row.agent != i {
                return Err(VerifyError(format!(
                    "row for step {} agent {} found where step {t} agent {i} was expected",
                    row.t, row.agent
                )));
            }
            if row.normal != sim.agents[i].role.is_normal() {
                bad.push(format!("step {t} agent {i}: role differs from configuration"));
            }
        }
    }
    let positions = |t: usize| -> Vec<Point> { steps[t].iter().map(|r| point(&r.position)).collect() };
    let starts: Vec<Point> = sim.agents.iter().map(|a| a.x.clone()).collect();

    // Algebraic replay of every step.
    let last = steps.len() - 1;
    for (t, step) in steps.iter().enumerate() {
        let pos = positions(t);
        let diameter = normal_diameter(&sim.agents, &pos);
        let terminal = diameter < sim.epsilon || t as u64 >= sim.max_steps;
        if terminal != (t == last) {
            bad.push(format!(
                "step {t}: run {} here (diameter {diameter:e})",
                if terminal { "should stop" } else { "should not stop" }
            ));
        }
        for (i, row) in step.iter().enumerate() {
            let agent = &sim.agents[i];
            let expected_start = match &agent.role {
                Role::Normal if t == 0 => Some(starts[i].clone()),
                Role::Normal => None,
                Role::Adversarial(b) => Some(b.position(&starts[i], t as u64)),
            };
            if let Some(e) = expected_start {
                if !same(e.coords(), &row.position) {
                    bad.push(format!("step {t} agent {i}: position differs from the replay"));
                }
            }
            if !agent.role.is_normal() {
                if row.status != RowStatus::Adversary || row.safe_point.is_some() {
                    bad.push(format!("step {t} agent {i}: adversary row carries an update"));
                }
                continue;
            }
            if t == last {
                if row.status != RowStatus::Final || row.safe_point.is_some() {
                    bad.push(format!("step {t} agent {i}: terminal row carries an update"));
                }
                continue;
            }
            let next = &steps[t + 1][i].position;
            let expected = match (row.status, &row.safe_point) {
                (RowStatus::Updated, Some(s)) => pos[i].lerp_toward(&point(s), agent.alpha),
                (RowStatus::NoGuarantee | RowStatus::Failed, None) => pos[i].clone(),
                _ => {
                    bad.push(format!("step {t} agent {i}: status and safe point disagree"));
                    continue;
                }
            };
            if !same(expected.coords(), next) {
                bad.push(format!(
                    "step {} agent {i}: position does not follow from step {t}",
                    t + 1
                ));
            }
        }
    }

    // Sampled geometric checks.
    let normals: Vec<Point> = sim
        .agents
        .iter()
        .filter(|a| a.role.is_normal())
        .map(|a| a.x.clone())
        .collect();
    let hull0 = OracleHull::new(&PointSet::from_points(&normals).expect("normal agents exist"))
        .map_err(|e| VerifyError(format!("initial hull: {e}")))?;
    let d = sim.dim;
    report.sampled_steps = sample_steps(last as u64, depth_checks);
    for &t in &report.sampled_steps {
        let ti = t as usize;
        let pos = positions(ti);
        let views = gather_views(&sim.network, &sim.agents, &starts, &pos, t, seed);
        for (i, view) in views.iter().enumerate() {
            let Some(view) = view else { continue };
            let row = &steps[ti][i];
            let n_adv = view
                .senders
                .iter()
                .filter(|&&j| !sim.agents[j].role.is_normal())
                .count();
            let bound = sim.method.resilience_bound(view.senders.len(), d);
            if row.n_neighbors != Some(view.senders.len())
                || row.n_adversarial != Some(n_adv)
                || row.bound != Some(bound)
                || row.resilient != Some(n_adv <= bound)
            {
                bad.push(format!("step {t} agent {i}: neighborhood columns differ from the replay"));
            }

            report.hull_checks += 1;
            let margin = hull0.margin(&row.position);
            if margin < -HULL_TOL {
                report.oracle_safety_violations += 1;
            }
            let flag = row.in_hull.unwrap_or(false);
            if (flag && margin < -HULL_TOL) || (!flag && margin > HULL_TOL) {
                bad.push(format!(
                    "step {t} agent {i}: safety flag {} but brute-force hull margin {margin:e}",
                    u8::from(flag)
                ));
            }

            if ti == last {
                continue;
            }
            let out = adrc_step(
                &view.values,
                &pos[i],
                sim.agents[i].alpha,
                sim.method,
                bound,
                agent_seed(seed, t, i),
            );
            let status = match out.status {
                StepStatus::Updated => RowStatus::Updated,
                StepStatus::NoGuarantee => RowStatus::NoGuarantee,
                StepStatus::Failed => RowStatus::Failed,
            };
            let recomputed = out.safe_point.as_ref().map(|p| p.coords().to_vec());
            let matches = match (&recomputed, &row.safe_point) {
                (Some(a), Some(b)) => same(a, b),
                (None, None) => true,
                _ => false,
            };
            if status != row.status || !matches {
                bad.push(format!("step {t} agent {i}: safe point differs from the recomputation"));
            }
            if let Some(s) = &row.safe_point {
                if view.values.len() > depth_limit(d) {
                    report.depth_skipped += 1;
                    continue;
                }
                report.depth_checks += 1;
                let need = required_depth(sim.method, view.values.len(), d);
                match oracle_depth(s, &view.values) {
                    Ok(got) if got >= need => {}
                    Ok(got) => bad.push(format!(
                        "step {t} agent {i}: safe point depth {got} below the required {need}"
                    )),
                    Err(e) => bad.push(format!("step {t} agent {i}: depth check failed: {e}")),
                }
            }
        }
    }
    report.discrepancies = bad;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sampling_spreads_and_keeps_ends() {
        assert_eq!(sample_steps(10, 3), vec![0, 5, 10]);
        assert_eq!(sample_steps(3, 10), vec![0, 1, 2, 3]);
        assert_eq!(sample_steps(7, 1), vec![0]);
        let s = sample_steps(100, 7);
        assert_eq!((s[0], *s.last().unwrap(), s.len()), (0, 100, 7));
    }
}
