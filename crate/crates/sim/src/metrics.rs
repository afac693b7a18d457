//! Run summary written to `metrics.json`.

use serde::{Deserialize, Serialize};

use crate::trajectory::TrajectoryLog;

/// Linkage distance for counting terminal clusters.
pub const CLUSTER_LINKAGE: f64 = 1e-2;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metrics {
    pub method: String,
    pub seed: u64,
    pub config_sha256: String,
    pub epsilon: f64,
    pub max_steps: u64,
    /// Number of recorded steps, the terminal one included.
    pub steps: u64,
    pub final_diameter: f64,
    /// First step whose normal diameter is below epsilon; `null` if never.
    pub steps_to_epsilon: Option<u64>,
    /// Normal agent-steps outside the initial normal hull.
    pub safety_violations: u64,
    /// Normal agent-steps that held position for lack of a safe point.
    pub flagged_updates: u64,
    /// Normal agent-steps whose true adversary count exceeded the bound.
    pub resilience_violations: u64,
    /// Per step, the minimum over normal agents of bound − adversaries seen.
    pub worst_margin: Vec<i64>,
    /// Single-linkage clusters of the final normal positions.
    pub terminal_clusters: usize,
}

/// Number of groups when points closer than `linkage` are chained together.
pub fn cluster_count(points: &[Vec<f64>], linkage: f64) -> usize {
    let n = points.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    let l2 = linkage * linkage;
    for i in 0..n {
        for j in i + 1..n {
            let d2: f64 = points[i]
                .iter()
                .zip(&points[j])
                .map(|(a, b)| (a - b) * (a - b))
                .sum();
            if d2 <= l2 {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    (0..n).filter(|&i| find(&mut parent, i) == i).count()
}

fn diameter(points: &[&Vec<f64>]) -> f64 {
    let mut best = 0.0f64;
    for (a, p) in points.iter().enumerate() {
        for q in &points[a + 1..] {
            let d2: f64 = p.iter().zip(q.iter()).map(|(x, y)| (x - y) * (x - y)).sum();
            best = best.max(d2);
        }
    }
    best.sqrt()
}

impl Metrics {
    /// Summarizes a log. Every quantity is recomputed from the rows.
    pub fn from_log(log: &TrajectoryLog, epsilon: f64, max_steps: u64) -> Metrics {
        let mut worst_margin = Vec::new();
        let mut safety_violations = 0;
        let mut flagged_updates = 0;
        let mut resilience_violations = 0;
        let mut steps_to_epsilon = None;
        let mut final_diameter = 0.0;
        let mut final_positions = Vec::new();

        let mut rows = log.rows.as_slice();
        while let Some(first) = rows.first() {
            let t = first.t;
            let len = rows.iter().take_while(|r| r.t == t).count();
            let (step, rest) = rows.split_at(len);
            rows = rest;

            let normals: Vec<_> = step.iter().filter(|r| r.normal).collect();
            let mut worst = i64::MAX;
            for r in &normals {
                if r.in_hull == Some(false) {
                    safety_violations += 1;
                }
                if r.status.is_flagged() {
                    flagged_updates += 1;
                }
                if r.resilient == Some(false) {
                    resilience_violations += 1;
                }
                if let (Some(b), Some(a)) = (r.bound, r.n_adversarial) {
                    worst = worst.min(b as i64 - a as i64);
                }
            }
            worst_margin.push(if worst == i64::MAX { 0 } else { worst });
            let positions: Vec<&Vec<f64>> = normals.iter().map(|r| &r.position).collect();
            final_diameter = diameter(&positions);
            if steps_to_epsilon.is_none() && final_diameter < epsilon {
                steps_to_epsilon = Some(t);
            }
            if rows.is_empty() {
                final_positions = positions.into_iter().cloned().collect();
            }
        }

        Metrics {
            method: log.header.method.clone(),
            seed: log.header.seed,
            config_sha256: log.header.config_sha256.clone(),
            epsilon,
            max_steps,
            steps: worst_margin.len() as u64,
            final_diameter,
            steps_to_epsilon,
            safety_violations,
            flagged_updates,
            resilience_violations,
            worst_margin,
            terminal_clusters: cluster_count(&final_positions, CLUSTER_LINKAGE),
        }
    }

    pub fn converged(&self) -> bool {
        self.steps_to_epsilon.is_some()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("metrics serialize");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clusters_chain() {
        let pts = vec![
            vec![0.0, 0.0],
            vec![0.009, 0.0],
            vec![0.018, 0.0],
            vec![1.0, 1.0],
        ];
        assert_eq!(cluster_count(&pts, 1e-2), 2);
        assert_eq!(cluster_count(&pts, 1e-3), 4);
        assert_eq!(cluster_count(&[], 1e-2), 0);
    }
}
