//! Built-in scenarios. Each generator is a pure function of (name, seed) and
//! returns a fully explicit configuration.

use std::fmt;

use centerstone_core::consensus::SafePointMethod;
use centerstone_core::rng::{self, StreamRng};
use centerstone_core::{Point, PointSet};
use rand::Rng;

use crate::config::{
    AgentSpec, AgentsSpec, BehaviorSpec, FixedSpec, NetworkSpec, RoleSpec, ScenarioConfig,
    WorkspaceSpec, SCHEMA,
};

const TAG_SCENARIO: u64 = 0x7363_656e;

pub const NAMES: &[&str] = &[
    "scenario_120_stationary",
    "scenario_120_oscillating",
    "scenario_120_moveaway",
    "scenario_28_split",
    "scenario_45_mixed",
    "tight_triangle:<n>",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownScenario(pub String);

impl fmt::Display for UnknownScenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "unknown scenario {:?}; available: {}",
            self.0,
            NAMES.join(", ")
        )
    }
}

impl std::error::Error for UnknownScenario {}

pub fn generate(name: &str, seed: u64) -> Result<ScenarioConfig, UnknownScenario> {
    let mut cfg = match name {
        "scenario_120_stationary" => scenario_120(BehaviorSpec::Stationary, seed),
        "scenario_120_oscillating" => scenario_120(BehaviorSpec::Oscillating { side: 0.1 }, seed),
        "scenario_120_moveaway" => scenario_120(BehaviorSpec::MoveAway, seed),
        "scenario_28_split" => scenario_28_split(seed),
        "scenario_45_mixed" => scenario_45_mixed(seed),
        _ => {
            let n = tight_triangle_size(name).ok_or_else(|| UnknownScenario(name.to_owned()))?;
            tight_triangle(n, seed)
        }
    };
    cfg.name = Some(name.to_owned());
    cfg.seed = Some(seed);
    Ok(cfg)
}

/// Accepts `tight_triangle:N` and `tight_triangle(N)` with `N` a positive
/// multiple of 3.
fn tight_triangle_size(name: &str) -> Option<usize> {
    let rest = name.strip_prefix("tight_triangle")?;
    let digits = rest
        .strip_prefix(':')
        .or_else(|| rest.strip_prefix('(').and_then(|r| r.strip_suffix(')')))?;
    let n: usize = digits.parse().ok()?;
    (n >= 3 && n % 3 == 0).then_some(n)
}

fn stream(name: &str, seed: u64) -> StreamRng {
    let tag = name
        .bytes()
        .fold(0u64, |h, b| h.wrapping_mul(31).wrapping_add(u64::from(b)));
    rng::substream(seed, &[TAG_SCENARIO, tag])
}

fn uniform(r: &mut StreamRng, lo: [f64; 2], hi: [f64; 2]) -> Vec<f64> {
    vec![r.random_range(lo[0]..hi[0]), r.random_range(lo[1]..hi[1])]
}

fn normal(position: Vec<f64>) -> AgentSpec {
    AgentSpec {
        position,
        role: RoleSpec::Normal,
        behavior: None,
        alpha: None,
    }
}

fn adversary(position: Vec<f64>, behavior: BehaviorSpec) -> AgentSpec {
    AgentSpec {
        position,
        role: RoleSpec::Adversarial,
        behavior: Some(behavior),
        alpha: None,
    }
}

fn base(ws: ([f64; 2], [f64; 2]), agents: Vec<AgentSpec>, network: NetworkSpec) -> ScenarioConfig {
    ScenarioConfig {
        schema: SCHEMA.to_owned(),
        name: None,
        dimension: 2,
        workspace: WorkspaceSpec {
            min: ws.0.to_vec(),
            max: ws.1.to_vec(),
        },
        agents: AgentsSpec::Explicit(agents),
        network,
        method: "centerpoint".to_owned(),
        alpha: 0.8,
        epsilon: 1e-3,
        max_steps: 500,
        seed: None,
    }
}

fn d2(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// 100 normal and 20 adversarial agents on a disk graph of radius 0.45 in
/// `W = [-1, 1]²`. Normals start uniformly in `[-0.5, 0.5]²` and adversaries
/// in `[-0.7, 0.7]²`; spread over all of `W`, a radius-0.45 disk graph
/// fragments into several clusters even under plain averaging. Placements
/// are redrawn until the normal disk graph is connected and every normal
/// agent starts with at least three neighbors and no more adversaries than
/// the centerpoint bound tolerates.
fn scenario_120(behavior: BehaviorSpec, seed: u64) -> ScenarioConfig {
    const RADIUS: f64 = 0.45;
    let lo = [-1.0, -1.0];
    let hi = [1.0, 1.0];
    let mut r = stream("scenario_120", seed);
    loop {
        let normals: Vec<Vec<f64>> = (0..100)
            .map(|_| uniform(&mut r, [-0.5, -0.5], [0.5, 0.5]))
            .collect();
        let advs: Vec<Vec<f64>> = (0..20)
            .map(|_| uniform(&mut r, [-0.7, -0.7], [0.7, 0.7]))
            .collect();
        if !disk_connected(&normals, RADIUS) {
            continue;
        }
        let ok = normals.iter().all(|p| {
            let n_norm = normals.iter().filter(|q| d2(p, q) <= RADIUS * RADIUS).count();
            let n_adv = advs.iter().filter(|q| d2(p, q) <= RADIUS * RADIUS).count();
            let n = n_norm + n_adv;
            n >= 3 && n_adv <= SafePointMethod::Centerpoint.resilience_bound(n, 2)
        });
        if !ok {
            continue;
        }
        let mut agents: Vec<AgentSpec> = normals.into_iter().map(normal).collect();
        agents.extend(advs.into_iter().map(|p| adversary(p, behavior.clone())));
        return base((lo, hi), agents, NetworkSpec::Disk { radius: RADIUS });
    }
}

fn disk_connected(points: &[Vec<f64>], radius: f64) -> bool {
    let n = points.len();
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for j in 0..n {
            if !seen[j] && d2(&points[i], &points[j]) <= radius * radius {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Two clusters of 8 normal agents, every normal observing all 16 normals
/// and the 6 stationary adversaries on its own side: 22 neighbors each,
/// within the centerpoint bound (7) but not the Tverberg bound (5).
fn scenario_28_split(seed: u64) -> ScenarioConfig {
    let mut r = stream("scenario_28_split", seed);
    let (y0, y1) = (-0.375, 0.375);
    let mut agents = Vec::with_capacity(28);
    for (x0, x1) in [(-0.6, -0.2), (0.2, 0.6)] {
        for _ in 0..8 {
            agents.push(normal(uniform(&mut r, [x0, y0], [x1, y1])));
        }
    }
    for (x0, x1) in [(-1.5, -1.1), (1.1, 1.5)] {
        for _ in 0..6 {
            agents.push(adversary(
                uniform(&mut r, [x0, y0], [x1, y1]),
                BehaviorSpec::Stationary,
            ));
        }
    }
    let mut edges = Vec::new();
    for i in 0..16 {
        for j in 0..16 {
            if i != j {
                edges.push([j, i]);
            }
        }
        let side = if i < 8 { 16..22 } else { 22..28 };
        for a in side {
            edges.push([a, i]);
        }
    }
    base(
        ([-1.5, y0], [1.5, y1]),
        agents,
        NetworkSpec::Fixed(FixedSpec {
            edges,
            undirected: false,
        }),
    )
}

/// 40 normal and 5 stationary adversarial agents in `[-1, 1]²`. Two groups
/// of 19 normals (west and east) observe each other and one adversary on
/// their outer side. Two outlying normals are the low-degree agents: Y1 sees
/// itself, its 4 nearest west normals and 2 adversaries (7 neighbors); Y2
/// sees itself, its 5 nearest east normals and 2 adversaries (8 neighbors).
/// Both are within the centerpoint bound (2) and beyond the Tverberg bound
/// (1). The fifth adversary sits above the groups and is seen by the 3
/// highest normals of each group.
fn scenario_45_mixed(seed: u64) -> ScenarioConfig {
    let mut r = stream("scenario_45_mixed", seed);
    let (lo, hi) = ([-1.0, -1.0], [1.0, 1.0]);
    let mut agents = Vec::with_capacity(45);
    for (x0, x1) in [(-0.5, -0.15), (0.15, 0.5)] {
        for _ in 0..19 {
            agents.push(normal(uniform(&mut r, [x0, -0.3], [x1, 0.3])));
        }
    }
    let west: Vec<usize> = (0..19).collect();
    let east: Vec<usize> = (19..38).collect();
    let (y1, y2) = (38, 39);
    agents.push(normal(uniform(&mut r, [-0.75, -0.05], [-0.65, 0.05])));
    agents.push(normal(uniform(&mut r, [0.65, 0.05], [0.75, 0.15])));
    // 40, 41 watch Y1; 42, 43 watch Y2; 44 is the top one.
    for _ in 0..2 {
        agents.push(adversary(uniform(&mut r, [-0.98, -0.4], [-0.85, 0.4]), BehaviorSpec::Stationary));
    }
    for _ in 0..2 {
        agents.push(adversary(uniform(&mut r, [0.85, -0.4], [0.98, 0.4]), BehaviorSpec::Stationary));
    }
    agents.push(adversary(uniform(&mut r, [-0.1, 0.6], [0.1, 0.75]), BehaviorSpec::Stationary));

    let mut edges = Vec::new();
    let main: Vec<usize> = west.iter().chain(&east).copied().collect();
    for &i in &main {
        for &j in &main {
            if i != j {
                edges.push([j, i]);
            }
        }
    }
    for &i in &west {
        edges.push([40, i]);
    }
    for &i in &east {
        edges.push([42, i]);
    }
    let pos = |i: usize| agents[i].position.clone();
    let nearest = |group: &[usize], p: &[f64], k: usize| -> Vec<usize> {
        let mut g = group.to_vec();
        g.sort_by(|&a, &b| d2(&pos(a), p).total_cmp(&d2(&pos(b), p)).then(a.cmp(&b)));
        g.truncate(k);
        g
    };
    for j in nearest(&west, &pos(y1), 4).into_iter().chain([40, 41]) {
        edges.push([j, y1]);
    }
    for j in nearest(&east, &pos(y2), 5).into_iter().chain([42, 43]) {
        edges.push([j, y2]);
    }
    let top = pos(44);
    for group in [&west, &east] {
        for i in nearest(group, &[top[0], 10.0], 3) {
            edges.push([44, i]);
        }
    }
    base(
        (lo, hi),
        agents,
        NetworkSpec::Fixed(FixedSpec {
            edges,
            undirected: false,
        }),
    )
}

/// Half-width of each tight-triangle cluster.
pub const TIGHT_SPREAD: f64 = 1e-3;

/// `3m` points in three clusters of `m` around the vertices of an
/// equilateral triangle, each perturbed by at most [`TIGHT_SPREAD`] per
/// coordinate. Removing one whole cluster leaves no common interior, so no
/// `m`-safe point exists, while `m − 1` removals always leave a point of
/// every cluster.
pub fn tight_triangle_points(m: usize, seed: u64) -> PointSet {
    let mut r = stream("tight_triangle", seed ^ m as u64);
    let pts: Vec<Point> = triangle_vertices()
        .iter()
        .flat_map(|v| {
            (0..m)
                .map(|_| {
                    let c = [
                        v[0] + r.random_range(-TIGHT_SPREAD..TIGHT_SPREAD),
                        v[1] + r.random_range(-TIGHT_SPREAD..TIGHT_SPREAD),
                    ];
                    Point::new(c.to_vec()).expect("finite")
                })
                .collect::<Vec<_>>()
        })
        .collect();
    PointSet::from_points(&pts).expect("nonempty")
}

fn triangle_vertices() -> [[f64; 2]; 3] {
    let h = 3f64.sqrt() / 2.0;
    [[-0.5, -h / 3.0], [0.5, -h / 3.0], [0.0, 2.0 * h / 3.0]]
}

/// Complete graph over [`tight_triangle_points`]; the third cluster is
/// adversarial and stationary, exactly one more than the centerpoint bound.
fn tight_triangle(n: usize, seed: u64) -> ScenarioConfig {
    let m = n / 3;
    let ps = tight_triangle_points(m, seed);
    let agents = ps
        .iter()
        .enumerate()
        .map(|(i, p)| {
            if i >= 2 * m {
                adversary(p.to_vec(), BehaviorSpec::Stationary)
            } else {
                normal(p.to_vec())
            }
        })
        .collect();
    let edges = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| [j, i]))
        .collect();
    base(
        ([-1.0, -1.0], [1.0, 1.0]),
        agents,
        NetworkSpec::Fixed(FixedSpec {
            edges,
            undirected: false,
        }),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use centerstone_core::consensus::Network;

    fn neighborhood_sizes(cfg: &ScenarioConfig) -> Vec<(usize, usize, usize)> {
        let sim = cfg.to_sim(cfg.seed.unwrap()).unwrap();
        let pos: Vec<Point> = sim.agents.iter().map(|a| a.x.clone()).collect();
        let net: &Network = &sim.network;
        (0..sim.agents.len())
            .filter(|&i| sim.agents[i].role.is_normal())
            .map(|i| {
                let nb = net.in_neighbors(i, &pos);
                let adv = nb.iter().filter(|&&j| !sim.agents[j].role.is_normal()).count();
                (i, nb.len(), adv)
            })
            .collect()
    }

    #[test]
    fn split_neighborhoods_have_22() {
        let cfg = generate("scenario_28_split", 4).unwrap();
        for (_, n, adv) in neighborhood_sizes(&cfg) {
            assert_eq!((n, adv), (22, 6));
        }
    }

    #[test]
    fn mixed_has_two_low_degree_agents() {
        let cfg = generate("scenario_45_mixed", 4).unwrap();
        let sizes = neighborhood_sizes(&cfg);
        assert_eq!(sizes.len(), 40);
        let y: Vec<_> = sizes.iter().filter(|s| s.1 < 10).collect();
        assert_eq!(y, [&(38, 7, 2), &(39, 8, 2)]);
        for &(_, n, adv) in &sizes {
            assert!(adv <= SafePointMethod::Centerpoint.resilience_bound(n, 2));
        }
    }

    #[test]
    fn large_scenario_counts() {
        let cfg = generate("scenario_120_moveaway", 1).unwrap();
        let AgentsSpec::Explicit(a) = &cfg.agents else { panic!() };
        assert_eq!(a.iter().filter(|a| a.role == RoleSpec::Normal).count(), 100);
        assert_eq!(a.iter().filter(|a| a.role == RoleSpec::Adversarial).count(), 20);
        assert!(a.iter().all(|a| a.position.iter().all(|c| c.abs() <= 1.0)));
    }

    #[test]
    fn generators_are_pure() {
        for name in ["scenario_45_mixed", "tight_triangle:9"] {
            assert_eq!(generate(name, 11), generate(name, 11));
            assert_ne!(generate(name, 11), generate(name, 12));
        }
    }

    #[test]
    fn names() {
        assert_eq!(tight_triangle_size("tight_triangle(6)"), Some(6));
        assert_eq!(tight_triangle_size("tight_triangle:12"), Some(12));
        assert_eq!(tight_triangle_size("tight_triangle:7"), None);
        assert!(generate("scenario_99", 0).is_err());
    }
}
