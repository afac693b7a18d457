mod common;

use centerstone_core::consensus::{
    adrc_step, agent_seed, gather_views, run, AdversaryBehavior, AgentState, Network, NetworkMode,
    Role, SafePointMethod, SimConfig, StepReport, StepStatus, Workspace,
};
use centerstone_core::{in_convex_hull, Point, PointSet};
use common::uniform_set;

fn ws() -> Workspace {
    Workspace {
        min: vec![-1.0, -1.0],
        max: vec![1.0, 1.0],
    }
}

/// `normal` normal agents and `adv` adversaries placed uniformly in the box
/// `[-w, w]^d`, sensing radius `radius` (or a complete graph).
fn mixed(
    seed: u64,
    normal: usize,
    adv: usize,
    behavior: AdversaryBehavior,
    radius: Option<f64>,
    method: SafePointMethod,
) -> SimConfig {
    let d = 2;
    let ps = uniform_set(seed, normal + adv, d);
    let agents: Vec<AgentState> = (0..normal + adv)
        .map(|i| AgentState {
            id: i,
            role: if i < normal {
                Role::Normal
            } else {
                Role::Adversarial(behavior.clone())
            },
            x: Point::new(ps.point(i).iter().map(|x| 0.5 * x).collect()).unwrap(),
            alpha: 0.8,
        })
        .collect();
    let n = agents.len();
    let mode = match radius {
        Some(radius) => NetworkMode::Disk { radius },
        None => NetworkMode::Fixed(
            (0..n)
                .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (j, i)))
                .collect(),
        ),
    };
    SimConfig {
        dim: d,
        network: Network::new(n, mode).unwrap(),
        agents,
        method,
        epsilon: 1e-3,
        max_steps: 200,
        seed,
    }
}

fn all_resilient(reports: &[StepReport]) -> bool {
    reports.iter().all(|r| r.worst_margin >= 0)
}

#[test]
fn ten_agents_agree_quickly() {
    for seed in 0..5 {
        let cfg = mixed(seed, 10, 0, AdversaryBehavior::Stationary, None, SafePointMethod::Centerpoint);
        let reports = run(cfg).unwrap();
        let last = reports.last().unwrap();
        assert!(last.diameter < 1e-3 && last.t <= 100, "seed {seed}: t={}", last.t);
        assert!(reports.iter().all(|r| r.safe));
    }
}

#[test]
fn runs_are_deterministic() {
    let behavior = AdversaryBehavior::Equivocate {
        inner: Box::new(AdversaryBehavior::Oscillating { side: 0.1 }),
        spread: 0.05,
    };
    for method in [SafePointMethod::Centerpoint, SafePointMethod::Tverberg, SafePointMethod::IteratedRadon(2)] {
        let cfg = mixed(11, 16, 3, behavior.clone(), Some(0.6), method);
        assert_eq!(run(cfg.clone()).unwrap(), run(cfg).unwrap());
    }
}

/// Rebuilding one agent's inputs from the log and calling `adrc_step` alone
/// reproduces the full run bit for bit.
#[test]
fn updates_are_local() {
    let behavior = AdversaryBehavior::Equivocate {
        inner: Box::new(AdversaryBehavior::MoveAway { workspace: ws() }),
        spread: 0.05,
    };
    let cfg = mixed(5, 20, 3, behavior, Some(0.7), SafePointMethod::Centerpoint);
    let reports = run(cfg.clone()).unwrap();
    let starts: Vec<Point> = cfg.agents.iter().map(|a| a.x.clone()).collect();
    let mut checked = 0;
    for w in reports.windows(2) {
        let (now, next) = (&w[0], &w[1]);
        let positions: Vec<Point> = now.agents.iter().map(|a| a.position.clone()).collect();
        let views = gather_views(&cfg.network, &cfg.agents, &starts, &positions, now.t, cfg.seed);
        for (i, view) in views.iter().enumerate() {
            let Some(view) = view else { continue };
            let a = &now.agents[i];
            let out = adrc_step(
                &view.values,
                &a.position,
                cfg.agents[i].alpha,
                cfg.method,
                a.bound,
                agent_seed(cfg.seed, now.t, i),
            );
            assert_eq!(out.next.coords(), next.agents[i].position.coords(), "t={} agent {i}", now.t);
            assert_eq!(out.safe_point, a.safe_point);
            checked += 1;
        }
    }
    assert!(checked >= 20);
}

/// With every adversary count inside the bound, each step's normal hull is
/// inside the previous one and inside the initial one.
#[test]
fn normal_hull_shrinks_when_resilient() {
    let behaviors = [
        AdversaryBehavior::Stationary,
        AdversaryBehavior::Oscillating { side: 0.1 },
        AdversaryBehavior::MoveAway { workspace: ws() },
    ];
    let mut runs = 0;
    for seed in 0..12u64 {
        let cfg = mixed(seed, 18, 2, behaviors[seed as usize % 3].clone(), Some(0.8), SafePointMethod::Centerpoint);
        let normal: Vec<usize> = (0..18).collect();
        let reports = run(cfg).unwrap();
        if !all_resilient(&reports) {
            continue;
        }
        runs += 1;
        let hull = |r: &StepReport| {
            let pts: Vec<Point> = normal.iter().map(|&i| r.agents[i].position.clone()).collect();
            PointSet::from_points(&pts).unwrap()
        };
        for w in reports.windows(2) {
            assert!(w[1].safe, "seed {seed} t={}", w[1].t);
            let before = hull(&w[0]);
            for &i in &normal {
                let p = w[1].agents[i].position.coords();
                assert!(in_convex_hull(p, &before, false).unwrap(), "seed {seed} t={} agent {i}", w[1].t);
            }
        }
    }
    assert!(runs >= 6, "only {runs} resilient runs");
}

/// Too many adversaries for the bound get flagged, and isolated agents stay
/// where they are.
#[test]
fn bound_violations_are_reported() {
    // Three normals, two colluding adversaries, complete graph: n = 5,
    // centerpoint tolerates ⌈5/3⌉ − 1 = 1.
    let cfg = mixed(3, 3, 2, AdversaryBehavior::Stationary, None, SafePointMethod::Centerpoint);
    let reports = run(cfg).unwrap();
    let first = &reports[0];
    for a in &first.agents[..3] {
        assert_eq!((a.n_neighbors, a.n_adversarial, a.bound), (5, 2, 1));
        assert!(!a.resilient);
    }
    assert_eq!(first.worst_margin, -1);

    for method in [SafePointMethod::Centerpoint, SafePointMethod::Tverberg] {
        let cfg = mixed(3, 3, 0, AdversaryBehavior::Stationary, Some(1e-6), method);
        let reports = run(cfg).unwrap();
        let (first, second) = (&reports[0], &reports[1]);
        for (a, b) in first.agents.iter().zip(&second.agents) {
            assert_eq!(a.n_neighbors, 1);
            assert_ne!(a.status, Some(StepStatus::NoGuarantee));
            assert_eq!(a.position, b.position);
        }
    }
}
