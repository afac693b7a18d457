//! Synchronous resilient consensus.
//!
//! Every step, each normal agent collects the values its in-neighbors send
//! (adversaries may lie, and equivocators lie differently to each receiver),
//! computes a safe point `s_i` of that multiset, and moves to
//! `alpha * s_i + (1 - alpha) * x_i`. Agents tolerate as many faulty
//! neighbors as their method's bound allows at the current neighborhood size;
//! when no safe point can be produced they hold position and the step is
//! flagged.

use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::centerpoint::{
    self, exact_depth_bound, radon_depth_bound, CenterpointConfig, Jitter,
};
use crate::error::GeometryError;
use crate::geometry::in_convex_hull;
use crate::point::{dist_sq, Point, PointSet};
use crate::rng;
use crate::tverberg::{tverberg_part_bound, tverberg_safe_point, TverbergSafePoint};

/// How a normal agent computes its safe point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SafePointMethod {
    /// Exact interior centerpoint (dimensions 1–3).
    Centerpoint,
    /// Iterated Radon points with the given `r > 1` (dimensions ≥ 2).
    IteratedRadon(u32),
    Tverberg,
}

impl SafePointMethod {
    /// Largest number of faulty values among `n` (self included) that the
    /// method tolerates in dimension `d`.
    pub fn resilience_bound(self, n: usize, d: usize) -> usize {
        let guaranteed = match self {
            SafePointMethod::Centerpoint => exact_depth_bound(n, d),
            SafePointMethod::IteratedRadon(r) => radon_depth_bound(n, d, r),
            SafePointMethod::Tverberg => tverberg_part_bound(n, d),
        };
        guaranteed.saturating_sub(1)
    }
}

/// Whether a neighborhood of `n` values (self included) with `n_f` faulty
/// ones is within the method's bound.
pub fn resilience_condition(n: usize, n_f: usize, d: usize, method: SafePointMethod) -> bool {
    n_f <= method.resilience_bound(n, d)
}

/// Axis-aligned box.
#[derive(Debug, Clone, PartialEq)]
pub struct Workspace {
    pub min: Vec<f64>,
    pub max: Vec<f64>,
}

impl Workspace {
    pub fn dim(&self) -> usize {
        self.min.len()
    }

    /// Corner of the box nearest to `p` (ties go to the lower bound).
    pub fn nearest_corner(&self, p: &[f64]) -> Vec<f64> {
        p.iter()
            .zip(self.min.iter().zip(&self.max))
            .map(|(x, (lo, hi))| if (x - lo).abs() <= (hi - x).abs() { *lo } else { *hi })
            .collect()
    }

    pub fn contains(&self, p: &[f64]) -> bool {
        p.iter()
            .zip(self.min.iter().zip(&self.max))
            .all(|(x, (lo, hi))| *lo <= *x && *x <= *hi)
    }
}

/// Distance an adversary using [`AdversaryBehavior::MoveAway`] covers per
/// step.
pub const MOVE_AWAY_STEP: f64 = 0.01;

#[derive(Debug, Clone, PartialEq)]
pub enum AdversaryBehavior {
    Stationary,
    /// Visits the corners of an axis-aligned square anchored at the starting
    /// position, one per step, in counter-clockwise order.
    Oscillating { side: f64 },
    /// Walks toward the nearest workspace corner and stops there.
    MoveAway { workspace: Workspace },
    /// Follows `inner` but reports a different perturbed value to each
    /// receiver.
    Equivocate {
        inner: Box<AdversaryBehavior>,
        spread: f64,
    },
}

impl AdversaryBehavior {
    /// Physical position at step `t` for an agent that started at `start`.
    pub fn position(&self, start: &Point, t: u64) -> Point {
        match self {
            AdversaryBehavior::Stationary => start.clone(),
            AdversaryBehavior::Oscillating { side } => {
                let (dx, dy) = match t % 4 {
                    0 => (0.0, 0.0),
                    1 => (*side, 0.0),
                    2 => (*side, *side),
                    _ => (0.0, *side),
                };
                let mut c = start.coords().to_vec();
                c[0] += dx;
                if c.len() > 1 {
                    c[1] += dy;
                }
                Point::from_vec_unchecked(c)
            }
            AdversaryBehavior::MoveAway { workspace } => {
                let corner = workspace.nearest_corner(start);
                let dist = start.dist(&corner);
                if dist == 0.0 {
                    return start.clone();
                }
                let travelled = (t as f64 * MOVE_AWAY_STEP).min(dist);
                let f = travelled / dist;
                Point::from_vec_unchecked(
                    start
                        .iter()
                        .zip(&corner)
                        .map(|(s, c)| s + f * (c - s))
                        .collect(),
                )
            }
            AdversaryBehavior::Equivocate { inner, .. } => inner.position(start, t),
        }
    }

    /// Value reported to `receiver` at step `t`.
    fn reported(&self, start: &Point, t: u64, sender: usize, receiver: usize, seed: u64) -> Point {
        match self {
            AdversaryBehavior::Equivocate { inner, spread } => {
                let base = inner.reported(start, t, sender, receiver, seed);
                let mut r = rng::substream(
                    seed,
                    &[rng::TAG_EQUIVOCATE, t, sender as u64, receiver as u64],
                );
                let off = rng::offset_in_ball(&mut r, base.dim(), *spread);
                Point::from_vec_unchecked(base.iter().zip(&off).map(|(a, b)| a + b).collect())
            }
            other => other.position(start, t),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Role {
    Normal,
    Adversarial(AdversaryBehavior),
}

impl Role {
    pub fn is_normal(&self) -> bool {
        matches!(self, Role::Normal)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AgentState {
    pub id: usize,
    pub role: Role,
    pub x: Point,
    pub alpha: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum NetworkMode {
    /// Directed edges `(from, to)`: `to` observes `from`.
    Fixed(Vec<(usize, usize)>),
    /// `j` is observed by `i` whenever their true positions are within
    /// `radius`.
    Disk { radius: f64 },
}

/// Observation graph; every agent always observes itself.
#[derive(Debug, Clone, PartialEq)]
pub struct Network {
    n: usize,
    mode: NetworkMode,
    /// In-neighbor lists (sorted, self included) for fixed graphs.
    fixed_in: Vec<Vec<usize>>,
}

impl Network {
    pub fn new(n: usize, mode: NetworkMode) -> Result<Self, SimError> {
        let mut fixed_in = Vec::new();
        match &mode {
            NetworkMode::Fixed(edges) => {
                fixed_in = (0..n).map(|i| vec![i]).collect();
                for &(j, i) in edges {
                    if j >= n || i >= n {
                        return Err(SimError::EdgeOutOfRange { from: j, to: i });
                    }
                    fixed_in[i].push(j);
                }
                for list in &mut fixed_in {
                    list.sort_unstable();
                    list.dedup();
                }
            }
            NetworkMode::Disk { radius } => {
                if !(radius.is_finite() && *radius > 0.0) {
                    return Err(SimError::NonPositiveRadius);
                }
            }
        }
        Ok(Network { n, mode, fixed_in })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn mode(&self) -> &NetworkMode {
        &self.mode
    }

    /// Sorted in-neighbors of `i` (self included) given true positions.
    pub fn in_neighbors(&self, i: usize, positions: &[Point]) -> Vec<usize> {
        match &self.mode {
            NetworkMode::Fixed(_) => self.fixed_in[i].clone(),
            NetworkMode::Disk { radius } => {
                let r2 = radius * radius;
                (0..self.n)
                    .filter(|&j| j == i || dist_sq(&positions[j], &positions[i]) <= r2)
                    .collect()
            }
        }
    }
}

/// What a normal agent received in one step.
#[derive(Debug, Clone, PartialEq)]
pub struct View {
    /// Sender ids, ascending; the receiver itself is among them.
    pub senders: Vec<usize>,
    /// Received values, in sender order.
    pub values: PointSet,
}

/// Values each normal agent receives at step `t`; `None` for adversaries.
/// `positions` are the true positions at `t`, which also determine disk
/// edges.
pub fn gather_views(
    net: &Network,
    agents: &[AgentState],
    starts: &[Point],
    positions: &[Point],
    t: u64,
    seed: u64,
) -> Vec<Option<View>> {
    let d = positions.first().map_or(0, Point::dim);
    (0..agents.len())
        .map(|i| {
            if !agents[i].role.is_normal() {
                return None;
            }
            let senders = net.in_neighbors(i, positions);
            let mut values = PointSet::with_capacity(d, senders.len());
            for &j in &senders {
                match &agents[j].role {
                    Role::Normal => values.push(&positions[j]),
                    Role::Adversarial(b) => values.push(&b.reported(&starts[j], t, j, i, seed)),
                }
            }
            Some(View { senders, values })
        })
        .collect()
}

/// Result classification of one agent's step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepStatus {
    Updated,
    /// The method cannot guarantee a safe point; position held.
    NoGuarantee,
    /// The safe-point computation failed (e.g. too few neighbors); position
    /// held.
    Failed,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AdrcOutcome {
    pub next: Point,
    pub safe_point: Option<Point>,
    pub status: StepStatus,
}

/// Safe point of a view under `method`, assuming `n_f` faulty values.
pub fn safe_point(
    view: &PointSet,
    method: SafePointMethod,
    n_f: usize,
    seed: u64,
) -> Result<Option<Point>, GeometryError> {
    let d = view.dim();
    if n_f > method.resilience_bound(view.len(), d) {
        return Ok(None);
    }
    let cfg = CenterpointConfig {
        seed,
        jitter: Jitter::Auto,
    };
    match method {
        SafePointMethod::Centerpoint => Ok(Some(centerpoint::centerpoint(view, &cfg)?.point)),
        SafePointMethod::IteratedRadon(r) => {
            Ok(Some(centerpoint::iterated_radon_centerpoint(view, r, &cfg)?.point))
        }
        SafePointMethod::Tverberg => match tverberg_safe_point(view, n_f)? {
            TverbergSafePoint::Point(p) => Ok(Some(p)),
            TverbergSafePoint::NoGuarantee => Ok(None),
        },
    }
}

/// One ADRC update: `alpha * s + (1 - alpha) * x_i`, or `x_i` unchanged when
/// no safe point is available.
pub fn adrc_step(
    view: &PointSet,
    x_i: &Point,
    alpha: f64,
    method: SafePointMethod,
    n_f_assumed: usize,
    seed: u64,
) -> AdrcOutcome {
    match safe_point(view, method, n_f_assumed, seed) {
        Ok(Some(s)) => AdrcOutcome {
            next: x_i.lerp_toward(&s, alpha),
            safe_point: Some(s),
            status: StepStatus::Updated,
        },
        Ok(None) => AdrcOutcome {
            next: x_i.clone(),
            safe_point: None,
            status: StepStatus::NoGuarantee,
        },
        Err(_) => AdrcOutcome {
            next: x_i.clone(),
            safe_point: None,
            status: StepStatus::Failed,
        },
    }
}

/// Per-step seed of agent `i`'s safe-point computation.
pub fn agent_seed(seed: u64, t: u64, i: usize) -> u64 {
    rng::derive(seed, &[rng::TAG_AGENT, t, i as u64])
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimError {
    #[error("agent {agent} has dimension {found}, expected {expected}")]
    DimensionMismatch {
        agent: usize,
        expected: usize,
        found: usize,
    },
    #[error("agent {agent}: alpha must lie in (0, 1]")]
    AlphaOutOfRange { agent: usize },
    #[error("disk radius must be positive")]
    NonPositiveRadius,
    #[error("epsilon must be positive")]
    NonPositiveEpsilon,
    #[error("max_steps must be at least 1")]
    NoSteps,
    #[error("edge ({from}, {to}) refers to a missing agent")]
    EdgeOutOfRange { from: usize, to: usize },
    #[error("network has {network} nodes but there are {agents} agents")]
    NetworkSize { network: usize, agents: usize },
    #[error("agent at index {index} has id {id}")]
    IdMismatch { index: usize, id: usize },
    #[error("no normal agents")]
    NoNormalAgents,
    #[error("{method} is not available in dimension {dim}")]
    UnsupportedMethod { method: &'static str, dim: usize },
    #[error("iterated Radon needs r > 1")]
    InvalidRadonParameter,
    #[error("invalid adversary behavior for agent {agent}: {reason}")]
    InvalidBehavior { agent: usize, reason: &'static str },
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    pub dim: usize,
    pub agents: Vec<AgentState>,
    pub network: Network,
    pub method: SafePointMethod,
    pub epsilon: f64,
    pub max_steps: u64,
    pub seed: u64,
}

impl SimConfig {
    pub fn validate(&self) -> Result<(), SimError> {
        let d = self.dim;
        if self.network.len() != self.agents.len() {
            return Err(SimError::NetworkSize {
                network: self.network.len(),
                agents: self.agents.len(),
            });
        }
        for (index, a) in self.agents.iter().enumerate() {
            if a.id != index {
                return Err(SimError::IdMismatch { index, id: a.id });
            }
            if a.x.dim() != d {
                return Err(SimError::DimensionMismatch {
                    agent: index,
                    expected: d,
                    found: a.x.dim(),
                });
            }
            if !(a.alpha > 0.0 && a.alpha <= 1.0) {
                return Err(SimError::AlphaOutOfRange { agent: index });
            }
            if let Role::Adversarial(b) = &a.role {
                check_behavior(b, d, index)?;
            }
        }
        if !self.agents.iter().any(|a| a.role.is_normal()) {
            return Err(SimError::NoNormalAgents);
        }
        if !(self.epsilon.is_finite() && self.epsilon > 0.0) {
            return Err(SimError::NonPositiveEpsilon);
        }
        if self.max_steps == 0 {
            return Err(SimError::NoSteps);
        }
        match self.method {
            SafePointMethod::Centerpoint if !(1..=3).contains(&d) => {
                Err(SimError::UnsupportedMethod {
                    method: "centerpoint",
                    dim: d,
                })
            }
            SafePointMethod::IteratedRadon(r) if r < 2 => Err(SimError::InvalidRadonParameter),
            SafePointMethod::IteratedRadon(_) if d < 2 => Err(SimError::UnsupportedMethod {
                method: "iterated-radon",
                dim: d,
            }),
            _ => Ok(()),
        }
    }
}

fn check_behavior(b: &AdversaryBehavior, d: usize, agent: usize) -> Result<(), SimError> {
    let bad = |reason| Err(SimError::InvalidBehavior { agent, reason });
    match b {
        AdversaryBehavior::Stationary => Ok(()),
        AdversaryBehavior::Oscillating { side } => {
            if side.is_finite() {
                Ok(())
            } else {
                bad("square side must be finite")
            }
        }
        AdversaryBehavior::MoveAway { workspace } => {
            if workspace.min.len() != d || workspace.max.len() != d {
                bad("workspace dimension differs from the scenario")
            } else {
                Ok(())
            }
        }
        AdversaryBehavior::Equivocate { inner, spread } => {
            if !(spread.is_finite() && *spread >= 0.0) {
                return bad("spread must be a nonnegative number");
            }
            check_behavior(inner, d, agent)
        }
    }
}

/// Per-agent part of a [`StepReport`].
#[derive(Debug, Clone, PartialEq)]
pub struct AgentReport {
    /// True position at step `t`.
    pub position: Point,
    /// Safe point used for the update out of step `t` (normal agents only).
    pub safe_point: Option<Point>,
    /// `None` for adversaries.
    pub status: Option<StepStatus>,
    /// Neighborhood size, self included (normal agents only).
    pub n_neighbors: usize,
    /// Adversarial senders in the neighborhood.
    pub n_adversarial: usize,
    /// Faulty values the agent's method tolerates at this neighborhood size.
    pub bound: usize,
    /// Whether the true adversary count is within `bound`.
    pub resilient: bool,
    /// Whether the position lies in the hull of the initial normal states.
    pub in_hull: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StepReport {
    pub t: u64,
    pub agents: Vec<AgentReport>,
    /// Diameter of the normal agents' positions.
    pub diameter: f64,
    /// Every normal position is inside the initial normal hull.
    pub safe: bool,
    /// Minimum over normal agents of `bound − n_adversarial`; negative means
    /// some agent's bound is violated.
    pub worst_margin: i64,
}

/// Stepwise simulation state.
#[derive(Debug, Clone)]
pub struct Simulation {
    cfg: SimConfig,
    starts: Vec<Point>,
    positions: Vec<Point>,
    initial_hull: PointSet,
    t: u64,
    done: bool,
}

impl Simulation {
    pub fn new(cfg: SimConfig) -> Result<Self, SimError> {
        cfg.validate()?;
        let starts: Vec<Point> = cfg.agents.iter().map(|a| a.x.clone()).collect();
        let normals: Vec<Point> = cfg
            .agents
            .iter()
            .filter(|a| a.role.is_normal())
            .map(|a| a.x.clone())
            .collect();
        let initial_hull = PointSet::from_points(&normals).map_err(|_| SimError::NoNormalAgents)?;
        Ok(Simulation {
            positions: starts.clone(),
            starts,
            initial_hull,
            cfg,
            t: 0,
            done: false,
        })
    }

    pub fn config(&self) -> &SimConfig {
        &self.cfg
    }

    pub fn positions(&self) -> &[Point] {
        &self.positions
    }

    pub fn initial_hull(&self) -> &PointSet {
        &self.initial_hull
    }

    /// Reports step `t` (positions, safe points, monitors) and advances to
    /// `t + 1`, unless the run has already terminated: that happens once the
    /// normal diameter drops below epsilon or `t` reaches `max_steps`, in
    /// which case the final report carries no update.
    pub fn step(&mut self) -> Option<StepReport> {
        if self.done {
            return None;
        }
        let cfg = &self.cfg;
        let d = cfg.dim;
        let t = self.t;
        let views = gather_views(
            &cfg.network,
            &cfg.agents,
            &self.starts,
            &self.positions,
            t,
            cfg.seed,
        );
        let diameter = normal_diameter(&cfg.agents, &self.positions);
        let last = diameter < cfg.epsilon || t >= cfg.max_steps;

        let mut agents = Vec::with_capacity(cfg.agents.len());
        let mut next = self.positions.clone();
        let mut safe = true;
        let mut worst = i64::MAX;
        for (i, agent) in cfg.agents.iter().enumerate() {
            let position = self.positions[i].clone();
            let Some(view) = &views[i] else {
                agents.push(AgentReport {
                    position,
                    safe_point: None,
                    status: None,
                    n_neighbors: 0,
                    n_adversarial: 0,
                    bound: 0,
                    resilient: true,
                    in_hull: true,
                });
                continue;
            };
            let n = view.senders.len();
            let n_adv = view
                .senders
                .iter()
                .filter(|&&j| !cfg.agents[j].role.is_normal())
                .count();
            let bound = cfg.method.resilience_bound(n, d);
            worst = worst.min(bound as i64 - n_adv as i64);
            let in_hull = in_convex_hull(&position, &self.initial_hull, false).unwrap_or(false);
            safe &= in_hull;
            let (safe_point, status) = if last {
                (None, None)
            } else {
                let out = adrc_step(
                    &view.values,
                    &position,
                    agent.alpha,
                    cfg.method,
                    bound,
                    agent_seed(cfg.seed, t, i),
                );
                next[i] = out.next;
                (out.safe_point, Some(out.status))
            };
            agents.push(AgentReport {
                position,
                safe_point,
                status,
                n_neighbors: n,
                n_adversarial: n_adv,
                bound,
                resilient: n_adv <= bound,
                in_hull,
            });
        }
        for (i, agent) in cfg.agents.iter().enumerate() {
            if let Role::Adversarial(b) = &agent.role {
                next[i] = b.position(&self.starts[i], t + 1);
            }
        }
        let report = StepReport {
            t,
            agents,
            diameter,
            safe,
            worst_margin: if worst == i64::MAX { 0 } else { worst },
        };
        if last {
            self.done = true;
        } else {
            self.positions = next;
            self.t += 1;
        }
        Some(report)
    }

    /// Runs to termination.
    pub fn run(mut self) -> Vec<StepReport> {
        let mut out = Vec::new();
        while let Some(r) = self.step() {
            out.push(r);
        }
        out
    }
}

/// Runs a configuration to termination.
pub fn run(cfg: SimConfig) -> Result<Vec<StepReport>, SimError> {
    Ok(Simulation::new(cfg)?.run())
}

/// Largest pairwise distance among normal agents.
pub fn normal_diameter(agents: &[AgentState], positions: &[Point]) -> f64 {
    let idx: Vec<usize> = (0..agents.len())
        .filter(|&i| agents[i].role.is_normal())
        .collect();
    let mut best = 0.0f64;
    for (a, &i) in idx.iter().enumerate() {
        for &j in &idx[a + 1..] {
            best = best.max(dist_sq(&positions[i], &positions[j]));
        }
    }
    libm::sqrt(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(c: &[f64]) -> Point {
        Point::new(c.to_vec()).unwrap()
    }

    fn agent(id: usize, role: Role, x: &[f64]) -> AgentState {
        AgentState {
            id,
            role,
            x: pt(x),
            alpha: 0.8,
        }
    }

    #[test]
    fn resilience_table() {
        let cp = SafePointMethod::Centerpoint;
        let tv = SafePointMethod::Tverberg;
        assert_eq!(cp.resilience_bound(22, 2), 7);
        assert_eq!(tv.resilience_bound(22, 2), 5);
        for n in [7, 8] {
            assert!(resilience_condition(n, 2, 2, cp));
            assert!(!resilience_condition(n, 2, 2, tv));
            assert_eq!(tv.resilience_bound(n, 2), 1);
        }
        for m in [cp, tv, SafePointMethod::IteratedRadon(3)] {
            assert!(resilience_condition(3, 0, 2, m));
        }
    }

    #[test]
    fn step_arithmetic() {
        let x = pt(&[0.0, 0.0]);
        let s = pt(&[1.0, 1.0]);
        let n = x.lerp_toward(&s, 0.8);
        assert!((n[0] - 0.8).abs() < 1e-15 && (n[1] - 0.8).abs() < 1e-15);
        assert_eq!(x.lerp_toward(&s, 1.0), s);
    }

    #[test]
    fn coincident_neighbors_hold_still() {
        let p = [0.25, -0.5];
        let view = PointSet::from_rows(&[p; 6]).unwrap();
        let out = adrc_step(&view, &pt(&p), 0.8, SafePointMethod::Centerpoint, 1, 7);
        assert!(out.next.dist(&p) < 1e-5);
    }

    #[test]
    fn oscillation_cycle_and_move_away_clamp() {
        let start = pt(&[0.2, 0.3]);
        let osc = AdversaryBehavior::Oscillating { side: 0.1 };
        let c = osc.position(&start, 2);
        assert!((c[0] - 0.3).abs() < 1e-15 && (c[1] - 0.4).abs() < 1e-15);
        assert_eq!(osc.position(&start, 4), start);
        let ws = Workspace {
            min: vec![-1.0, -1.0],
            max: vec![1.0, 1.0],
        };
        let away = AdversaryBehavior::MoveAway { workspace: ws };
        let far = away.position(&start, 10_000);
        assert!(far.dist(&[1.0, 1.0]) < 1e-12);
    }

    #[test]
    fn views_respect_disk_and_equivocation() {
        let equiv = AdversaryBehavior::Equivocate {
            inner: Box::new(AdversaryBehavior::Stationary),
            spread: 0.05,
        };
        let agents = vec![
            agent(0, Role::Normal, &[0.0, 0.0]),
            agent(1, Role::Normal, &[0.1, 0.0]),
            agent(2, Role::Adversarial(equiv), &[0.0, 0.1]),
            agent(3, Role::Normal, &[0.5, 0.0]),
        ];
        let pos: Vec<Point> = agents.iter().map(|a| a.x.clone()).collect();
        let net = Network::new(4, NetworkMode::Disk { radius: 0.45 }).unwrap();
        let views = gather_views(&net, &agents, &pos, &pos, 0, 9);
        let v0 = views[0].as_ref().unwrap();
        let v1 = views[1].as_ref().unwrap();
        assert_eq!(v0.senders, vec![0, 1, 2]);
        assert_eq!(v1.senders, vec![0, 1, 2, 3]);
        assert_eq!(v0.values.point(0), v1.values.point(0));
        assert_ne!(v0.values.point(2), v1.values.point(2));
        assert!(views[2].is_none());
        assert_eq!(views[3].as_ref().unwrap().senders, vec![1, 3]);
    }

    #[test]
    fn complete_graph_converges() {
        let mut agents = Vec::new();
        let mut edges = Vec::new();
        for i in 0..10 {
            let a = i as f64 * 0.7;
            agents.push(agent(i, Role::Normal, &[libm::cos(a), libm::sin(1.3 * a)]));
            for j in 0..10 {
                if i != j {
                    edges.push((j, i));
                }
            }
        }
        let cfg = SimConfig {
            dim: 2,
            network: Network::new(10, NetworkMode::Fixed(edges)).unwrap(),
            agents,
            method: SafePointMethod::Centerpoint,
            epsilon: 1e-3,
            max_steps: 100,
            seed: 1,
        };
        let reports = run(cfg).unwrap();
        let last = reports.last().unwrap();
        assert!(last.diameter < 1e-3, "{}", last.diameter);
        assert!(reports.iter().all(|r| r.safe));
    }

    #[test]
    fn validation_errors() {
        let agents = vec![agent(0, Role::Normal, &[0.0, 0.0])];
        assert_eq!(
            Network::new(1, NetworkMode::Disk { radius: 0.0 }).unwrap_err(),
            SimError::NonPositiveRadius
        );
        let mut cfg = SimConfig {
            dim: 2,
            network: Network::new(1, NetworkMode::Disk { radius: 1.0 }).unwrap(),
            agents,
            method: SafePointMethod::Centerpoint,
            epsilon: 1e-3,
            max_steps: 10,
            seed: 0,
        };
        cfg.agents[0].alpha = 1.5;
        assert_eq!(cfg.validate().unwrap_err(), SimError::AlphaOutOfRange { agent: 0 });
        cfg.agents[0].alpha = 0.5;
        cfg.dim = 4;
        assert!(matches!(cfg.validate(), Err(SimError::DimensionMismatch { .. })));
    }
}
