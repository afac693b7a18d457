//! Scenario files.
//!
//! A scenario is a JSON document tagged with a versioned `schema` field.
//! Agents are either listed explicitly or generated from counts and a seed;
//! generation is resolved at load time so that the configuration written
//! next to a trajectory always lists every agent.

use std::fmt;

use centerstone_core::consensus::{
    AdversaryBehavior, AgentState, Network, NetworkMode, Role, SafePointMethod, SimConfig,
    Workspace,
};
use centerstone_core::rng;
use centerstone_core::Point;
use rand::Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const SCHEMA: &str = "centerstone/scenario@1";

fn default_alpha() -> f64 {
    0.8
}
fn default_epsilon() -> f64 {
    1e-3
}
fn default_max_steps() -> u64 {
    500
}
fn default_side() -> f64 {
    0.1
}
fn default_spread() -> f64 {
    0.05
}
fn default_method() -> String {
    "centerpoint".to_owned()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub schema: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub dimension: usize,
    pub workspace: WorkspaceSpec,
    pub agents: AgentsSpec,
    pub network: NetworkSpec,
    #[serde(default = "default_method")]
    pub method: String,
    #[serde(default = "default_alpha")]
    pub alpha: f64,
    #[serde(default = "default_epsilon")]
    pub epsilon: f64,
    #[serde(default = "default_max_steps")]
    pub max_steps: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WorkspaceSpec {
    pub min: Vec<f64>,
    pub max: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum AgentsSpec {
    Explicit(Vec<AgentSpec>),
    Generate(GenerateSpec),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AgentSpec {
    pub position: Vec<f64>,
    pub role: RoleSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub behavior: Option<BehaviorSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RoleSpec {
    Normal,
    Adversarial,
}

/// Uniform placement of `normal + adversarial` agents in the workspace;
/// adversaries come last.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GenerateSpec {
    pub normal: usize,
    #[serde(default)]
    pub adversarial: usize,
    #[serde(default = "stationary")]
    pub behavior: BehaviorSpec,
}

fn stationary() -> BehaviorSpec {
    BehaviorSpec::Stationary
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum BehaviorSpec {
    Stationary,
    Oscillating {
        #[serde(default = "default_side")]
        side: f64,
    },
    MoveAway,
    Equivocate {
        inner: Box<BehaviorSpec>,
        #[serde(default = "default_spread")]
        spread: f64,
    },
}

impl BehaviorSpec {
    fn to_core(&self, ws: &Workspace) -> AdversaryBehavior {
        match self {
            BehaviorSpec::Stationary => AdversaryBehavior::Stationary,
            BehaviorSpec::Oscillating { side } => AdversaryBehavior::Oscillating { side: *side },
            BehaviorSpec::MoveAway => AdversaryBehavior::MoveAway {
                workspace: ws.clone(),
            },
            BehaviorSpec::Equivocate { inner, spread } => AdversaryBehavior::Equivocate {
                inner: Box::new(inner.to_core(ws)),
                spread: *spread,
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum NetworkSpec {
    Disk { radius: f64 },
    Fixed(FixedSpec),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FixedSpec {
    /// `[from, to]` pairs: `to` observes `from`.
    pub edges: Vec<[usize; 2]>,
    #[serde(default)]
    pub undirected: bool,
}

/// A configuration problem, with the source position when known.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError {
    pub message: String,
    pub line: Option<usize>,
    pub column: Option<usize>,
}

impl ConfigError {
    fn new(message: impl Into<String>) -> Self {
        ConfigError {
            message: message.into(),
            line: None,
            column: None,
        }
    }

    fn at(mut self, pos: Option<(usize, usize)>) -> Self {
        if let Some((l, c)) = pos {
            self.line = Some(l);
            self.column = Some(c);
        }
        self
    }
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.line, self.column) {
            (Some(l), Some(c)) => write!(f, "line {l}, column {c}: {}", self.message),
            (Some(l), None) => write!(f, "line {l}: {}", self.message),
            _ => f.write_str(&self.message),
        }
    }
}

impl std::error::Error for ConfigError {}

/// Position (1-based line, column) of the `nth` occurrence of `"key"` in
/// the source text.
fn locate(src: &str, key: &str, nth: usize) -> Option<(usize, usize)> {
    let needle = format!("\"{key}\"");
    let offset = src.match_indices(&needle).nth(nth)?.0;
    let before = &src[..offset];
    let line = before.matches('\n').count() + 1;
    let column = offset - before.rfind('\n').map_or(0, |i| i + 1) + 1;
    Some((line, column))
}

pub fn parse_method(s: &str) -> Result<SafePointMethod, String> {
    match s {
        "centerpoint" => Ok(SafePointMethod::Centerpoint),
        "tverberg" => Ok(SafePointMethod::Tverberg),
        "iterated-radon" => Ok(SafePointMethod::IteratedRadon(3)),
        _ => {
            let r = s
                .strip_prefix("iterated-radon:")
                .ok_or_else(|| format!("unknown method {s:?}"))?;
            let r: u32 = r
                .parse()
                .map_err(|_| format!("bad iterated-radon parameter {r:?}"))?;
            if r < 2 {
                return Err("iterated-radon needs r >= 2".to_owned());
            }
            Ok(SafePointMethod::IteratedRadon(r))
        }
    }
}

pub fn method_name(m: SafePointMethod) -> String {
    match m {
        SafePointMethod::Centerpoint => "centerpoint".to_owned(),
        SafePointMethod::Tverberg => "tverberg".to_owned(),
        SafePointMethod::IteratedRadon(r) => format!("iterated-radon:{r}"),
    }
}

impl ScenarioConfig {
    /// Parses and validates a scenario. Error positions point into `src`.
    pub fn from_json(src: &str) -> Result<Self, ConfigError> {
        let cfg: ScenarioConfig = serde_json::from_str(src).map_err(|e| {
            let full = e.to_string();
            let suffix = format!(" at line {} column {}", e.line(), e.column());
            ConfigError {
                message: full.strip_suffix(&suffix).unwrap_or(&full).to_owned(),
                line: Some(e.line()),
                column: Some(e.column()),
            }
        })?;
        cfg.validate(Some(src))?;
        Ok(cfg)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("config serializes");
        s.push('\n');
        s
    }

    /// SHA-256 of the canonical JSON form, as lowercase hex.
    pub fn sha256(&self) -> String {
        let digest = Sha256::digest(self.to_json().as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn method(&self) -> Result<SafePointMethod, ConfigError> {
        parse_method(&self.method).map_err(ConfigError::new)
    }

    fn workspace(&self) -> Workspace {
        Workspace {
            min: self.workspace.min.clone(),
            max: self.workspace.max.clone(),
        }
    }

    /// Checks everything that can be checked without running. `src`, when
    /// given, is used to attach line numbers.
    pub fn validate(&self, src: Option<&str>) -> Result<(), ConfigError> {
        let loc = |key: &str, nth: usize| src.and_then(|s| locate(s, key, nth));
        if self.schema != SCHEMA {
            return Err(ConfigError::new(format!(
                "unsupported schema {:?} (expected {SCHEMA:?})",
                self.schema
            ))
            .at(loc("schema", 0)));
        }
        let d = self.dimension;
        if d == 0 {
            return Err(ConfigError::new("dimension must be at least 1").at(loc("dimension", 0)));
        }
        let ws = &self.workspace;
        if ws.min.len() != d || ws.max.len() != d {
            return Err(ConfigError::new(format!(
                "workspace bounds must have {d} coordinates"
            ))
            .at(loc("workspace", 0)));
        }
        if ws
            .min
            .iter()
            .zip(&ws.max)
            .any(|(a, b)| !(a.is_finite() && b.is_finite() && a < b))
        {
            return Err(ConfigError::new("workspace min must be below max in every coordinate")
                .at(loc("workspace", 0)));
        }
        if !(self.alpha > 0.0 && self.alpha <= 1.0) {
            return Err(ConfigError::new("alpha must lie in (0, 1]").at(loc("alpha", 0)));
        }
        if !(self.epsilon > 0.0 && self.epsilon.is_finite()) {
            return Err(ConfigError::new("epsilon must be positive").at(loc("epsilon", 0)));
        }
        if self.max_steps == 0 {
            return Err(ConfigError::new("max_steps must be at least 1").at(loc("max_steps", 0)));
        }
        let method = self.method().map_err(|e| e.at(loc("method", 0)))?;
        match method {
            SafePointMethod::Centerpoint if d > 3 => {
                return Err(ConfigError::new(
                    "centerpoint is exact only up to dimension 3; use iterated-radon:<r>",
                )
                .at(loc("method", 0)))
            }
            SafePointMethod::IteratedRadon(_) if d < 2 => {
                return Err(ConfigError::new("iterated-radon needs dimension >= 2")
                    .at(loc("method", 0)))
            }
            _ => {}
        }
        let n = match &self.agents {
            AgentsSpec::Explicit(list) => {
                for (i, a) in list.iter().enumerate() {
                    let here = loc("position", i);
                    if a.position.len() != d {
                        return Err(ConfigError::new(format!(
                            "agent {i}: position has {} coordinates, expected {d}",
                            a.position.len()
                        ))
                        .at(here));
                    }
                    if a.position.iter().any(|c| !c.is_finite()) {
                        return Err(
                            ConfigError::new(format!("agent {i}: non-finite position")).at(here)
                        );
                    }
                    if a.role == RoleSpec::Adversarial && a.behavior.is_none() {
                        return Err(ConfigError::new(format!(
                            "agent {i}: adversarial agents need a behavior"
                        ))
                        .at(here));
                    }
                    if let Some(alpha) = a.alpha {
                        if !(alpha > 0.0 && alpha <= 1.0) {
                            return Err(ConfigError::new(format!(
                                "agent {i}: alpha must lie in (0, 1]"
                            ))
                            .at(here));
                        }
                    }
                    if let Some(b) = &a.behavior {
                        check_behavior(b).map_err(|m| ConfigError::new(format!("agent {i}: {m}")).at(here))?;
                    }
                }
                if !list.iter().any(|a| a.role == RoleSpec::Normal) {
                    return Err(ConfigError::new("at least one normal agent is required")
                        .at(loc("agents", 0)));
                }
                list.len()
            }
            AgentsSpec::Generate(g) => {
                if g.normal == 0 {
                    return Err(ConfigError::new("at least one normal agent is required")
                        .at(loc("normal", 0)));
                }
                check_behavior(&g.behavior)
                    .map_err(|m| ConfigError::new(m).at(loc("behavior", 0)))?;
                g.normal + g.adversarial
            }
        };
        match &self.network {
            NetworkSpec::Disk { radius } => {
                if !(*radius > 0.0 && radius.is_finite()) {
                    return Err(
                        ConfigError::new("disk radius must be positive").at(loc("radius", 0))
                    );
                }
            }
            NetworkSpec::Fixed(f) => {
                if let Some(e) = f.edges.iter().find(|e| e[0] >= n || e[1] >= n) {
                    return Err(ConfigError::new(format!(
                        "edge [{}, {}] refers to a missing agent (there are {n})",
                        e[0], e[1]
                    ))
                    .at(loc("edges", 0)));
                }
            }
        }
        Ok(())
    }

    /// Replaces a `generate` agent block by the explicit agents it yields
    /// under `seed`.
    pub fn resolved(&self, seed: u64) -> ScenarioConfig {
        let mut out = self.clone();
        if let AgentsSpec::Generate(g) = &self.agents {
            let mut r = rng::substream(seed, &[0x6765_6e65]);
            let ws = &self.workspace;
            let mut list = Vec::with_capacity(g.normal + g.adversarial);
            for i in 0..g.normal + g.adversarial {
                let position = ws
                    .min
                    .iter()
                    .zip(&ws.max)
                    .map(|(lo, hi)| r.random_range(*lo..*hi))
                    .collect();
                let adversarial = i >= g.normal;
                list.push(AgentSpec {
                    position,
                    role: if adversarial {
                        RoleSpec::Adversarial
                    } else {
                        RoleSpec::Normal
                    },
                    behavior: adversarial.then(|| g.behavior.clone()),
                    alpha: None,
                });
            }
            out.agents = AgentsSpec::Explicit(list);
        }
        out.seed = Some(seed);
        out
    }

    /// The core simulation configuration. Call on a [`resolved`] config.
    ///
    /// [`resolved`]: ScenarioConfig::resolved
    pub fn to_sim(&self, seed: u64) -> Result<SimConfig, ConfigError> {
        let resolved;
        let cfg = match &self.agents {
            AgentsSpec::Generate(_) => {
                resolved = self.resolved(seed);
                &resolved
            }
            AgentsSpec::Explicit(_) => self,
        };
        let AgentsSpec::Explicit(list) = &cfg.agents else {
            unreachable!("resolved configs list their agents")
        };
        let ws = cfg.workspace();
        let mut agents = Vec::with_capacity(list.len());
        for (id, a) in list.iter().enumerate() {
            let x = Point::new(a.position.clone())
                .map_err(|e| ConfigError::new(format!("agent {id}: {e}")))?;
            let role = match a.role {
                RoleSpec::Normal => Role::Normal,
                RoleSpec::Adversarial => Role::Adversarial(
                    a.behavior
                        .as_ref()
                        .unwrap_or(&BehaviorSpec::Stationary)
                        .to_core(&ws),
                ),
            };
            agents.push(AgentState {
                id,
                role,
                x,
                alpha: a.alpha.unwrap_or(cfg.alpha),
            });
        }
        let mode = match &cfg.network {
            NetworkSpec::Disk { radius } => NetworkMode::Disk { radius: *radius },
            NetworkSpec::Fixed(f) => {
                let mut edges: Vec<(usize, usize)> = f.edges.iter().map(|e| (e[0], e[1])).collect();
                if f.undirected {
                    edges.extend(f.edges.iter().map(|e| (e[1], e[0])));
                }
                NetworkMode::Fixed(edges)
            }
        };
        let network =
            Network::new(agents.len(), mode).map_err(|e| ConfigError::new(e.to_string()))?;
        let sim = SimConfig {
            dim: cfg.dimension,
            agents,
            network,
            method: cfg.method()?,
            epsilon: cfg.epsilon,
            max_steps: cfg.max_steps,
            seed,
        };
        sim.validate().map_err(|e| ConfigError::new(e.to_string()))?;
        Ok(sim)
    }
}

fn check_behavior(b: &BehaviorSpec) -> Result<(), String> {
    match b {
        BehaviorSpec::Stationary | BehaviorSpec::MoveAway => Ok(()),
        BehaviorSpec::Oscillating { side } if side.is_finite() => Ok(()),
        BehaviorSpec::Oscillating { .. } => Err("oscillation side must be finite".to_owned()),
        BehaviorSpec::Equivocate { inner, spread } => {
            if !(*spread >= 0.0 && spread.is_finite()) {
                return Err("equivocation spread must be a nonnegative number".to_owned());
            }
            check_behavior(inner)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL: &str = r#"{
  "schema": "centerstone/scenario@1",
  "dimension": 2,
  "workspace": { "min": [-1, -1], "max": [1, 1] },
  "agents": { "generate": { "normal": 6, "adversarial": 1 } },
  "network": { "disk": { "radius": 0.9 } }
}"#;

    #[test]
    fn defaults_apply() {
        let cfg = ScenarioConfig::from_json(SMALL).unwrap();
        assert_eq!(cfg.alpha, 0.8);
        assert_eq!(cfg.epsilon, 1e-3);
        assert_eq!(cfg.max_steps, 500);
        assert_eq!(cfg.method, "centerpoint");
    }

    #[test]
    fn round_trip_after_resolution() {
        let cfg = ScenarioConfig::from_json(SMALL).unwrap().resolved(3);
        let again = ScenarioConfig::from_json(&cfg.to_json()).unwrap();
        assert_eq!(cfg, again);
        assert_eq!(cfg.sha256(), again.sha256());
        assert_eq!(cfg.to_sim(3).unwrap().agents.len(), 7);
    }

    #[test]
    fn semantic_errors_carry_lines() {
        let bad = SMALL.replace("\"radius\": 0.9", "\"radius\": -1");
        let err = ScenarioConfig::from_json(&bad).unwrap_err();
        assert_eq!(err.line, Some(6));
        let bad = SMALL.replace("\"dimension\": 2,", "\"dimension\": 2,\n  \"alpha\": 1.5,");
        let err = ScenarioConfig::from_json(&bad).unwrap_err();
        assert_eq!(err.line, Some(4), "{err}");
    }

    #[test]
    fn syntax_errors_carry_lines() {
        let bad = SMALL.replace("\"max\": [1, 1] }", "\"max\": [1, 1 }");
        let err = ScenarioConfig::from_json(&bad).unwrap_err();
        assert_eq!(err.line, Some(4));
    }

    #[test]
    fn method_strings() {
        assert_eq!(parse_method("iterated-radon:2"), Ok(SafePointMethod::IteratedRadon(2)));
        assert!(parse_method("iterated-radon:1").is_err());
        assert!(parse_method("median").is_err());
        assert_eq!(method_name(SafePointMethod::IteratedRadon(4)), "iterated-radon:4");
    }
}
