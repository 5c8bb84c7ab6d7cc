//! Scenario files: JSON parsing with located validation errors,
//! serialization, and a seeded random scenario generator.
//!
//! ```json
//! {
//!   "label": "n1",
//!   "source": "S",
//!   "nodes": [{"id": "S", "x": 0, "y": 0, "rooftop_height": 0}],
//!   "segments": [{"a": "S", "b": "A"}],
//!   "drone": {"max_payload": 15.9},
//!   "rig": {"levels": [2.0, 1.5, 1.0], "clearance": 1.0},
//!   "packages": [{"id": "p1", "mass": 2.0, "destination": "A"}]
//! }
//! ```
//!
//! Omitted drone and rig fields take their defaults.

use std::collections::{HashMap, HashSet};
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{build_network, NetworkError, Node, SkywayNetwork};
use crate::planner::{DroneConfig, Package};
use crate::sim::{RigError, StringRig};

/// A single validation failure, located by a path into the document.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub locator: String,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.locator, self.message)
    }
}

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("invalid scenario:\n{}", .0.iter().map(|v| format!("  {v}")).collect::<Vec<_>>().join("\n"))]
    Validation(Vec<Violation>),
    #[error("invalid generator parameters: {0}")]
    InvalidParams(String),
}

impl ScenarioError {
    pub fn violations(&self) -> &[Violation] {
        match self {
            ScenarioError::Validation(v) => v,
            _ => &[],
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub label: Option<String>,
    pub source: String,
    pub network: SkywayNetwork,
    pub drone: DroneConfig,
    pub rig: StringRig,
    pub packages: Vec<Package>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SegmentSpec {
    a: String,
    b: String,
}

#[derive(Serialize)]
struct Document<'a> {
    #[serde(skip_serializing_if = "Option::is_none")]
    label: &'a Option<String>,
    source: &'a str,
    nodes: &'a [Node],
    segments: Vec<SegmentSpec>,
    drone: &'a DroneConfig,
    rig: &'a StringRig,
    packages: &'a [Package],
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    label: Option<String>,
    source: String,
    nodes: Vec<Node>,
    #[serde(default)]
    segments: Vec<SegmentSpec>,
    #[serde(default)]
    drone: RawDrone,
    #[serde(default)]
    rig: RawRig,
    #[serde(default)]
    packages: Vec<Package>,
}

#[derive(Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDrone {
    frame_mass: Option<f64>,
    max_payload: Option<f64>,
    battery_capacity: Option<f64>,
    cruise_speed: Option<f64>,
    vertical_speed: Option<f64>,
    base_rate: Option<f64>,
    payload_rate: Option<f64>,
}

impl RawDrone {
    fn resolve(self) -> DroneConfig {
        let d = DroneConfig::default();
        DroneConfig {
            frame_mass: self.frame_mass.unwrap_or(d.frame_mass),
            max_payload: self.max_payload.unwrap_or(d.max_payload),
            battery_capacity: self.battery_capacity.unwrap_or(d.battery_capacity),
            cruise_speed: self.cruise_speed.unwrap_or(d.cruise_speed),
            vertical_speed: self.vertical_speed.unwrap_or(d.vertical_speed),
            base_rate: self.base_rate.unwrap_or(d.base_rate),
            payload_rate: self.payload_rate.unwrap_or(d.payload_rate),
        }
    }
}

#[derive(Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRig {
    levels: Option<Vec<f64>>,
    clearance: Option<f64>,
}

struct Checker(Vec<Violation>);

impl Checker {
    fn fail(&mut self, locator: impl Into<String>, message: impl Into<String>) {
        self.0.push(Violation {
            locator: locator.into(),
            message: message.into(),
        });
    }
}

/// Parses and validates a scenario document, reporting every problem found.
pub fn parse_scenario(text: &str) -> Result<Scenario, ScenarioError> {
    let raw: RawScenario =
        serde_json::from_str(text).map_err(|e| ScenarioError::Syntax(e.to_string()))?;
    let mut check = Checker(Vec::new());

    if raw.nodes.is_empty() {
        check.fail("nodes", "at least one node is required");
    }
    let mut positions: HashMap<&str, (f64, f64)> = HashMap::new();
    for (i, node) in raw.nodes.iter().enumerate() {
        if node.id.is_empty() {
            check.fail(format!("nodes[{i}].id"), "must not be empty");
        } else if positions.insert(&node.id, (node.x, node.y)).is_some() {
            check.fail(
                format!("nodes[{i}].id"),
                format!("duplicate node id {:?}", node.id),
            );
        }
        if !node.x.is_finite() {
            check.fail(format!("nodes[{i}].x"), "must be finite");
        }
        if !node.y.is_finite() {
            check.fail(format!("nodes[{i}].y"), "must be finite");
        }
        if !(node.rooftop_height.is_finite() && node.rooftop_height >= 0.0) {
            check.fail(
                format!("nodes[{i}].rooftop_height"),
                format!("must be >= 0, got {}", node.rooftop_height),
            );
        }
    }

    let mut pairs = HashSet::new();
    for (i, seg) in raw.segments.iter().enumerate() {
        let mut known = true;
        for (end, id) in [("a", &seg.a), ("b", &seg.b)] {
            if !positions.contains_key(id.as_str()) {
                check.fail(
                    format!("segments[{i}].{end}"),
                    format!("unknown node {id:?}"),
                );
                known = false;
            }
        }
        if seg.a == seg.b {
            check.fail(
                format!("segments[{i}]"),
                "segment connects a node to itself",
            );
            continue;
        }
        let key = if seg.a < seg.b {
            (seg.a.as_str(), seg.b.as_str())
        } else {
            (seg.b.as_str(), seg.a.as_str())
        };
        if !pairs.insert(key) {
            check.fail(
                format!("segments[{i}]"),
                format!("duplicate segment between {:?} and {:?}", seg.a, seg.b),
            );
        }
        if known && positions[seg.a.as_str()] == positions[seg.b.as_str()] {
            check.fail(
                format!("segments[{i}]"),
                "endpoints share ground coordinates",
            );
        }
    }

    if !positions.contains_key(raw.source.as_str()) {
        check.fail("source", format!("unknown node {:?}", raw.source));
    }

    let drone = raw.drone.resolve();
    for (field, reason) in drone.violations() {
        check.fail(format!("drone.{field}"), reason);
    }

    let default_rig = StringRig::default();
    let levels = raw
        .rig
        .levels
        .unwrap_or_else(|| default_rig.hangs().to_vec());
    let clearance = raw.rig.clearance.unwrap_or(default_rig.clearance());
    for problem in StringRig::problems(&levels, clearance) {
        let locator = match &problem {
            RigError::NonPositiveHang { level, .. } | RigError::NotDecreasing { level } => {
                format!("rig.levels[{}]", level - 1)
            }
            RigError::InvalidClearance(_) => "rig.clearance".to_string(),
        };
        check.fail(locator, problem.to_string());
    }

    let mut ids = HashSet::new();
    for (i, p) in raw.packages.iter().enumerate() {
        if p.id.is_empty() {
            check.fail(format!("packages[{i}].id"), "must not be empty");
        } else if !ids.insert(p.id.as_str()) {
            check.fail(
                format!("packages[{i}].id"),
                format!("duplicate package id {:?}", p.id),
            );
        }
        if !(p.mass.is_finite() && p.mass > 0.0) {
            check.fail(
                format!("packages[{i}].mass"),
                format!("must be > 0, got {}", p.mass),
            );
        }
        if !positions.contains_key(p.destination.as_str()) {
            check.fail(
                format!("packages[{i}].destination"),
                format!("unknown node {:?}", p.destination),
            );
        } else if p.destination == raw.source {
            check.fail(
                format!("packages[{i}].destination"),
                "must differ from the source",
            );
        }
    }
    if raw.packages.len() > levels.len() {
        check.fail(
            "packages",
            format!(
                "{} packages but the string rig has {} levels",
                raw.packages.len(),
                levels.len()
            ),
        );
    }

    if !check.0.is_empty() {
        return Err(ScenarioError::Validation(check.0));
    }

    let segments: Vec<(String, String)> = raw.segments.into_iter().map(|s| (s.a, s.b)).collect();
    let network = build_network(raw.nodes, &segments).map_err(|e| {
        let locator = match e {
            NetworkError::DisconnectedNetwork(_) => "segments",
            _ => "nodes",
        };
        ScenarioError::Validation(vec![Violation {
            locator: locator.into(),
            message: e.to_string(),
        }])
    })?;
    let rig = StringRig::new(levels, clearance).expect("rig already validated");

    Ok(Scenario {
        label: raw.label,
        source: raw.source,
        network,
        drone,
        rig,
        packages: raw.packages,
    })
}

impl Scenario {
    /// Pretty-printed JSON document with a trailing newline.
    pub fn to_json(&self) -> String {
        let doc = Document {
            label: &self.label,
            source: &self.source,
            nodes: self.network.nodes(),
            segments: self
                .network
                .segments()
                .iter()
                .map(|s| SegmentSpec {
                    a: s.endpoint_a.clone(),
                    b: s.endpoint_b.clone(),
                })
                .collect(),
            drone: &self.drone,
            rig: &self.rig,
            packages: &self.packages,
        };
        let mut text = serde_json::to_string_pretty(&doc).expect("scenario serializes");
        text.push('\n');
        text
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GenParams {
    pub node_count: usize,
    pub package_count: usize,
    pub seed: u64,
    /// Ground area (width, height) in meters.
    pub area: (f64, f64),
}

impl GenParams {
    pub const DEFAULT_AREA: (f64, f64) = (300.0, 300.0);

    pub fn new(node_count: usize, package_count: usize, seed: u64) -> Self {
        Self {
            node_count,
            package_count,
            seed,
            area: Self::DEFAULT_AREA,
        }
    }
}

const ROOFTOP_RANGE: (f64, f64) = (5.0, 60.0);
/// Package masses are drawn in centi-kilograms from (0.1, 2.27] kg.
const MASS_CENTI_KG: (u32, u32) = (11, 227);
const EXTRA_SEGMENT_PROBABILITY: f64 = 0.25;

fn centi(v: f64) -> f64 {
    (v * 100.0).round() / 100.0
}

/// Random connected scenario; the same parameters always give the same
/// scenario. Node `S` is the source, the rig gets one level per package
/// (never fewer than the default three).
pub fn generate_scenario(params: &GenParams) -> Result<Scenario, ScenarioError> {
    let GenParams {
        node_count: n,
        package_count: k,
        seed,
        area: (width, height),
    } = *params;
    if n < 2 {
        return Err(ScenarioError::InvalidParams(format!(
            "need at least 2 nodes, got {n}"
        )));
    }
    if k > n - 1 {
        return Err(ScenarioError::InvalidParams(format!(
            "{k} packages need {k} distinct destinations but only {} non-source nodes exist",
            n - 1
        )));
    }
    if !(width.is_finite() && height.is_finite() && width > 0.0 && height > 0.0) {
        return Err(ScenarioError::InvalidParams(format!(
            "area must be positive, got {width} x {height}"
        )));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let width_digits = (n - 1).to_string().len();
    let mut nodes: Vec<Node> = Vec::with_capacity(n);
    for i in 0..n {
        let id = if i == 0 {
            "S".to_string()
        } else {
            format!("N{i:0width_digits$}")
        };
        let (x, y) = loop {
            let x = centi(rng.gen_range(0.0..=width));
            let y = centi(rng.gen_range(0.0..=height));
            if !nodes.iter().any(|m| m.x == x && m.y == y) {
                break (x, y);
            }
        };
        let roof = centi(rng.gen_range(ROOFTOP_RANGE.0..=ROOFTOP_RANGE.1));
        nodes.push(Node::new(id, x, y, roof));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    let mut linked = HashSet::new();
    let mut segments = Vec::new();
    for i in 1..n {
        let a = order[i];
        let b = order[rng.gen_range(0..i)];
        linked.insert((a.min(b), a.max(b)));
        segments.push((nodes[a].id.clone(), nodes[b].id.clone()));
    }
    for a in 0..n {
        for b in a + 1..n {
            if !linked.contains(&(a, b)) && rng.gen_bool(EXTRA_SEGMENT_PROBABILITY) {
                segments.push((nodes[a].id.clone(), nodes[b].id.clone()));
            }
        }
    }

    let mut candidates: Vec<usize> = (1..n).collect();
    candidates.shuffle(&mut rng);
    let packages = candidates[..k]
        .iter()
        .enumerate()
        .map(|(i, &dest)| {
            let mass = rng.gen_range(MASS_CENTI_KG.0..=MASS_CENTI_KG.1) as f64 / 100.0;
            Package::new(format!("p{}", i + 1), mass, nodes[dest].id.clone())
        })
        .collect();

    let network =
        build_network(nodes, &segments).expect("spanning tree keeps the network connected");
    Ok(Scenario {
        label: Some(format!("generated nodes={n} packages={k} seed={seed}")),
        source: "S".into(),
        network,
        drone: DroneConfig::default(),
        rig: StringRig::with_levels(k.max(StringRig::DEFAULT_LEVELS)),
        packages,
    })
}
