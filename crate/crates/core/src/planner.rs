//! Delivery ordering.
//!
//! [`plan_ndf`] is the nearest-destination-first greedy: from wherever the
//! drone currently is, serve the undelivered package whose destination is
//! closest by network distance, then repeat from that destination. Every
//! plan ends with a return leg to the source.
//!
//! [`plan_optimal`] enumerates all release orders and is only used as a
//! reference to measure how far the greedy is from the best distance.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::definitely_less;
use crate::graph::{NetworkError, Path, SkywayNetwork};

/// Largest package count accepted by the exhaustive planner (9! orders).
pub const MAX_EXHAUSTIVE_PACKAGES: usize = 9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PlanError {
    #[error("unknown source node {0:?}")]
    UnknownSource(String),
    #[error("package {package:?} targets unknown node {destination:?}")]
    UnknownDestination {
        package: String,
        destination: String,
    },
    #[error("package {0:?} is addressed to the mission source")]
    DestinationIsSource(String),
    #[error("duplicate package id {0:?}")]
    DuplicatePackageId(String),
    #[error("package {package:?} has invalid mass {mass}")]
    InvalidMass { package: String, mass: f64 },
    #[error("infeasible payload: {}", .0.join("; "))]
    InfeasiblePayload(Vec<String>),
    #[error("{count} packages exceed the exhaustive planner limit of {MAX_EXHAUSTIVE_PACKAGES}")]
    TooManyPackagesForExhaustive { count: usize },
    #[error(transparent)]
    Network(#[from] NetworkError),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Package {
    pub id: String,
    /// kg
    pub mass: f64,
    pub destination: String,
}

impl Package {
    pub fn new(id: impl Into<String>, mass: f64, destination: impl Into<String>) -> Self {
        Self {
            id: id.into(),
            mass,
            destination: destination.into(),
        }
    }
}

/// Physical and energy parameters of the drone.
///
/// `frame_mass` is recorded but does not enter the energy rate; it is
/// folded into `base_rate`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DroneConfig {
    /// kg
    pub frame_mass: f64,
    /// kg
    pub max_payload: f64,
    /// J
    pub battery_capacity: f64,
    /// m/s, horizontal
    pub cruise_speed: f64,
    /// m/s
    pub vertical_speed: f64,
    /// J/m at zero payload
    pub base_rate: f64,
    /// J/(m kg)
    pub payload_rate: f64,
}

impl DroneConfig {
    pub const DEFAULT_MAX_PAYLOAD: f64 = 15.9;
    pub const DEFAULT_BATTERY_CAPACITY: f64 = 50_000.0;
    pub const DEFAULT_BASE_RATE: f64 = 2.0;
    pub const DEFAULT_PAYLOAD_RATE: f64 = 1.0;
    pub const DEFAULT_FRAME_MASS: f64 = 1.5;
    pub const DEFAULT_CRUISE_SPEED: f64 = 5.0;
    pub const DEFAULT_VERTICAL_SPEED: f64 = 1.0;

    /// Field-level problems as `(field, reason)` pairs.
    pub fn violations(&self) -> Vec<(&'static str, String)> {
        let mut out = Vec::new();
        if !(self.frame_mass.is_finite() && self.frame_mass >= 0.0) {
            out.push((
                "frame_mass",
                format!("must be >= 0, got {}", self.frame_mass),
            ));
        }
        for (name, value) in [
            ("max_payload", self.max_payload),
            ("battery_capacity", self.battery_capacity),
            ("cruise_speed", self.cruise_speed),
            ("vertical_speed", self.vertical_speed),
            ("base_rate", self.base_rate),
            ("payload_rate", self.payload_rate),
        ] {
            if !(value.is_finite() && value > 0.0) {
                out.push((name, format!("must be > 0, got {value}")));
            }
        }
        out
    }
}

impl Default for DroneConfig {
    fn default() -> Self {
        Self {
            frame_mass: Self::DEFAULT_FRAME_MASS,
            max_payload: Self::DEFAULT_MAX_PAYLOAD,
            battery_capacity: Self::DEFAULT_BATTERY_CAPACITY,
            cruise_speed: Self::DEFAULT_CRUISE_SPEED,
            vertical_speed: Self::DEFAULT_VERTICAL_SPEED,
            base_rate: Self::DEFAULT_BASE_RATE,
            payload_rate: Self::DEFAULT_PAYLOAD_RATE,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    Ndf,
    Exhaustive,
}

impl Strategy {
    pub fn label(self) -> &'static str {
        match self {
            Strategy::Ndf => "ndf",
            Strategy::Exhaustive => "exhaustive",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "ndf" => Ok(Strategy::Ndf),
            "exhaustive" => Ok(Strategy::Exhaustive),
            other => Err(format!(
                "unknown strategy {other:?} (expected ndf or exhaustive)"
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Leg {
    pub path: Path,
    pub release: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MissionPlan {
    pub source: String,
    pub legs: Vec<Leg>,
    pub strategy_label: String,
}

impl MissionPlan {
    pub fn release_order(&self) -> Vec<&str> {
        self.legs
            .iter()
            .filter_map(|l| l.release.as_deref())
            .collect()
    }

    pub fn return_leg(&self) -> &Leg {
        self.legs.last().expect("plan always has a return leg")
    }

    pub fn total_distance(&self) -> f64 {
        plan_total_distance(self)
    }
}

/// Which string level each package hangs from. Level 1 is the bottom.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct HangingAssignment {
    pub level_of: BTreeMap<String, usize>,
    pub level_count: usize,
}

impl HangingAssignment {
    pub fn package_at(&self, level: usize) -> Option<&str> {
        self.level_of
            .iter()
            .find(|(_, &l)| l == level)
            .map(|(id, _)| id.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeasibilityReport {
    pub feasible: bool,
    pub total_payload: f64,
    pub capacity: f64,
    pub violations: Vec<String>,
}

/// Payload and rig-capacity check. Infeasibility is reported, not raised.
pub fn check_feasibility(
    drone: &DroneConfig,
    packages: &[Package],
    level_capacity: usize,
) -> FeasibilityReport {
    let total_payload: f64 = packages.iter().map(|p| p.mass).sum();
    let mut violations = Vec::new();
    if total_payload > drone.max_payload {
        violations.push(format!(
            "payload {total_payload:?} kg exceeds capacity {:?} kg",
            drone.max_payload
        ));
    }
    if packages.len() > level_capacity {
        violations.push(format!(
            "{} packages exceed the {level_capacity} levels of the string rig",
            packages.len()
        ));
    }
    FeasibilityReport {
        feasible: violations.is_empty(),
        total_payload,
        capacity: drone.max_payload,
        violations,
    }
}

fn validate_request(
    network: &SkywayNetwork,
    source: &str,
    packages: &[Package],
) -> Result<(), PlanError> {
    if !network.contains(source) {
        return Err(PlanError::UnknownSource(source.to_string()));
    }
    let mut ids = HashSet::new();
    for p in packages {
        if !ids.insert(p.id.as_str()) {
            return Err(PlanError::DuplicatePackageId(p.id.clone()));
        }
        if !(p.mass.is_finite() && p.mass > 0.0) {
            return Err(PlanError::InvalidMass {
                package: p.id.clone(),
                mass: p.mass,
            });
        }
        if !network.contains(&p.destination) {
            return Err(PlanError::UnknownDestination {
                package: p.id.clone(),
                destination: p.destination.clone(),
            });
        }
        if p.destination == source {
            return Err(PlanError::DestinationIsSource(p.id.clone()));
        }
    }
    Ok(())
}

fn sorted_by_id(packages: &[Package]) -> Vec<&Package> {
    let mut sorted: Vec<&Package> = packages.iter().collect();
    sorted.sort_by(|a, b| a.id.cmp(&b.id));
    sorted
}

/// Builds the legs for a fixed release order, closing with the return leg.
fn plan_from_order(
    network: &SkywayNetwork,
    source: &str,
    order: &[&Package],
    label: &str,
) -> Result<MissionPlan, PlanError> {
    let mut legs = Vec::with_capacity(order.len() + 1);
    let mut current = source;
    for p in order {
        legs.push(Leg {
            path: network.shortest_path(current, &p.destination)?,
            release: Some(p.id.clone()),
        });
        current = &p.destination;
    }
    legs.push(Leg {
        path: network.shortest_path(current, source)?,
        release: None,
    });
    Ok(MissionPlan {
        source: source.to_string(),
        legs,
        strategy_label: label.to_string(),
    })
}

/// Nearest-destination-first ordering.
///
/// Distances are recomputed from the drone's current node after every
/// delivery. Equal distances go to the smallest package id, so the result
/// does not depend on the order of `packages`.
pub fn plan_ndf(
    network: &SkywayNetwork,
    source: &str,
    packages: &[Package],
) -> Result<MissionPlan, PlanError> {
    validate_request(network, source, packages)?;
    let mut pending = sorted_by_id(packages);
    let mut order = Vec::with_capacity(pending.len());
    let mut current = source.to_string();
    while !pending.is_empty() {
        let dist = network.distances_from(&current)?;
        let mut best = 0;
        for (i, p) in pending.iter().enumerate().skip(1) {
            if definitely_less(
                dist[p.destination.as_str()],
                dist[pending[best].destination.as_str()],
            ) {
                best = i;
            }
        }
        let chosen = pending.remove(best);
        current = chosen.destination.clone();
        order.push(chosen);
    }
    plan_from_order(network, source, &order, Strategy::Ndf.label())
}

/// Minimum total distance over every release order.
///
/// Orders are scored on the same leg lengths `plan_from_order` produces, so
/// the winning score equals `plan_total_distance` of the returned plan.
/// Ties resolve to the lexicographically smallest id sequence.
pub fn plan_optimal(
    network: &SkywayNetwork,
    source: &str,
    packages: &[Package],
) -> Result<MissionPlan, PlanError> {
    if packages.len() > MAX_EXHAUSTIVE_PACKAGES {
        return Err(PlanError::TooManyPackagesForExhaustive {
            count: packages.len(),
        });
    }
    validate_request(network, source, packages)?;
    let sorted = sorted_by_id(packages);
    let n = sorted.len();

    // stop 0 is the source, stop i + 1 is package i's destination
    let stops: Vec<&str> = std::iter::once(source)
        .chain(sorted.iter().map(|p| p.destination.as_str()))
        .collect();
    let mut cache: HashMap<(&str, &str), f64> = HashMap::new();
    let mut leg = vec![vec![0.0; n + 1]; n + 1];
    for (i, from) in stops.iter().enumerate() {
        for (j, to) in stops.iter().enumerate() {
            if i != j {
                let len = match cache.get(&(*from, *to)) {
                    Some(&len) => len,
                    None => {
                        let len = network.shortest_path(from, to)?.total_length;
                        cache.insert((from, to), len);
                        len
                    }
                };
                leg[i][j] = len;
            }
        }
    }

    let mut best: Option<(f64, Vec<usize>)> = None;
    // itertools yields permutations of a sorted index range in lexicographic order
    for order in (0..n).permutations(n) {
        let mut total = 0.0;
        let mut at = 0;
        for &k in &order {
            total += leg[at][k + 1];
            at = k + 1;
        }
        total += leg[at][0];
        match &best {
            Some((score, _)) if !definitely_less(total, *score) => {}
            _ => best = Some((total, order)),
        }
    }
    let order: Vec<&Package> = match best {
        Some((_, order)) => order.into_iter().map(|k| sorted[k]).collect(),
        None => Vec::new(),
    };
    plan_from_order(network, source, &order, Strategy::Exhaustive.label())
}

/// Feasibility-checked planning with the chosen strategy.
pub fn plan_mission(
    network: &SkywayNetwork,
    source: &str,
    packages: &[Package],
    drone: &DroneConfig,
    level_capacity: usize,
    strategy: Strategy,
) -> Result<MissionPlan, PlanError> {
    let report = check_feasibility(drone, packages, level_capacity);
    if !report.feasible {
        return Err(PlanError::InfeasiblePayload(report.violations));
    }
    match strategy {
        Strategy::Ndf => plan_ndf(network, source, packages),
        Strategy::Exhaustive => plan_optimal(network, source, packages),
    }
}

/// The i-th released package hangs on level i, so the last release is on
/// the top level.
pub fn assign_levels(plan: &MissionPlan) -> HangingAssignment {
    let order = plan.release_order();
    HangingAssignment {
        level_of: order
            .iter()
            .enumerate()
            .map(|(i, id)| (id.to_string(), i + 1))
            .collect(),
        level_count: order.len(),
    }
}

pub fn plan_total_distance(plan: &MissionPlan) -> f64 {
    plan.legs.iter().map(|l| l.path.total_length).sum()
}
