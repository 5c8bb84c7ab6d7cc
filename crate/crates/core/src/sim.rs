//! Kinematic mission simulator.
//!
//! The drone starts on the source rooftop with every package hanging from
//! the string. For each leg it first adjusts to the leg's cruise altitude,
//! flies the leg's node path horizontally, then lowers until the package on
//! the lowest loaded level touches the destination rooftop. After a fixed
//! rebound dwell the package is released and the next leg begins. The last
//! leg returns to the source and lands on its rooftop.
//!
//! Motion is piecewise constant speed with vertical and horizontal moves
//! never overlapping. Telemetry holds a sample every `sample_step` seconds
//! on a global time grid plus one record at the end of every manoeuvre.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::energy::{consumption_rate, drain, BatteryState, EnergyBreakdown, LegEnergy};
use crate::graph::{NetworkError, Node, Path, SkywayNetwork};
use crate::planner::{DroneConfig, HangingAssignment, MissionPlan, Package};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error("invalid drone configuration: {0}")]
    InvalidDrone(String),
    #[error("invalid simulator configuration: {0}")]
    InvalidConfig(String),
    #[error("invalid plan: {0}")]
    InvalidPlan(String),
    #[error("plan releases unknown package {0:?}")]
    UnknownPackage(String),
    #[error("string rig has {levels} levels but the mission carries {packages} packages")]
    RigTooSmall { levels: usize, packages: usize },
    #[error("level {level} is outside the {level_count}-level rig")]
    InvalidLevel { level: usize, level_count: usize },
    #[error("hanging assignment does not match release order: {0}")]
    InconsistentAssignment(String),
    #[error(transparent)]
    Network(#[from] NetworkError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RigError {
    #[error("level {level} hang {hang} m must be > 0")]
    NonPositiveHang { level: usize, hang: f64 },
    #[error("level {level} must hang higher than level {}", .level - 1)]
    NotDecreasing { level: usize },
    #[error("clearance {0} m must be > 0")]
    InvalidClearance(f64),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct RigSpec {
    levels: Vec<f64>,
    clearance: f64,
}

/// The hanging string: one taped rung per level.
///
/// `levels[i]` is how far below the drone body the package on level `i + 1`
/// hangs. Level 1 is the bottom rung, so hangs strictly decrease with level.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RigSpec")]
pub struct StringRig {
    levels: Vec<f64>,
    clearance: f64,
}

impl TryFrom<RigSpec> for StringRig {
    type Error = RigError;

    fn try_from(spec: RigSpec) -> Result<Self, Self::Error> {
        StringRig::new(spec.levels, spec.clearance)
    }
}

impl StringRig {
    pub const DEFAULT_LEVELS: usize = 3;
    pub const DEFAULT_CLEARANCE: f64 = 1.0;
    const TOP_HANG: f64 = 1.0;
    const RUNG_SPACING: f64 = 0.5;

    pub fn new(levels: Vec<f64>, clearance: f64) -> Result<Self, RigError> {
        if let Some(err) = Self::problems(&levels, clearance).into_iter().next() {
            return Err(err);
        }
        Ok(Self { levels, clearance })
    }

    /// Every rule the rung hangs and clearance break.
    pub fn problems(levels: &[f64], clearance: f64) -> Vec<RigError> {
        let mut out = Vec::new();
        for (i, &hang) in levels.iter().enumerate() {
            if !(hang.is_finite() && hang > 0.0) {
                out.push(RigError::NonPositiveHang { level: i + 1, hang });
            } else if i > 0 && hang >= levels[i - 1] {
                out.push(RigError::NotDecreasing { level: i + 1 });
            }
        }
        if !(clearance.is_finite() && clearance > 0.0) {
            out.push(RigError::InvalidClearance(clearance));
        }
        out
    }

    /// Evenly spaced rungs: the top level hangs 1.0 m below the drone and
    /// each lower level another 0.5 m.
    pub fn with_levels(count: usize) -> Self {
        let levels = (1..=count)
            .map(|level| Self::TOP_HANG + Self::RUNG_SPACING * (count - level) as f64)
            .collect();
        Self {
            levels,
            clearance: Self::DEFAULT_CLEARANCE,
        }
    }

    pub fn level_count(&self) -> usize {
        self.levels.len()
    }

    /// Hang below the drone for a 1-based level.
    pub fn hang(&self, level: usize) -> Option<f64> {
        level
            .checked_sub(1)
            .and_then(|i| self.levels.get(i))
            .copied()
    }

    pub fn hangs(&self) -> &[f64] {
        &self.levels
    }

    pub fn clearance(&self) -> f64 {
        self.clearance
    }
}

impl Default for StringRig {
    fn default() -> Self {
        Self::with_levels(Self::DEFAULT_LEVELS)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    /// Pause at the release altitude while the rebound frees the package (s).
    pub release_dwell: f64,
    /// Telemetry sampling interval (s).
    pub sample_step: f64,
}

impl Default for SimConfig {
    fn default() -> Self {
        Self {
            release_dwell: 2.0,
            sample_step: 0.1,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DroneState {
    pub position: [f64; 3],
    pub loaded: BTreeSet<String>,
    pub battery: BatteryState,
    pub clock: f64,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TelemetryEvent {
    Takeoff,
    /// Passed an intermediate node of the leg path.
    Cruise,
    /// Reached the delivery node at cruise altitude.
    Arrive,
    Descend,
    Release(String),
    Ascend,
    /// Reached the source at cruise altitude at the end of the return leg.
    ReturnLeg,
    Land,
    Abort,
}

impl fmt::Display for TelemetryEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TelemetryEvent::Takeoff => f.write_str("TAKEOFF"),
            TelemetryEvent::Cruise => f.write_str("CRUISE"),
            TelemetryEvent::Arrive => f.write_str("ARRIVE"),
            TelemetryEvent::Descend => f.write_str("DESCEND"),
            TelemetryEvent::Release(id) => write!(f, "RELEASE({id})"),
            TelemetryEvent::Ascend => f.write_str("ASCEND"),
            TelemetryEvent::ReturnLeg => f.write_str("RETURN_LEG"),
            TelemetryEvent::Land => f.write_str("LAND"),
            TelemetryEvent::Abort => f.write_str("ABORT"),
        }
    }
}

impl FromStr for TelemetryEvent {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "TAKEOFF" => TelemetryEvent::Takeoff,
            "CRUISE" => TelemetryEvent::Cruise,
            "ARRIVE" => TelemetryEvent::Arrive,
            "DESCEND" => TelemetryEvent::Descend,
            "ASCEND" => TelemetryEvent::Ascend,
            "RETURN_LEG" => TelemetryEvent::ReturnLeg,
            "LAND" => TelemetryEvent::Land,
            "ABORT" => TelemetryEvent::Abort,
            other => match other
                .strip_prefix("RELEASE(")
                .and_then(|rest| rest.strip_suffix(')'))
            {
                Some(id) => TelemetryEvent::Release(id.to_string()),
                None => return Err(format!("unknown telemetry event {other:?}")),
            },
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FlightPhase {
    Ground,
    Vertical,
    Cruise,
    Dwell,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TelemetryRecord {
    pub t: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub payload_mass: f64,
    pub battery_remaining: f64,
    /// `None` for plain periodic samples.
    pub event: Option<TelemetryEvent>,
    /// Index of the plan leg being flown.
    pub leg: usize,
    pub phase: FlightPhase,
}

impl TelemetryRecord {
    pub fn position(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct TelemetryLog {
    pub records: Vec<TelemetryRecord>,
}

impl TelemetryLog {
    pub fn events(&self) -> impl Iterator<Item = &TelemetryEvent> {
        self.records.iter().filter_map(|r| r.event.as_ref())
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReleaseRecord {
    pub package: String,
    pub node: String,
    pub t: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MissionReport {
    pub completed: bool,
    pub releases: Vec<ReleaseRecord>,
    pub total_distance_3d: f64,
    pub horizontal_distance: f64,
    pub vertical_distance: f64,
    /// Mission clock at the last record (s).
    pub duration: f64,
    pub energy: EnergyBreakdown,
    pub battery_remaining: f64,
    pub end_position: [f64; 3],
    pub abort_reason: Option<String>,
}

/// Altitude that keeps the lowest loaded package clear of every rooftop on
/// the leg: highest rooftop on the path, plus the longest loaded hang, plus
/// the rig clearance.
pub fn cruise_altitude(
    network: &SkywayNetwork,
    leg_path: &Path,
    rig: &StringRig,
    loaded_levels: &BTreeSet<usize>,
) -> f64 {
    let highest_roof = leg_path
        .node_sequence
        .iter()
        .filter_map(|id| network.node(id))
        .map(|n| n.rooftop_height)
        .fold(0.0, f64::max);
    let hang = loaded_levels
        .iter()
        .filter_map(|&level| rig.hang(level))
        .fold(0.0, f64::max);
    highest_roof + hang + rig.clearance()
}

/// Drone altitude at which the package on `level` rests on the rooftop.
pub fn release_altitude(node: &Node, rig: &StringRig, level: usize) -> Result<f64, SimError> {
    rig.hang(level)
        .map(|hang| node.rooftop_height + hang)
        .ok_or(SimError::InvalidLevel {
            level,
            level_count: rig.level_count(),
        })
}

struct Depleted;

struct Flight<'a> {
    drone: &'a DroneConfig,
    config: &'a SimConfig,
    state: DroneState,
    payload: f64,
    leg: usize,
    leg_payload: f64,
    rate: f64,
    leg_distance: f64,
    horizontal: f64,
    vertical: f64,
    records: Vec<TelemetryRecord>,
}

fn distance(a: [f64; 3], b: [f64; 3]) -> f64 {
    ((b[0] - a[0]).powi(2) + (b[1] - a[1]).powi(2) + (b[2] - a[2]).powi(2)).sqrt()
}

fn lerp(a: [f64; 3], b: [f64; 3], f: f64) -> [f64; 3] {
    [
        a[0] + (b[0] - a[0]) * f,
        a[1] + (b[1] - a[1]) * f,
        a[2] + (b[2] - a[2]) * f,
    ]
}

/// Grid times strictly inside (t0, t1).
fn sample_times(t0: f64, t1: f64, step: f64) -> impl Iterator<Item = f64> {
    const GAP: f64 = 1e-9;
    let first = (t0 / step).floor() as u64 + 1;
    (first..)
        .map(move |k| k as f64 * step)
        .take_while(move |&t| t < t1 - GAP)
        .filter(move |&t| t > t0 + GAP)
}

impl Flight<'_> {
    fn push(
        &mut self,
        position: [f64; 3],
        t: f64,
        battery: f64,
        phase: FlightPhase,
        event: Option<TelemetryEvent>,
    ) {
        self.records.push(TelemetryRecord {
            t,
            x: position[0],
            y: position[1],
            z: position[2],
            payload_mass: self.payload,
            battery_remaining: battery,
            event,
            leg: self.leg,
            phase,
        });
    }

    fn mark(&mut self, phase: FlightPhase, event: TelemetryEvent) {
        let (pos, t, battery) = (
            self.state.position,
            self.state.clock,
            self.state.battery.remaining,
        );
        self.push(pos, t, battery, phase, Some(event));
    }

    /// Straight-line move charged at the current rate. On depletion the
    /// drone stops where the battery runs out and an ABORT is recorded.
    fn fly(
        &mut self,
        target: [f64; 3],
        phase: FlightPhase,
        event: TelemetryEvent,
    ) -> Result<(), Depleted> {
        let start = self.state.position;
        let length = distance(start, target);
        if length == 0.0 {
            self.mark(phase, event);
            return Ok(());
        }
        let speed = match phase {
            FlightPhase::Vertical => self.drone.vertical_speed,
            _ => self.drone.cruise_speed,
        };
        let energy = self.rate * length;
        let battery0 = self.state.battery.remaining;
        let (reach, after) = match drain(self.state.battery, energy) {
            Ok(after) => (1.0, Some(after)),
            Err(_) => (battery0 / energy, None),
        };
        let t0 = self.state.clock;
        let duration = length / speed;
        let t_end = t0 + reach * duration;
        for t in sample_times(t0, t_end, self.config.sample_step) {
            let f = (t - t0) / duration;
            let battery = battery0 - self.rate * length * f;
            self.push(lerp(start, target, f), t, battery, phase, None);
        }

        let travelled = length * reach;
        self.leg_distance += travelled;
        if phase == FlightPhase::Vertical {
            self.vertical += travelled;
        } else {
            self.horizontal += travelled;
        }
        self.state.clock = t_end;
        match after {
            Some(battery) => {
                self.state.position = target;
                self.state.battery = battery;
                self.mark(phase, event);
                Ok(())
            }
            None => {
                self.state.position = lerp(start, target, reach);
                self.state.battery.remaining = 0.0;
                self.mark(phase, TelemetryEvent::Abort);
                Err(Depleted)
            }
        }
    }

    fn climb_to(&mut self, altitude: f64, event: Option<TelemetryEvent>) -> Result<(), Depleted> {
        let [x, y, z] = self.state.position;
        if altitude == z && event.is_none() {
            return Ok(());
        }
        let event = event.unwrap_or(if altitude > z {
            TelemetryEvent::Ascend
        } else {
            TelemetryEvent::Descend
        });
        self.fly([x, y, altitude], FlightPhase::Vertical, event)
    }

    fn dwell(&mut self) {
        let t0 = self.state.clock;
        let t1 = t0 + self.config.release_dwell;
        let (pos, battery) = (self.state.position, self.state.battery.remaining);
        for t in sample_times(t0, t1, self.config.sample_step) {
            self.push(pos, t, battery, FlightPhase::Dwell, None);
        }
        self.state.clock = t1;
    }

    fn close_leg(&mut self, breakdown: &mut EnergyBreakdown) {
        breakdown.push(LegEnergy {
            distance_3d: self.leg_distance,
            payload_mass: self.leg_payload,
            rate: self.rate,
            energy: self.rate * self.leg_distance,
        });
        self.leg_distance = 0.0;
    }
}

fn validate(
    network: &SkywayNetwork,
    plan: &MissionPlan,
    assignment: &HangingAssignment,
    drone: &DroneConfig,
    rig: &StringRig,
    packages: &[Package],
    config: &SimConfig,
) -> Result<(), SimError> {
    if let Some((field, reason)) = drone.violations().into_iter().next() {
        return Err(SimError::InvalidDrone(format!("{field} {reason}")));
    }
    if !(config.release_dwell.is_finite() && config.release_dwell > 0.0) {
        return Err(SimError::InvalidConfig("release_dwell must be > 0".into()));
    }
    if !(config.sample_step.is_finite() && config.sample_step > 0.0) {
        return Err(SimError::InvalidConfig("sample_step must be > 0".into()));
    }

    if network.node(&plan.source).is_none() {
        return Err(NetworkError::UnknownNode(plan.source.clone()).into());
    }
    let Some(last) = plan.legs.last() else {
        return Err(SimError::InvalidPlan("plan has no legs".into()));
    };
    if last.release.is_some() || last.path.end() != plan.source {
        return Err(SimError::InvalidPlan(
            "final leg must return to the source without a release".into(),
        ));
    }
    let by_id: HashMap<&str, &Package> = packages.iter().map(|p| (p.id.as_str(), p)).collect();
    if by_id.len() != packages.len() {
        return Err(SimError::InvalidPlan("duplicate package ids".into()));
    }
    let mut at = plan.source.as_str();
    let mut released = HashSet::new();
    for (k, leg) in plan.legs.iter().enumerate() {
        network.validate_path(&leg.path)?;
        if leg.path.start() != at {
            return Err(SimError::InvalidPlan(format!(
                "leg {k} starts at {} but the drone is at {at}",
                leg.path.start()
            )));
        }
        at = leg.path.end();
        match (&leg.release, k + 1 == plan.legs.len()) {
            (Some(id), _) => {
                let package = by_id
                    .get(id.as_str())
                    .ok_or_else(|| SimError::UnknownPackage(id.clone()))?;
                if package.destination != at {
                    return Err(SimError::InvalidPlan(format!(
                        "leg {k} releases {id} at {at}, not at {}",
                        package.destination
                    )));
                }
                if !released.insert(id.as_str()) {
                    return Err(SimError::InvalidPlan(format!("{id} is released twice")));
                }
            }
            (None, false) => {
                return Err(SimError::InvalidPlan(format!("leg {k} releases nothing")));
            }
            (None, true) => {}
        }
    }
    if released.len() != packages.len() {
        return Err(SimError::InvalidPlan(format!(
            "plan releases {} of {} packages",
            released.len(),
            packages.len()
        )));
    }

    if rig.level_count() < packages.len() {
        return Err(SimError::RigTooSmall {
            levels: rig.level_count(),
            packages: packages.len(),
        });
    }
    if assignment.level_count != packages.len() || assignment.level_of.len() != packages.len() {
        return Err(SimError::InconsistentAssignment(format!(
            "{} levels assigned for {} packages",
            assignment.level_of.len(),
            packages.len()
        )));
    }
    for (i, id) in plan.release_order().into_iter().enumerate() {
        match assignment.level_of.get(id) {
            Some(&level) if level == i + 1 => {}
            Some(&level) => {
                return Err(SimError::InconsistentAssignment(format!(
                    "release #{} ({id}) hangs on level {level}",
                    i + 1
                )))
            }
            None => {
                return Err(SimError::InconsistentAssignment(format!(
                    "{id} has no level"
                )))
            }
        }
    }
    Ok(())
}

/// Flies `plan` and returns the telemetry and the mission report.
///
/// Running out of battery is not an error: the log ends with ABORT and the
/// report is marked incomplete.
pub fn simulate_mission(
    network: &SkywayNetwork,
    plan: &MissionPlan,
    assignment: &HangingAssignment,
    drone: &DroneConfig,
    rig: &StringRig,
    packages: &[Package],
    config: &SimConfig,
) -> Result<(TelemetryLog, MissionReport), SimError> {
    validate(network, plan, assignment, drone, rig, packages, config)?;

    let source = network.node(&plan.source).expect("validated");
    let mass_of: HashMap<&str, f64> = packages.iter().map(|p| (p.id.as_str(), p.mass)).collect();
    let mut flight = Flight {
        drone,
        config,
        state: DroneState {
            position: [source.x, source.y, source.rooftop_height],
            loaded: packages.iter().map(|p| p.id.clone()).collect(),
            battery: BatteryState::full(drone.battery_capacity),
            clock: 0.0,
        },
        payload: 0.0,
        leg: 0,
        leg_payload: 0.0,
        rate: 0.0,
        leg_distance: 0.0,
        horizontal: 0.0,
        vertical: 0.0,
        records: Vec::new(),
    };
    let mut breakdown = EnergyBreakdown::default();
    let mut releases = Vec::new();
    let mut abort_reason = None;
    flight.payload = flight
        .state
        .loaded
        .iter()
        .map(|p| mass_of[p.as_str()])
        .sum();
    flight.leg_payload = flight.payload;

    flight.mark(FlightPhase::Ground, TelemetryEvent::Takeoff);
    // an empty mission never leaves the rooftop
    let legs = if plan.legs.len() == 1 && plan.legs[0].path.hop_count() == 0 {
        flight.rate = consumption_rate(drone, flight.payload).expect("payload is non-negative");
        flight.mark(FlightPhase::Ground, TelemetryEvent::Land);
        flight.close_leg(&mut breakdown);
        &plan.legs[..0]
    } else {
        &plan.legs[..]
    };

    for (k, leg) in legs.iter().enumerate() {
        flight.leg = k;
        flight.leg_payload = flight.payload;
        flight.rate = consumption_rate(drone, flight.payload).expect("payload is non-negative");
        let loaded_levels: BTreeSet<usize> = flight
            .state
            .loaded
            .iter()
            .map(|id| assignment.level_of[id])
            .collect();
        let cruise = cruise_altitude(network, &leg.path, rig, &loaded_levels);

        let outcome = fly_leg(
            &mut flight,
            network,
            leg,
            cruise,
            rig,
            assignment,
            &mut releases,
            &mass_of,
        );
        flight.close_leg(&mut breakdown);
        if outcome.is_err() {
            abort_reason = Some(format!(
                "battery depleted on leg {} at t={:.3}s",
                k + 1,
                flight.state.clock
            ));
            break;
        }
    }

    let end_position = flight.state.position;
    let at_source = end_position == [source.x, source.y, source.rooftop_height];
    let completed = abort_reason.is_none() && flight.state.loaded.is_empty() && at_source;
    let report = MissionReport {
        completed,
        releases,
        total_distance_3d: flight.horizontal + flight.vertical,
        horizontal_distance: flight.horizontal,
        vertical_distance: flight.vertical,
        duration: flight.state.clock,
        energy: breakdown,
        battery_remaining: flight.state.battery.remaining,
        end_position,
        abort_reason,
    };
    Ok((
        TelemetryLog {
            records: flight.records,
        },
        report,
    ))
}

#[allow(clippy::too_many_arguments)]
fn fly_leg(
    flight: &mut Flight<'_>,
    network: &SkywayNetwork,
    leg: &crate::planner::Leg,
    cruise: f64,
    rig: &StringRig,
    assignment: &HangingAssignment,
    releases: &mut Vec<ReleaseRecord>,
    mass_of: &HashMap<&str, f64>,
) -> Result<(), Depleted> {
    let hops = &leg.path.node_sequence[1..];
    // another package for the rooftop we are already over: lower the next
    // level straight down
    if !hops.is_empty() {
        flight.climb_to(cruise, None)?;
    }

    let arrival = match leg.release {
        Some(_) => TelemetryEvent::Arrive,
        None => TelemetryEvent::ReturnLeg,
    };
    for (i, id) in hops.iter().enumerate() {
        let node = network.node(id).expect("validated path");
        let event = if i + 1 == hops.len() {
            arrival.clone()
        } else {
            TelemetryEvent::Cruise
        };
        flight.fly([node.x, node.y, cruise], FlightPhase::Cruise, event)?;
    }

    let target = network.node(leg.path.end()).expect("validated path");
    match &leg.release {
        Some(id) => {
            let level = assignment.level_of[id];
            let altitude = release_altitude(target, rig, level).expect("rig holds every level");
            flight.climb_to(altitude, Some(TelemetryEvent::Descend))?;
            flight.dwell();
            flight.state.loaded.remove(id);
            flight.payload = flight
                .state
                .loaded
                .iter()
                .map(|p| mass_of[p.as_str()])
                .sum();
            flight.mark(FlightPhase::Dwell, TelemetryEvent::Release(id.clone()));
            releases.push(ReleaseRecord {
                package: id.clone(),
                node: target.id.clone(),
                t: flight.state.clock,
            });
        }
        None => flight.climb_to(target.rooftop_height, Some(TelemetryEvent::Land))?,
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_network;

    fn net() -> SkywayNetwork {
        build_network(
            vec![
                Node::new("S", 0.0, 0.0, 0.0),
                Node::new("A", 10.0, 0.0, 10.0),
                Node::new("B", 20.0, 0.0, 20.0),
            ],
            &[("S", "A"), ("A", "B")],
        )
        .unwrap()
    }

    fn rig(levels: &[f64]) -> StringRig {
        StringRig::new(levels.to_vec(), 1.0).unwrap()
    }

    #[test]
    fn cruise_altitude_examples() {
        let n = net();
        let path = n.shortest_path("S", "A").unwrap();
        let r = rig(&[2.0, 1.5, 1.0]);
        assert_eq!(
            cruise_altitude(&n, &path, &r, &BTreeSet::from([1, 2])),
            13.0
        );
        let over_b = Path::stationary("B");
        assert_eq!(cruise_altitude(&n, &over_b, &r, &BTreeSet::new()), 21.0);

        let tall = build_network::<&str>(vec![Node::new("T", 0.0, 0.0, 15.0)], &[]).unwrap();
        let r = rig(&[2.0, 1.5]);
        assert_eq!(
            cruise_altitude(&tall, &Path::stationary("T"), &r, &BTreeSet::from([2])),
            17.5
        );
    }

    #[test]
    fn release_altitude_examples() {
        let r = rig(&[2.0, 1.5, 1.0]);
        assert_eq!(
            release_altitude(&Node::new("X", 0.0, 0.0, 20.0), &r, 1).unwrap(),
            22.0
        );
        assert_eq!(
            release_altitude(&Node::new("X", 0.0, 0.0, 0.0), &r, 3).unwrap(),
            1.0
        );
        assert_eq!(
            release_altitude(&Node::new("X", 0.0, 0.0, 0.0), &r, 4).unwrap_err(),
            SimError::InvalidLevel {
                level: 4,
                level_count: 3
            }
        );
        assert!(release_altitude(&Node::new("X", 0.0, 0.0, 0.0), &r, 0).is_err());
    }

    #[test]
    fn rig_rules() {
        assert_eq!(StringRig::default().hangs(), [2.0, 1.5, 1.0]);
        assert_eq!(
            StringRig::new(vec![1.0, 1.0], 1.0).unwrap_err(),
            RigError::NotDecreasing { level: 2 }
        );
        assert!(matches!(
            StringRig::new(vec![1.0, 0.0], 1.0),
            Err(RigError::NonPositiveHang { level: 2, .. })
        ));
        assert!(matches!(
            StringRig::new(vec![1.0], 0.0),
            Err(RigError::InvalidClearance(_))
        ));
        let rig: StringRig =
            serde_json::from_str(r#"{"levels":[3.0,2.0],"clearance":0.5}"#).unwrap();
        assert_eq!(rig.level_count(), 2);
        assert!(
            serde_json::from_str::<StringRig>(r#"{"levels":[1.0,2.0],"clearance":0.5}"#).is_err()
        );
    }

    #[test]
    fn event_names_round_trip() {
        for ev in [
            TelemetryEvent::Takeoff,
            TelemetryEvent::Cruise,
            TelemetryEvent::Arrive,
            TelemetryEvent::Descend,
            TelemetryEvent::Release("p-7".into()),
            TelemetryEvent::Ascend,
            TelemetryEvent::ReturnLeg,
            TelemetryEvent::Land,
            TelemetryEvent::Abort,
        ] {
            assert_eq!(ev.to_string().parse::<TelemetryEvent>().unwrap(), ev);
        }
        assert!("HOVER".parse::<TelemetryEvent>().is_err());
    }

    #[test]
    fn sample_grid_excludes_endpoints() {
        let ts: Vec<f64> = sample_times(0.0, 0.5, 0.1).collect();
        assert_eq!(ts.len(), 4);
        assert!(sample_times(0.3, 0.3, 0.1).next().is_none());
        let ts: Vec<f64> = sample_times(0.25, 0.45, 0.1).collect();
        assert_eq!(ts.len(), 2);
    }
}
