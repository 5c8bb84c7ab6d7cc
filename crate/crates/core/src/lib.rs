//! Single-drone multi-package delivery over a skyway network.
//!
//! The crate covers the whole pipeline: building a validated skyway graph,
//! ordering deliveries with the nearest-destination-first greedy rule (and
//! an exhaustive planner used to check it), assigning packages to levels of
//! the hanging string, and flying the resulting mission through a
//! deterministic kinematic simulator with a payload-linear energy model.

pub mod energy;
pub mod fixtures;
pub mod graph;
pub mod mission;
pub mod planner;
pub mod scenario;
pub mod sim;
pub mod telemetry;

pub use energy::{BatteryState, EnergyBreakdown, EnergyError, LegEnergy};
pub use graph::{build_network, NetworkError, Node, Path, Segment, SkywayNetwork};
pub use mission::{compare_strategies, run_scenario, CompareResult, MissionError, MissionOutcome};
pub use planner::{
    assign_levels, check_feasibility, plan_mission, plan_ndf, plan_optimal, plan_total_distance,
    DroneConfig, FeasibilityReport, HangingAssignment, Leg, MissionPlan, Package, PlanError,
    Strategy,
};
pub use scenario::{generate_scenario, parse_scenario, GenParams, Scenario, ScenarioError};
pub use sim::{
    simulate_mission, MissionReport, SimConfig, SimError, StringRig, TelemetryEvent, TelemetryLog,
    TelemetryRecord,
};
pub use telemetry::{export_telemetry, parse_telemetry};

/// Tolerance used when comparing accumulated distances: relative, with an
/// absolute floor of 1e-9 for values near zero.
pub(crate) const DISTANCE_EPS: f64 = 1e-9;

pub(crate) fn approx_eq(a: f64, b: f64) -> bool {
    (a - b).abs() <= DISTANCE_EPS * a.abs().max(b.abs()).max(1.0)
}

/// `a` is smaller than `b` by more than the comparison tolerance.
pub(crate) fn definitely_less(a: f64, b: f64) -> bool {
    a < b && !approx_eq(a, b)
}
