//! End-to-end runs over a parsed scenario: check, plan, assign, fly.

use std::thread;

use serde::Serialize;
use thiserror::Error;

use crate::approx_eq;
use crate::planner::{
    assign_levels, check_feasibility, plan_ndf, plan_optimal, FeasibilityReport, HangingAssignment,
    MissionPlan, PlanError, Strategy,
};
use crate::scenario::Scenario;
use crate::sim::{simulate_mission, MissionReport, SimConfig, SimError, TelemetryLog};

#[derive(Debug, Error)]
pub enum MissionError {
    #[error("infeasible mission: {}", .0.violations.join("; "))]
    Infeasible(FeasibilityReport),
    #[error(transparent)]
    Plan(#[from] PlanError),
    #[error(transparent)]
    Sim(#[from] SimError),
}

#[derive(Debug, Clone)]
pub struct MissionOutcome {
    pub plan: MissionPlan,
    pub assignment: HangingAssignment,
    pub log: TelemetryLog,
    pub report: MissionReport,
}

/// Feasibility check followed by planning with `strategy`.
pub fn plan_scenario(scenario: &Scenario, strategy: Strategy) -> Result<MissionPlan, MissionError> {
    let feasibility = check_feasibility(
        &scenario.drone,
        &scenario.packages,
        scenario.rig.level_count(),
    );
    if !feasibility.feasible {
        return Err(MissionError::Infeasible(feasibility));
    }
    let plan = match strategy {
        Strategy::Ndf => plan_ndf(&scenario.network, &scenario.source, &scenario.packages)?,
        Strategy::Exhaustive => {
            plan_optimal(&scenario.network, &scenario.source, &scenario.packages)?
        }
    };
    Ok(plan)
}

pub fn run_scenario(
    scenario: &Scenario,
    strategy: Strategy,
    config: &SimConfig,
) -> Result<MissionOutcome, MissionError> {
    let plan = plan_scenario(scenario, strategy)?;
    let assignment = assign_levels(&plan);
    let (log, report) = simulate_mission(
        &scenario.network,
        &plan,
        &assignment,
        &scenario.drone,
        &scenario.rig,
        &scenario.packages,
        config,
    )?;
    Ok(MissionOutcome {
        plan,
        assignment,
        log,
        report,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StrategyOutcome {
    pub label: String,
    pub release_order: Vec<String>,
    pub total_distance: f64,
    pub total_energy: f64,
    pub completed: bool,
}

impl StrategyOutcome {
    fn from_outcome(outcome: &MissionOutcome) -> Self {
        Self {
            label: outcome.plan.strategy_label.clone(),
            release_order: outcome
                .plan
                .release_order()
                .into_iter()
                .map(str::to_string)
                .collect(),
            total_distance: outcome.plan.total_distance(),
            total_energy: outcome.report.energy.total,
            completed: outcome.report.completed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompareResult {
    /// NDF first, exhaustive second.
    pub strategies: Vec<StrategyOutcome>,
    /// 100 * (ndf - optimal) / optimal, over plan distance.
    pub distance_gap_percent: f64,
}

/// Runs both strategies on the same scenario.
pub fn compare_strategies(
    scenario: &Scenario,
    config: &SimConfig,
) -> Result<CompareResult, MissionError> {
    let (ndf, optimal) = thread::scope(|s| {
        let ndf = s.spawn(|| run_scenario(scenario, Strategy::Ndf, config));
        let optimal = run_scenario(scenario, Strategy::Exhaustive, config);
        (ndf.join().expect("ndf run panicked"), optimal)
    });
    let (ndf, optimal) = (
        StrategyOutcome::from_outcome(&ndf?),
        StrategyOutcome::from_outcome(&optimal?),
    );
    // reversed tours tie up to rounding; report those as no gap
    let distance_gap_percent = if approx_eq(ndf.total_distance, optimal.total_distance) {
        0.0
    } else if optimal.total_distance > 0.0 {
        100.0 * (ndf.total_distance - optimal.total_distance) / optimal.total_distance
    } else {
        0.0
    };
    Ok(CompareResult {
        strategies: vec![ndf, optimal],
        distance_gap_percent,
    })
}
