//! Telemetry and report invariants, each returning a description of the
//! first violation found.

#![allow(dead_code)]

use std::collections::HashMap;

use skyway_core::sim::FlightPhase;
use skyway_core::{
    HangingAssignment, MissionPlan, MissionReport, Package, Scenario, SimConfig, TelemetryEvent,
    TelemetryLog,
};

pub type Check = Result<(), String>;

fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

/// Timestamps strictly increase. The only exception is a mission with
/// nothing to deliver, whose TAKEOFF and LAND share t = 0 on the rooftop.
pub fn strictly_increasing_time(log: &TelemetryLog) -> Check {
    let stationary = log.len() == 2
        && log.records[0].event == Some(TelemetryEvent::Takeoff)
        && log.records[1].event == Some(TelemetryEvent::Land)
        && log.records[0].t == 0.0
        && log.records[1].t == 0.0;
    if stationary {
        return Ok(());
    }
    for w in log.records.windows(2) {
        if w[1].t <= w[0].t {
            return Err(format!("time {} followed by {}", w[0].t, w[1].t));
        }
    }
    Ok(())
}

pub fn release_levels_in_order(log: &TelemetryLog, assignment: &HangingAssignment) -> Check {
    let levels: Vec<usize> = log
        .events()
        .filter_map(|e| match e {
            TelemetryEvent::Release(id) => Some(assignment.level_of[id]),
            _ => None,
        })
        .collect();
    let expected: Vec<usize> = (1..=levels.len()).collect();
    if levels != expected {
        return Err(format!("release levels {levels:?}"));
    }
    if let Some(&last) = levels.last() {
        if last != assignment.level_count {
            return Err(format!(
                "last release on level {last} of {}",
                assignment.level_count
            ));
        }
    }
    Ok(())
}

/// Payload only changes at RELEASE records, by exactly the released mass.
pub fn payload_conservation(log: &TelemetryLog, packages: &[Package]) -> Check {
    let mass: HashMap<&str, f64> = packages.iter().map(|p| (p.id.as_str(), p.mass)).collect();
    let total: f64 = packages.iter().map(|p| p.mass).sum();
    match log.records.first() {
        Some(r) if !rel_close(r.payload_mass, total, 1e-12) => {
            return Err(format!("initial payload {} != {}", r.payload_mass, total))
        }
        _ => {}
    }
    for w in log.records.windows(2) {
        let step = w[0].payload_mass - w[1].payload_mass;
        match &w[1].event {
            Some(TelemetryEvent::Release(id)) => {
                if (step - mass[id.as_str()]).abs() > 1e-9 {
                    return Err(format!("release of {id} dropped {step} kg"));
                }
            }
            _ if step != 0.0 => return Err(format!("payload changed by {step} at t={}", w[1].t)),
            _ => {}
        }
    }
    Ok(())
}

pub fn battery_non_increasing(log: &TelemetryLog) -> Check {
    for w in log.records.windows(2) {
        if w[1].battery_remaining > w[0].battery_remaining {
            return Err(format!("battery rose at t={}", w[1].t));
        }
    }
    Ok(())
}

/// During cruise, the lowest loaded package clears every rooftop on the
/// leg path (with the rig clearance on top).
pub fn cruise_clearance(log: &TelemetryLog, scenario: &Scenario, plan: &MissionPlan) -> Check {
    for r in log
        .records
        .iter()
        .filter(|r| r.phase == FlightPhase::Cruise)
    {
        let leg = &plan.legs[r.leg];
        // legs before k have released packages on levels 1..=k
        let hang = if leg.release.is_some() {
            scenario.rig.hang(r.leg + 1).unwrap()
        } else {
            0.0
        };
        for id in &leg.path.node_sequence {
            let roof = scenario.network.node(id).unwrap().rooftop_height;
            if r.z - hang < roof - 1e-9 {
                return Err(format!(
                    "package at {} below rooftop {roof} of {id}",
                    r.z - hang
                ));
            }
            if r.z - hang < roof + scenario.rig.clearance() - 1e-9 {
                return Err(format!("clearance lost over {id} at t={}", r.t));
            }
        }
    }
    Ok(())
}

pub fn ends_at_source(report: &MissionReport, scenario: &Scenario) -> Check {
    let s = scenario.network.node(&scenario.source).unwrap();
    let target = [s.x, s.y, s.rooftop_height];
    let err = (0..3)
        .map(|i| (report.end_position[i] - target[i]).abs())
        .fold(0.0, f64::max);
    if err > 1e-9 {
        return Err(format!("ended {err} m from the source"));
    }
    Ok(())
}

/// Report totals recomputed from the telemetry trace.
pub fn report_matches_telemetry(
    log: &TelemetryLog,
    report: &MissionReport,
    scenario: &Scenario,
    config: &SimConfig,
) -> Check {
    let d = &scenario.drone;
    let (mut dist, mut horiz, mut vert, mut energy) = (0.0, 0.0, 0.0, 0.0);
    for w in log.records.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        let h = (b.x - a.x).hypot(b.y - a.y);
        let v = (b.z - a.z).abs();
        let step = (h * h + v * v).sqrt();
        dist += step;
        horiz += h;
        vert += v;
        energy += (d.base_rate + d.payload_rate * a.payload_mass) * step;
    }
    let first = log.records.first().ok_or("empty log")?;
    let last = log.records.last().unwrap();
    let drained = first.battery_remaining - last.battery_remaining;
    let checks = [
        ("distance", dist, report.total_distance_3d),
        ("horizontal", horiz, report.horizontal_distance),
        ("vertical", vert, report.vertical_distance),
        ("energy", energy, report.energy.total),
        ("battery", drained, report.energy.total),
        (
            "leg sum",
            report.energy.legs.iter().map(|l| l.energy).sum(),
            report.energy.total,
        ),
        ("duration", last.t, report.duration),
        (
            "remaining",
            last.battery_remaining,
            report.battery_remaining,
        ),
    ];
    for (name, got, want) in checks {
        if !rel_close(got, want, 1e-6) {
            return Err(format!("{name}: telemetry {got} vs report {want}"));
        }
    }
    if report.completed {
        let expected = report.horizontal_distance / d.cruise_speed
            + report.vertical_distance / d.vertical_speed
            + config.release_dwell * report.releases.len() as f64;
        if !rel_close(report.duration, expected, 1e-9) {
            return Err(format!(
                "duration {} vs kinematics {expected}",
                report.duration
            ));
        }
    }
    Ok(())
}

/// Each leg is charged at the affine rate, and the rate drops after every
/// release.
pub fn energy_legs_consistent(report: &MissionReport, scenario: &Scenario) -> Check {
    let d = &scenario.drone;
    for (i, leg) in report.energy.legs.iter().enumerate() {
        let rate = d.base_rate + d.payload_rate * leg.payload_mass;
        if !rel_close(leg.rate, rate, 1e-12) {
            return Err(format!("leg {i} rate {} vs {rate}", leg.rate));
        }
        if !rel_close(leg.energy, rate * leg.distance_3d, 1e-9) {
            return Err(format!("leg {i} energy {}", leg.energy));
        }
    }
    for w in report.energy.legs.windows(2) {
        if w[1].rate >= w[0].rate {
            return Err(format!("rate {} not below {}", w[1].rate, w[0].rate));
        }
    }
    Ok(())
}

pub fn all_mission_checks(
    scenario: &Scenario,
    plan: &MissionPlan,
    assignment: &HangingAssignment,
    log: &TelemetryLog,
    report: &MissionReport,
    config: &SimConfig,
) -> Check {
    strictly_increasing_time(log)?;
    release_levels_in_order(log, assignment)?;
    payload_conservation(log, &scenario.packages)?;
    battery_non_increasing(log)?;
    cruise_clearance(log, scenario, plan)?;
    report_matches_telemetry(log, report, scenario, config)?;
    energy_legs_consistent(report, scenario)?;
    if report.completed {
        ends_at_source(report, scenario)?;
    }
    Ok(())
}
