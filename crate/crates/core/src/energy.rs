//! Payload-linear energy model.
//!
//! Every meter flown, horizontal or vertical, costs
//! `base_rate + payload_rate * payload` joules. Dropping a package therefore
//! lowers the cost of every meter that follows.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::planner::DroneConfig;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EnergyError {
    #[error("payload mass {0} kg is negative")]
    NegativePayload(f64),
    #[error("distance {0} m is negative")]
    NegativeDistance(f64),
    #[error("energy {0} J is negative")]
    NegativeEnergy(f64),
    #[error("battery depleted: {required} J required, {remaining} J remaining")]
    BatteryDepleted { required: f64, remaining: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BatteryState {
    pub capacity: f64,
    pub remaining: f64,
}

impl BatteryState {
    pub fn full(capacity: f64) -> Self {
        Self {
            capacity,
            remaining: capacity,
        }
    }

    pub fn used(&self) -> f64 {
        self.capacity - self.remaining
    }
}

/// Energy charged for one mission leg at a constant payload.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LegEnergy {
    pub distance_3d: f64,
    pub payload_mass: f64,
    pub rate: f64,
    pub energy: f64,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct EnergyBreakdown {
    pub legs: Vec<LegEnergy>,
    pub total: f64,
}

impl EnergyBreakdown {
    pub fn push(&mut self, leg: LegEnergy) {
        self.total += leg.energy;
        self.legs.push(leg);
    }
}

/// Energy per meter (J/m) while carrying `payload_mass` kg.
pub fn consumption_rate(drone: &DroneConfig, payload_mass: f64) -> Result<f64, EnergyError> {
    if payload_mass < 0.0 || payload_mass.is_nan() {
        return Err(EnergyError::NegativePayload(payload_mass));
    }
    Ok(drone.base_rate + drone.payload_rate * payload_mass)
}

pub fn leg_energy(
    drone: &DroneConfig,
    payload_mass: f64,
    distance_3d: f64,
) -> Result<f64, EnergyError> {
    if distance_3d < 0.0 || distance_3d.is_nan() {
        return Err(EnergyError::NegativeDistance(distance_3d));
    }
    Ok(consumption_rate(drone, payload_mass)? * distance_3d)
}

/// Removes `energy` joules. Draining exactly what is left is allowed.
pub fn drain(battery: BatteryState, energy: f64) -> Result<BatteryState, EnergyError> {
    if energy < 0.0 || energy.is_nan() {
        return Err(EnergyError::NegativeEnergy(energy));
    }
    if energy > battery.remaining {
        return Err(EnergyError::BatteryDepleted {
            required: energy,
            remaining: battery.remaining,
        });
    }
    Ok(BatteryState {
        capacity: battery.capacity,
        remaining: battery.remaining - energy,
    })
}
