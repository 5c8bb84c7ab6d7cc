//! Shared inputs for the criterion benchmarks.

use skyway_core::{generate_scenario, GenParams, Scenario};

/// Generated scenario with `packages` deliveries over `nodes` rooftops.
pub fn scenario(nodes: usize, packages: usize, seed: u64) -> Scenario {
    generate_scenario(&GenParams::new(nodes, packages, seed)).expect("valid generator parameters")
}
