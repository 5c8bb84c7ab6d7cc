#![allow(dead_code)]

pub mod checks;
pub mod oracle;

use skyway_core::{build_network, parse_scenario, Node, Package, Scenario, SkywayNetwork};

pub fn fixture(text: &str) -> Scenario {
    parse_scenario(text).expect("bundled fixture parses")
}

/// N1: S(0,0) A(30,40) B(100,0) C(130,40); S-A, S-B, A-B, B-C.
pub fn n1() -> SkywayNetwork {
    fixture(skyway_core::fixtures::N1).network
}

/// N2: complete graph on collinear S=0, A=+1, B=-2, C=+4.
pub fn n2() -> SkywayNetwork {
    build_network(
        vec![
            Node::new("S", 0.0, 0.0, 0.0),
            Node::new("A", 1.0, 0.0, 0.0),
            Node::new("B", -2.0, 0.0, 0.0),
            Node::new("C", 4.0, 0.0, 0.0),
        ],
        &[
            ("S", "A"),
            ("S", "B"),
            ("S", "C"),
            ("A", "B"),
            ("A", "C"),
            ("B", "C"),
        ],
    )
    .unwrap()
}

pub fn n1_packages() -> Vec<Package> {
    vec![
        Package::new("p1", 2.0, "A"),
        Package::new("p2", 2.0, "B"),
        Package::new("p3", 2.0, "C"),
    ]
}

pub fn n2_packages() -> Vec<Package> {
    vec![
        Package::new("pA", 1.0, "A"),
        Package::new("pB", 1.0, "B"),
        Package::new("pC", 1.0, "C"),
    ]
}
