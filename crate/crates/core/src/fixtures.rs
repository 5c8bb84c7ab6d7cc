//! Bundled scenario documents.

/// Four rooftops where the direct S-C route does not exist; NDF is optimal.
pub const N1: &str = include_str!("../fixtures/n1.json");
/// Complete graph on collinear points S=0, A=+1, B=-2, C=+4; NDF is 14 m,
/// the best order is 12 m.
pub const N2: &str = include_str!("../fixtures/n2.json");
/// Three packages over Sydney-style rooftop heights.
pub const DEMO3: &str = include_str!("../fixtures/demo3.json");

pub const ALL: [(&str, &str); 3] = [("n1", N1), ("n2", N2), ("demo3", DEMO3)];
