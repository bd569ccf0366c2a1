//! Fixed inputs shared by the benchmarks.

use engel_core::algebra::parse_polynomial;
use engel_core::pipeline::GraphData;

pub const CUBIC: (&str, &str) = ("x^2 + y^2", "2*x^3 + 2*x*y^2");
pub const PERTURBED: (&str, &str) = ("x^2 + y^2", "2*x^3 + 2*x*y^2 + x^4");
pub const MIXED: (&str, &str) = ("x^2 + y^2 - 2*x^2*y + x*y", "2*x^3 - x*y^2 + y^2 + x^2 - u1");

pub fn graph((phi1, phi2): (&str, &str)) -> GraphData {
    let p = |t: &str| parse_polynomial(t).expect("fixture parses");
    GraphData::new(p(phi1), p(phi2)).expect("fixture is real")
}
