//! Fixtures shared by the benchmarks.

use jantzen_core::{build_family, intertwiner, parse_casimir, FamilyModule, Intertwiner, RationalPoint};

pub const CONTRACTION: &str = "-(1+z)/z";
pub const DISCRETE: &str = "(1-z)/z";

pub fn fixture(casimir: &str, bound: i64) -> (FamilyModule, Intertwiner) {
    let family = build_family(&parse_casimir(casimir).expect("fixture parses"), bound).expect("fixture is valid");
    let phi = intertwiner(&family).expect("fixture is self-dual");
    (family, phi)
}

/// `-1/(2m+1)^2`, where the contraction family first becomes reducible at weight `2m + 2`.
pub fn su2_point(m: i64) -> RationalPoint {
    RationalPoint::from_ratio(-1, (2 * m + 1) * (2 * m + 1))
}
