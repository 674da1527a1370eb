//! Instances shipped with the crate.

use crate::cli::instance::{parse_instance, InstanceFile};

pub const TWO_TRIANGLES: &str = include_str!("../fixtures/two_triangles.bg");
pub const OPEN_TRIANGLE: &str = include_str!("../fixtures/open_triangle.bg");
pub const X_TRIANGLE: &str = include_str!("../fixtures/x_triangle.bg");
pub const SHORT_ST: &str = include_str!("../fixtures/short_st.bg");

fn load(text: &str) -> InstanceFile {
    parse_instance(text).expect("shipped fixture parses")
}

/// Two all-positive triangles, one spanning X and one spanning Y.
/// Packing and minimum separator are both 2.
pub fn two_triangles() -> InstanceFile {
    load(TWO_TRIANGLES)
}

/// [`two_triangles`] without the edge `x2x3`: packing 2, yet `{x1}` separates.
pub fn open_triangle() -> InstanceFile {
    load(OPEN_TRIANGLE)
}

/// All-positive triangle with X = every vertex: one disjoint X-path,
/// hitting set of size 2.
pub fn x_triangle() -> InstanceFile {
    load(X_TRIANGLE)
}

/// Four vertices with designated terminals; one valid s–t path.
pub fn short_st() -> InstanceFile {
    load(SHORT_ST)
}
