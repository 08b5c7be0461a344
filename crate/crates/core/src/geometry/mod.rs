//! Planar primitives: points and point sets, stacking orders, convex hulls
//! with incremental insertion, and angular-interval arithmetic on circles.

mod arc;
mod hull;
mod point;

pub use arc::{coverage_interval, normalize_angle, ArcIntervalSet, COINCIDENT_TOL, MERGE_TOL};
pub(crate) use arc::push_coverage;
pub use hull::{
    convex_hull, hull_indices, orient, ring_external_angle, turning_angle, HullShape, HullState,
    Location, ORIENT_TOL,
};
pub use point::{Point, PointSet, StackingOrder};

/// Inserts `p` into `hull`, returning the updated hull, where `p` fell, and
/// its external angle in the updated hull.
pub fn hull_insert(hull: &HullState, p: Point) -> (HullState, Location, f64) {
    hull.inserted(p)
}
