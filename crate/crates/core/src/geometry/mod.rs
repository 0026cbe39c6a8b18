//! Planar primitives, polygon triangulation and balanced polygon cutting.

mod cut;
mod point;
mod polygon;
pub mod predicates;
mod triangulate;

pub use cut::{assign_sides, balanced_cut, PolygonCut};
pub use point::{Point2, SplitSegment, WeightedPoint};
pub use polygon::{signed_area, SimplePolygon};
pub use predicates::{orientation, Orientation};
pub use triangulate::{triangulate, triangulate_points, Triangle};

/// Absolute distance below which two geometric features are treated as
/// touching. Instance coordinates are kept within [`COORD_BUDGET`], so this
/// sits several orders of magnitude above accumulated f64 rounding.
pub const DIST_EPS: f64 = 1e-9;

/// Largest coordinate magnitude accepted without rescaling.
pub const COORD_BUDGET: f64 = 1e6;
