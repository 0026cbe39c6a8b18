//! Vertex fault-tolerant geodesic spanners for non-negatively weighted points.
//!
//! Two constructions are provided:
//!
//! * [`spanner::build_vftswp_simple_polygon`] for points inside a simple
//!   polygon, with stretch `sqrt(10) + eps` under any `k` vertex faults;
//! * [`spanner::build_vftswp_polygonal_domain`] for points in the free space
//!   of a polygon with holes, with stretch `6 + eps`.
//!
//! Distances are weighted geodesic distances
//! `d_w(p, q) = w(p) + d_pi(p, q) + w(q)`, and the [`verify`] module
//! certifies the fault-tolerant stretch of a built graph by enumerating
//! fault sets.

pub mod error;
pub mod exec;
pub mod generate;
pub mod geodesic;
pub mod geometry;
pub mod instance;
pub mod render;
pub mod separator;
pub mod spanner;
pub mod sspd;
pub mod verify;

pub use error::{Error, Result};
pub use exec::Execution;
pub use geodesic::{GeodesicOracle, PolygonalDomain};
pub use geometry::{Point2, SimplePolygon, SplitSegment, WeightedPoint};
pub use instance::Instance;
pub use spanner::{SpannerGraph, SpannerParams};
