//! Geodesic shortest paths in a polygonal domain, the weighted metric
//! `d_w`, and geodesic projection onto splitting segments.

mod domain;
mod oracle;
mod project;

pub use domain::PolygonalDomain;
pub use oracle::{GeodesicOracle, GeodesicPath, PointContext};
pub use project::{geodesic_project, ProjectedPoint, SegmentView};

use crate::geometry::{Point2, WeightedPoint};
use crate::Result;

/// Shortest path between two points of the free space.
pub fn geodesic_distance(domain: &PolygonalDomain, p: Point2, q: Point2) -> Result<GeodesicPath> {
    GeodesicOracle::new(domain.clone()).path(p, q)
}

/// `d_w(p, q) = w(p) + d_pi(p, q) + w(q)` for distinct points, 0 otherwise.
pub fn weighted_distance(oracle: &GeodesicOracle, p: &WeightedPoint, q: &WeightedPoint) -> Result<f64> {
    if p.id == q.id {
        return Ok(0.0);
    }
    Ok(combine_weights(p.weight, oracle.distance(p.pos, q.pos)?, q.weight))
}

/// The single place where point weights are folded into a geodesic length.
pub fn combine_weights(wp: f64, geodesic: f64, wq: f64) -> f64 {
    wp + geodesic + wq
}
