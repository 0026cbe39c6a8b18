//! Fault-tolerant spanner construction for simple polygons and polygonal
//! domains.

mod decompose;
mod domain;
mod graph;
mod include;
mod simple;

pub use decompose::{decompose_domain, DomainDecomposition, Face};
pub use domain::{build_vftswp_polygonal_domain, build_vftswp_polygonal_domain_with};
pub use graph::{SpannerEdge, SpannerGraph, SpannerParams};
pub use include::{core_set, include_edges_using_sspd, CoreSet, EdgeSet};
pub use simple::{build_vftswp_simple_polygon, build_vftswp_simple_polygon_with};
