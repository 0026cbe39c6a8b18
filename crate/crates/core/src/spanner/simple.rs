use std::collections::{HashMap, HashSet};

use crate::exec::Execution;
use crate::geodesic::{GeodesicOracle, PointContext, PolygonalDomain};
use crate::geometry::{balanced_cut, SimplePolygon, SplitSegment, WeightedPoint};
use crate::sspd::{build_sspd, SspdInput};
use crate::{Error, Result};

use super::{include_edges_using_sspd, EdgeSet, SpannerGraph, SpannerParams};

pub(crate) type Contexts = HashMap<usize, PointContext>;

pub(crate) fn contexts(oracle: &GeodesicOracle, pts: &[WeightedPoint], exec: Execution) -> Result<Contexts> {
    let ctx = exec.map(pts, |p| oracle.context(p.pos).map(|c| (p.id, c)));
    ctx.into_iter().collect()
}

/// Projects `pts` onto `seg`, decomposes the projections and adds the
/// selected edges.
#[allow(clippy::too_many_arguments)]
pub(crate) fn project_and_include(
    oracle: &GeodesicOracle,
    ctx: &Contexts,
    seg: SplitSegment,
    pts: &[WeightedPoint],
    s: f64,
    k: usize,
    exec: Execution,
    edges: &mut EdgeSet,
) -> Result<()> {
    let view = oracle.segment_view(seg);
    let projected = exec.map(pts, |p| view.project(&ctx[&p.id], p));
    let input = SspdInput { segment: seg, points: projected.into_iter().collect::<Result<_>>()?, s };
    let dec = build_sspd(&input);
    include_edges_using_sspd(&input, &dec, k, edges)
}

/// Recursive body of the simple-polygon construction. `ctx` must hold a
/// context for every point, taken from `oracle`.
pub(crate) fn simple_edges(
    oracle: &GeodesicOracle,
    ctx: &Contexts,
    poly: &SimplePolygon,
    pts: &[WeightedPoint],
    params: SpannerParams,
    exec: Execution,
) -> Result<EdgeSet> {
    let mut edges = EdgeSet::new();
    if pts.len() <= 1 {
        return Ok(edges);
    }
    let cut = balanced_cut(poly, pts)?;
    project_and_include(oracle, ctx, cut.chord, pts, 4.0 / params.epsilon, params.k, exec, &mut edges)?;

    let left: HashSet<usize> = cut.left_points.iter().copied().collect();
    let (lp, rp): (Vec<WeightedPoint>, Vec<WeightedPoint>) = pts.iter().partition(|p| left.contains(&p.id));
    let (l, r) = exec.join(
        || simple_edges(oracle, ctx, &cut.left_polygon, &lp, params, exec),
        || simple_edges(oracle, ctx, &cut.right_polygon, &rp, params, exec),
    );
    edges.extend(l?);
    edges.extend(r?);
    Ok(edges)
}

pub(crate) fn check_points(oracle: &GeodesicOracle, pts: &[WeightedPoint]) -> Result<()> {
    for (i, p) in pts.iter().enumerate() {
        if p.id != i {
            return Err(Error::UnknownId(p.id));
        }
        if !(p.weight >= 0.0 && p.weight.is_finite()) {
            return Err(Error::InvalidParameter(format!("point {i} has weight {}", p.weight)));
        }
        if !oracle.contains(p.pos) {
            return Err(Error::PointOutsideFreeSpace { x: p.pos.x, y: p.pos.y });
        }
    }
    Ok(())
}

/// `(k, sqrt(10) + epsilon, w)`-vertex fault-tolerant spanner for points in
/// a simple polygon. Point ids must be `0..n` in order.
pub fn build_vftswp_simple_polygon(
    poly: &SimplePolygon,
    pts: &[WeightedPoint],
    params: SpannerParams,
) -> Result<SpannerGraph> {
    build_vftswp_simple_polygon_with(poly, pts, params, Execution::default())
}

pub fn build_vftswp_simple_polygon_with(
    poly: &SimplePolygon,
    pts: &[WeightedPoint],
    params: SpannerParams,
    exec: Execution,
) -> Result<SpannerGraph> {
    let params = SpannerParams::new(params.k, params.epsilon)?;
    let oracle = GeodesicOracle::new(PolygonalDomain::simple(poly.clone()));
    check_points(&oracle, pts)?;
    let ctx = contexts(&oracle, pts, exec)?;
    let edges = simple_edges(&oracle, &ctx, poly, pts, params, exec)?;
    SpannerGraph::measure(&oracle, pts, &edges, exec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Point2;

    fn square() -> SimplePolygon {
        SimplePolygon::new(vec![Point2::new(0., 0.), Point2::new(10., 0.), Point2::new(10., 10.), Point2::new(0., 10.)])
            .unwrap()
    }

    #[test]
    fn tiny_inputs() {
        let p = SpannerParams::new(1, 1.0).unwrap();
        assert_eq!(build_vftswp_simple_polygon(&square(), &[], p).unwrap().edge_count(), 0);
        let one = [WeightedPoint::new(0, Point2::new(1., 1.), 0.0)];
        assert_eq!(build_vftswp_simple_polygon(&square(), &one, p).unwrap().edge_count(), 0);
        let two = [one[0], WeightedPoint::new(1, Point2::new(4., 5.), 1.0)];
        let g = build_vftswp_simple_polygon(&square(), &two, p).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.edges()[0].length, 5.0);
    }

    #[test]
    fn modes_agree_and_points_are_validated() {
        let pts: Vec<_> = (0..12)
            .map(|i| WeightedPoint::new(i, Point2::new(0.5 + (i * 7 % 12) as f64 * 0.75, 0.5 + i as f64 * 0.8), 0.1))
            .collect();
        let p = SpannerParams::new(2, 0.5).unwrap();
        let a = build_vftswp_simple_polygon_with(&square(), &pts, p, Execution::Parallel).unwrap();
        let b = build_vftswp_simple_polygon_with(&square(), &pts, p, Execution::Sequential).unwrap();
        assert_eq!(a, b);
        let mut bad = pts.clone();
        bad[3].pos = Point2::new(11., 5.);
        assert!(matches!(build_vftswp_simple_polygon(&square(), &bad, p), Err(Error::PointOutsideFreeSpace { .. })));
    }
}
