use std::collections::BTreeSet;

use crate::exec::Execution;
use crate::geodesic::{GeodesicOracle, PolygonalDomain};
use crate::geometry::WeightedPoint;
use crate::separator::planar_separator;
use crate::Result;

use super::decompose::{decompose_domain, DomainDecomposition};
use super::simple::{check_points, contexts, project_and_include, simple_edges, Contexts};
use super::{build_vftswp_simple_polygon_with, EdgeSet, SpannerGraph, SpannerParams};

struct Env<'a> {
    oracle: &'a GeodesicOracle,
    ctx: &'a Contexts,
    dec: &'a DomainDecomposition,
    owner: &'a [usize],
    face_oracles: &'a [GeodesicOracle],
    params: SpannerParams,
    exec: Execution,
}

impl Env<'_> {
    /// The simple-polygon construction inside one face, with geodesics
    /// measured inside that face.
    fn face_edges(&self, face: usize, pts: &[WeightedPoint]) -> Result<EdgeSet> {
        if pts.len() <= 1 {
            return Ok(EdgeSet::new());
        }
        let local = &self.face_oracles[face];
        let ctx = contexts(local, pts, self.exec)?;
        simple_edges(local, &ctx, &self.dec.faces[face].polygon, pts, self.params, self.exec)
    }

    fn region_edges(&self, region: &[usize], pts: &[WeightedPoint]) -> Result<EdgeSet> {
        if pts.len() <= 1 {
            return Ok(EdgeSet::new());
        }
        if region.len() == 1 {
            return self.face_edges(region[0], pts);
        }
        let nf = self.dec.faces.len();
        let mut slot = vec![usize::MAX; nf];
        for (i, &f) in region.iter().enumerate() {
            slot[f] = i;
        }
        let mut weights = vec![0u64; region.len()];
        for p in pts {
            weights[slot[self.owner[p.id]]] += 1;
        }
        let sep = planar_separator(&self.dec.dual.induced(region, weights));
        let r: Vec<usize> = sep.r.iter().map(|&i| region[i]).collect();

        // Segments between a separator face and another face of the region.
        let mut h = BTreeSet::new();
        for &f in &r {
            for s in self.dec.faces[f].segments() {
                if slot[self.dec.other_face(s, f)] != usize::MAX {
                    h.insert(s);
                }
            }
        }
        let h: Vec<usize> = h.into_iter().collect();
        let s = 8.0 / self.params.epsilon;
        let per_segment = self.exec.map(&h, |&id| {
            let mut e = EdgeSet::new();
            project_and_include(self.oracle, self.ctx, self.dec.segments[id], pts, s, self.params.k, self.exec, &mut e)
                .map(|_| e)
        });
        let in_face =
            |f: usize| -> Vec<WeightedPoint> { pts.iter().filter(|p| self.owner[p.id] == f).copied().collect() };
        let per_face = self.exec.map(&r, |&f| self.face_edges(f, &in_face(f)));

        let side = |part: &[usize]| -> (Vec<usize>, Vec<WeightedPoint>) {
            let faces: Vec<usize> = part.iter().map(|&i| region[i]).collect();
            let pts = pts.iter().filter(|p| part.contains(&slot[self.owner[p.id]])).copied().collect();
            (faces, pts)
        };
        let (pf, pp) = side(&sep.p);
        let (qf, qp) = side(&sep.q);
        let (a, b) = self.exec.join(|| self.region_edges(&pf, &pp), || self.region_edges(&qf, &qp));

        let mut edges = EdgeSet::new();
        for e in per_segment.into_iter().chain(per_face) {
            edges.extend(e?);
        }
        edges.extend(a?);
        edges.extend(b?);
        Ok(edges)
    }
}

/// `(k, 6 + epsilon, w)`-vertex fault-tolerant spanner for points in a
/// polygonal domain. Without holes this is exactly the simple-polygon
/// construction on the outer boundary.
pub fn build_vftswp_polygonal_domain(
    domain: &PolygonalDomain,
    pts: &[WeightedPoint],
    params: SpannerParams,
) -> Result<SpannerGraph> {
    build_vftswp_polygonal_domain_with(domain, pts, params, Execution::default())
}

pub fn build_vftswp_polygonal_domain_with(
    domain: &PolygonalDomain,
    pts: &[WeightedPoint],
    params: SpannerParams,
    exec: Execution,
) -> Result<SpannerGraph> {
    let params = SpannerParams::new(params.k, params.epsilon)?;
    if domain.hole_count() == 0 {
        return build_vftswp_simple_polygon_with(domain.outer(), pts, params, exec);
    }
    let oracle = GeodesicOracle::new(domain.clone());
    check_points(&oracle, pts)?;
    let ctx = contexts(&oracle, pts, exec)?;
    let mut dec = decompose_domain(domain)?;
    let owner = dec.assign_points(pts)?;
    let face_oracles = exec.map(&dec.faces, |f| GeodesicOracle::new(PolygonalDomain::simple(f.polygon.clone())));
    let env = Env { oracle: &oracle, ctx: &ctx, dec: &dec, owner: &owner, face_oracles: &face_oracles, params, exec };
    let region: Vec<usize> = (0..dec.faces.len()).collect();
    let edges = env.region_edges(&region, pts)?;
    SpannerGraph::measure(&oracle, pts, &edges, exec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{Point2, SimplePolygon};
    use crate::spanner::build_vftswp_simple_polygon;

    fn rect(x0: f64, y0: f64, x1: f64, y1: f64) -> SimplePolygon {
        SimplePolygon::new(vec![Point2::new(x0, y0), Point2::new(x1, y0), Point2::new(x1, y1), Point2::new(x0, y1)])
            .unwrap()
    }

    fn scatter(n: usize) -> Vec<WeightedPoint> {
        (0..n)
            .map(|i| {
                let x = 0.5 + ((i * 37) % 97) as f64 / 97.0 * 9.0;
                let y = 0.5 + ((i * 61) % 89) as f64 / 89.0 * 9.0;
                WeightedPoint::new(i, Point2::new(x, y), (i % 3) as f64 * 0.2)
            })
            .filter(|p| !(p.pos.x > 3.9 && p.pos.x < 6.1 && p.pos.y > 3.9 && p.pos.y < 6.1))
            .enumerate()
            .map(|(i, p)| WeightedPoint::new(i, p.pos, p.weight))
            .collect()
    }

    #[test]
    fn no_holes_delegates() {
        let outer = rect(0., 0., 10., 10.);
        let pts = scatter(20);
        let p = SpannerParams::new(1, 1.0).unwrap();
        let a = build_vftswp_polygonal_domain(&PolygonalDomain::simple(outer.clone()), &pts, p).unwrap();
        let b = build_vftswp_simple_polygon(&outer, &pts, p).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn one_hole_is_deterministic_across_modes() {
        let dom = PolygonalDomain::new(rect(0., 0., 10., 10.), vec![rect(4., 4., 6., 6.)]).unwrap();
        let pts = scatter(30);
        let p = SpannerParams::new(1, 1.0).unwrap();
        let a = build_vftswp_polygonal_domain_with(&dom, &pts, p, Execution::Parallel).unwrap();
        let b = build_vftswp_polygonal_domain_with(&dom, &pts, p, Execution::Sequential).unwrap();
        assert_eq!(a, b);
        assert!(a.edge_count() >= pts.len() - 1);
        assert_eq!(build_vftswp_polygonal_domain(&dom, &pts[..1], p).unwrap().edge_count(), 0);
    }
}
