use crate::geometry::predicates::{cross_properly_tol, dist_point_segment};
use crate::geometry::{orientation, Orientation, Point2, DIST_EPS};
use crate::{Error, Result};

use super::PolygonalDomain;

const NONE: usize = usize::MAX;

/// A shortest path as its sequence of bends, endpoints included.
#[derive(Debug, Clone, PartialEq)]
pub struct GeodesicPath {
    pub anchors: Vec<Point2>,
    pub length: f64,
}

#[derive(Debug, Clone, Copy)]
struct Edge {
    a: Point2,
    b: Point2,
    lo: Point2,
    hi: Point2,
}

/// Answers shortest-path queries in a fixed domain.
///
/// Shortest paths bend only at reflex vertices of the free space, so the
/// oracle precomputes all-pairs distances over the visibility graph of
/// those vertices. A query point is attached through the vertices it sees.
#[derive(Debug, Clone)]
pub struct GeodesicOracle {
    domain: PolygonalDomain,
    pub(super) all_vertices: Vec<Point2>,
    edges: Vec<Edge>,
    reflex: Vec<Point2>,
    dist: Vec<f64>,
    next: Vec<usize>,
}

/// Distances from a fixed source to every reflex vertex.
#[derive(Debug, Clone)]
pub struct PointContext {
    pub pos: Point2,
    visible: Vec<(usize, f64)>,
    to_vertex: Vec<f64>,
    entry: Vec<usize>,
}

impl PointContext {
    /// Geodesic distance from the source to reflex vertex `v`.
    pub fn to_vertex(&self, v: usize) -> f64 {
        self.to_vertex[v]
    }

    /// Reflex vertices visible from the source, with straight distances.
    pub fn visible(&self) -> &[(usize, f64)] {
        &self.visible
    }
}

fn reflex_vertices(domain: &PolygonalDomain) -> Vec<Point2> {
    let mut out = Vec::new();
    let mut push_ring = |ring: &[Point2], want: Orientation| {
        let n = ring.len();
        for i in 0..n {
            let prev = ring[(i + n - 1) % n];
            let next = ring[(i + 1) % n];
            if orientation(prev, ring[i], next) == want {
                out.push(ring[i]);
            }
        }
    };
    push_ring(domain.outer().vertices(), Orientation::Clockwise);
    for h in domain.holes() {
        push_ring(h.vertices(), Orientation::CounterClockwise);
    }
    out
}

impl GeodesicOracle {
    pub fn new(domain: PolygonalDomain) -> Self {
        let edges = domain
            .boundary_edges()
            .into_iter()
            .map(|(a, b)| Edge {
                a,
                b,
                lo: Point2::new(a.x.min(b.x) - DIST_EPS, a.y.min(b.y) - DIST_EPS),
                hi: Point2::new(a.x.max(b.x) + DIST_EPS, a.y.max(b.y) + DIST_EPS),
            })
            .collect();
        let mut oracle = GeodesicOracle {
            all_vertices: domain.vertices(),
            reflex: reflex_vertices(&domain),
            domain,
            edges,
            dist: Vec::new(),
            next: Vec::new(),
        };
        oracle.all_pairs();
        oracle
    }

    fn all_pairs(&mut self) {
        let m = self.reflex.len();
        let mut dist = vec![f64::INFINITY; m * m];
        let mut next = vec![NONE; m * m];
        for i in 0..m {
            dist[i * m + i] = 0.0;
            next[i * m + i] = i;
            for j in i + 1..m {
                if self.visible(self.reflex[i], self.reflex[j]) {
                    let d = self.reflex[i].dist(self.reflex[j]);
                    dist[i * m + j] = d;
                    dist[j * m + i] = d;
                    next[i * m + j] = j;
                    next[j * m + i] = i;
                }
            }
        }
        for k in 0..m {
            for i in 0..m {
                let dik = dist[i * m + k];
                if !dik.is_finite() {
                    continue;
                }
                for j in 0..m {
                    let alt = dik + dist[k * m + j];
                    if alt < dist[i * m + j] {
                        dist[i * m + j] = alt;
                        next[i * m + j] = next[i * m + k];
                    }
                }
            }
        }
        self.dist = dist;
        self.next = next;
    }

    pub fn domain(&self) -> &PolygonalDomain {
        &self.domain
    }

    /// Reflex vertices used as path bends, indexed as in [`PointContext`].
    pub fn reflex_vertices(&self) -> &[Point2] {
        &self.reflex
    }

    pub fn contains(&self, p: Point2) -> bool {
        self.domain.contains(p)
    }

    /// The closed segment `ab` lies in the free space.
    pub fn visible(&self, a: Point2, b: Point2) -> bool {
        let lo = Point2::new(a.x.min(b.x), a.y.min(b.y));
        let hi = Point2::new(a.x.max(b.x), a.y.max(b.y));
        for e in &self.edges {
            if e.hi.x < lo.x || e.lo.x > hi.x || e.hi.y < lo.y || e.lo.y > hi.y {
                continue;
            }
            if cross_properly_tol(a, b, e.a, e.b) {
                return false;
            }
        }
        let len = a.dist(b);
        if len <= DIST_EPS {
            return self.contains(a);
        }
        // Pieces between boundary vertices on the segment are either wholly
        // inside or wholly outside, so one midpoint decides each.
        let d = b - a;
        let mut ts = vec![0.0, 1.0];
        for &v in &self.all_vertices {
            if v.x < lo.x - DIST_EPS || v.x > hi.x + DIST_EPS || v.y < lo.y - DIST_EPS || v.y > hi.y + DIST_EPS {
                continue;
            }
            if dist_point_segment(v, a, b) <= DIST_EPS {
                let t = (v - a).dot(d) / (len * len);
                if t > 0.0 && t < 1.0 {
                    ts.push(t);
                }
            }
        }
        ts.sort_by(f64::total_cmp);
        for w in ts.windows(2) {
            if (w[1] - w[0]) * len > DIST_EPS && !self.contains(a.lerp(b, 0.5 * (w[0] + w[1]))) {
                return false;
            }
        }
        self.contains(a) && self.contains(b)
    }

    pub fn context(&self, p: Point2) -> Result<PointContext> {
        if !self.contains(p) {
            return Err(Error::PointOutsideFreeSpace { x: p.x, y: p.y });
        }
        let m = self.reflex.len();
        let visible: Vec<(usize, f64)> =
            (0..m).filter(|&u| self.visible(p, self.reflex[u])).map(|u| (u, p.dist(self.reflex[u]))).collect();
        let mut to_vertex = vec![f64::INFINITY; m];
        let mut entry = vec![NONE; m];
        for &(u, du) in &visible {
            for v in 0..m {
                let alt = du + self.dist[u * m + v];
                if alt < to_vertex[v] {
                    to_vertex[v] = alt;
                    entry[v] = u;
                }
            }
        }
        Ok(PointContext { pos: p, visible, to_vertex, entry })
    }

    pub fn distance(&self, p: Point2, q: Point2) -> Result<f64> {
        if self.visible(p, q) {
            return Ok(p.dist(q));
        }
        let cp = self.context(p)?;
        let cq = self.context(q)?;
        Ok(self.distance_between(&cp, &cq))
    }

    pub fn path(&self, p: Point2, q: Point2) -> Result<GeodesicPath> {
        let cp = self.context(p)?;
        let cq = self.context(q)?;
        Ok(self.path_between(&cp, &cq))
    }

    pub(super) fn boundary_segments(&self) -> impl Iterator<Item = (Point2, Point2)> + '_ {
        self.edges.iter().map(|e| (e.a, e.b))
    }

    fn best_exit(&self, cp: &PointContext, cq: &PointContext) -> Option<(usize, f64)> {
        let mut best: Option<(usize, f64)> = None;
        for &(v, dv) in &cq.visible {
            let d = cp.to_vertex[v] + dv;
            if d.is_finite() && best.is_none_or(|(_, b)| d < b) {
                best = Some((v, d));
            }
        }
        best
    }

    /// Distance between two prepared sources; infinite if disconnected.
    pub fn distance_between(&self, cp: &PointContext, cq: &PointContext) -> f64 {
        if self.visible(cp.pos, cq.pos) {
            return cp.pos.dist(cq.pos);
        }
        self.best_exit(cp, cq).map_or(f64::INFINITY, |(_, d)| d)
    }

    pub fn path_between(&self, cp: &PointContext, cq: &PointContext) -> GeodesicPath {
        let (p, q) = (cp.pos, cq.pos);
        if self.visible(p, q) {
            return GeodesicPath { anchors: vec![p, q], length: p.dist(q) };
        }
        let Some((v, length)) = self.best_exit(cp, cq) else {
            return GeodesicPath { anchors: vec![p, q], length: f64::INFINITY };
        };
        let m = self.reflex.len();
        let mut anchors = vec![p];
        let mut u = cp.entry[v];
        anchors.push(self.reflex[u]);
        while u != v {
            u = self.next[u * m + v];
            anchors.push(self.reflex[u]);
        }
        anchors.push(q);
        anchors.dedup_by(|x, y| x.dist(*y) <= DIST_EPS);
        GeodesicPath { anchors, length }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::SimplePolygon;

    fn poly(c: &[(f64, f64)]) -> SimplePolygon {
        SimplePolygon::new(c.iter().map(|&(x, y)| Point2::new(x, y)).collect()).unwrap()
    }

    fn l_shape() -> GeodesicOracle {
        let outer = poly(&[(0., 0.), (2., 0.), (2., 1.), (1., 1.), (1., 2.), (0., 2.)]);
        GeodesicOracle::new(PolygonalDomain::simple(outer))
    }

    #[test]
    fn convex_distance_is_euclidean() {
        let o = GeodesicOracle::new(PolygonalDomain::simple(poly(&[(0., 0.), (4., 0.), (4., 3.), (0., 3.)])));
        assert!(o.reflex_vertices().is_empty());
        assert_eq!(o.distance(Point2::new(0., 0.), Point2::new(4., 3.)).unwrap(), 5.0);
    }

    #[test]
    fn l_shape_bends_at_reflex_corner() {
        let o = l_shape();
        let p = o.path(Point2::new(1.75, 0.5), Point2::new(0.5, 1.75)).unwrap();
        let expect = 2.0 * 0.75f64.hypot(0.5);
        assert!((p.length - expect).abs() < 1e-12);
        assert_eq!(p.anchors.len(), 3);
        assert_eq!(p.anchors[1], Point2::new(1., 1.));
    }

    #[test]
    fn boundary_segments_are_visible() {
        let o = l_shape();
        assert!(o.visible(Point2::new(0., 0.), Point2::new(2., 0.)));
        assert!(o.visible(Point2::new(0., 0.), Point2::new(1., 1.)));
        assert!(!o.visible(Point2::new(2., 1.), Point2::new(1., 2.)));
        // Grazes the reflex corner from inside.
        assert!(o.visible(Point2::new(0.5, 1.5), Point2::new(1.5, 0.5)));
    }

    #[test]
    fn hole_forces_detour() {
        let outer = poly(&[(0., 0.), (10., 0.), (10., 10.), (0., 10.)]);
        let hole = poly(&[(4., 2.), (6., 2.), (6., 8.), (4., 8.)]);
        let o = GeodesicOracle::new(PolygonalDomain::new(outer, vec![hole]).unwrap());
        let d = o.distance(Point2::new(2., 5.), Point2::new(8., 5.)).unwrap();
        let expect = 2.0 * 2f64.hypot(3.0) + 2.0;
        assert!((d - expect).abs() < 1e-12, "{d} vs {expect}");
        assert!(matches!(o.context(Point2::new(5., 5.)), Err(Error::PointOutsideFreeSpace { .. })));
    }
}
