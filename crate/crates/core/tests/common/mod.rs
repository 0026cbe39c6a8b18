//! Test-side reference geometry: a plain visibility graph over every domain
//! vertex, with no reflex filtering, tolerance snapping or caching.

#![allow(dead_code)]

use geospanner_core::generate::{generate_instance, GenParams, WeightDist};
use geospanner_core::{Instance, Point2, PolygonalDomain};

pub fn instance(n: usize, holes: usize, polygon_vertices: usize, weights: WeightDist, seed: u64) -> Instance {
    generate_instance(&GenParams { n, holes, polygon_vertices, weights, seed }).unwrap().to_instance().unwrap()
}

fn cross(o: Point2, a: Point2, b: Point2) -> f64 {
    (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)
}

fn seg_dist(p: Point2, a: Point2, b: Point2) -> f64 {
    let (dx, dy) = (b.x - a.x, b.y - a.y);
    let len2 = dx * dx + dy * dy;
    let t = if len2 == 0.0 { 0.0 } else { (((p.x - a.x) * dx + (p.y - a.y) * dy) / len2).clamp(0.0, 1.0) };
    ((a.x + t * dx - p.x).powi(2) + (a.y + t * dy - p.y).powi(2)).sqrt()
}

pub struct NaiveDomain {
    rings: Vec<Vec<Point2>>,
}

impl NaiveDomain {
    pub fn new(domain: &PolygonalDomain) -> Self {
        let mut rings = vec![domain.outer().vertices().to_vec()];
        rings.extend(domain.holes().iter().map(|h| h.vertices().to_vec()));
        NaiveDomain { rings }
    }

    fn edges(&self) -> impl Iterator<Item = (Point2, Point2)> + '_ {
        self.rings.iter().flat_map(|r| (0..r.len()).map(move |i| (r[i], r[(i + 1) % r.len()])))
    }

    fn on_boundary(&self, p: Point2) -> bool {
        self.edges().any(|(a, b)| seg_dist(p, a, b) <= 1e-9)
    }

    fn winding_inside(ring: &[Point2], p: Point2) -> bool {
        let mut inside = false;
        let mut j = ring.len() - 1;
        for i in 0..ring.len() {
            let (a, b) = (ring[i], ring[j]);
            if (a.y > p.y) != (b.y > p.y) && p.x < (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x {
                inside = !inside;
            }
            j = i;
        }
        inside
    }

    pub fn free(&self, p: Point2) -> bool {
        if self.on_boundary(p) {
            return true;
        }
        Self::winding_inside(&self.rings[0], p) && self.rings[1..].iter().all(|h| !Self::winding_inside(h, p))
    }

    pub fn visible(&self, a: Point2, b: Point2) -> bool {
        let len = a.dist(b);
        if len == 0.0 {
            return self.free(a);
        }
        for (c, d) in self.edges() {
            let (d1, d2) = (cross(a, b, c), cross(a, b, d));
            let (d3, d4) = (cross(c, d, a), cross(c, d, b));
            let scale = len * c.dist(d);
            let tol = 1e-12 * scale.max(1.0);
            if d1 * d2 < 0.0 && d3 * d4 < 0.0 && d1.abs() > tol && d2.abs() > tol && d3.abs() > tol && d4.abs() > tol {
                return false;
            }
        }
        let mut ts = vec![0.0, 1.0];
        for r in &self.rings {
            for &v in r {
                if seg_dist(v, a, b) <= 1e-9 {
                    ts.push(((v.x - a.x) * (b.x - a.x) + (v.y - a.y) * (b.y - a.y)) / (len * len));
                }
            }
        }
        ts.sort_by(f64::total_cmp);
        ts.windows(2).all(|w| w[1] - w[0] < 1e-12 || self.free(a.lerp(b, 0.5 * (w[0] + w[1]))))
    }

    /// Dijkstra over the endpoints and all boundary vertices.
    pub fn distance(&self, p: Point2, q: Point2) -> f64 {
        let mut nodes = vec![p, q];
        for r in &self.rings {
            nodes.extend(r.iter().copied());
        }
        let m = nodes.len();
        let mut dist = vec![f64::INFINITY; m];
        let mut done = vec![false; m];
        dist[0] = 0.0;
        for _ in 0..m {
            let Some(u) =
                (0..m).filter(|&u| !done[u] && dist[u].is_finite()).min_by(|&a, &b| dist[a].total_cmp(&dist[b]))
            else {
                break;
            };
            if u == 1 {
                break;
            }
            done[u] = true;
            for v in 0..m {
                if !done[v] {
                    let nd = dist[u] + nodes[u].dist(nodes[v]);
                    if nd < dist[v] && self.visible(nodes[u], nodes[v]) {
                        dist[v] = nd;
                    }
                }
            }
        }
        dist[1]
    }
}
