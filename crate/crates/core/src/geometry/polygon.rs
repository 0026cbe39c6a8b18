use serde::{Deserialize, Serialize};

use super::predicates::{dist_point_segment, orientation, segments_intersect, Orientation};
use super::{Point2, DIST_EPS};
use crate::{Error, Result};

/// Twice-signed shoelace area halved; positive for counterclockwise rings.
pub fn signed_area(pts: &[Point2]) -> f64 {
    let n = pts.len();
    let mut acc = 0.0;
    for i in 0..n {
        let a = pts[i];
        let b = pts[(i + 1) % n];
        acc += a.x * b.y - b.x * a.y;
    }
    acc / 2.0
}

/// A simple polygon with counterclockwise vertex order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimplePolygon {
    vertices: Vec<Point2>,
}

impl SimplePolygon {
    /// Validates the ring and reorients it counterclockwise if needed.
    pub fn new(mut vertices: Vec<Point2>) -> Result<Self> {
        check_simple(&vertices).map_err(Error::NonSimplePolygon)?;
        if signed_area(&vertices) < 0.0 {
            vertices.reverse();
        }
        Ok(SimplePolygon { vertices })
    }

    /// Wraps a ring already known to be simple and counterclockwise, such as
    /// the pieces produced by cutting a valid polygon.
    pub(crate) fn from_ccw_unchecked(vertices: Vec<Point2>) -> Self {
        debug_assert!(vertices.len() >= 3);
        SimplePolygon { vertices }
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex(&self, i: usize) -> Point2 {
        self.vertices[i % self.vertices.len()]
    }

    pub fn edges(&self) -> impl Iterator<Item = (Point2, Point2)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    pub fn area(&self) -> f64 {
        signed_area(&self.vertices)
    }

    /// Re-runs the exact simplicity check.
    pub fn is_simple(&self) -> bool {
        check_simple(&self.vertices).is_ok()
    }

    pub fn on_boundary(&self, p: Point2) -> bool {
        self.edges().any(|(a, b)| dist_point_segment(p, a, b) <= DIST_EPS)
    }

    /// Inside or on the boundary (boundary within [`DIST_EPS`]).
    pub fn contains_closed(&self, p: Point2) -> bool {
        self.on_boundary(p) || self.winds_around(p)
    }

    /// Strictly inside and clear of the boundary.
    pub fn contains_strict(&self, p: Point2) -> bool {
        !self.on_boundary(p) && self.winds_around(p)
    }

    /// Crossing-number test; meaningless for points on the boundary.
    fn winds_around(&self, p: Point2) -> bool {
        let n = self.vertices.len();
        let mut inside = false;
        let mut j = n - 1;
        for i in 0..n {
            let a = self.vertices[i];
            let b = self.vertices[j];
            if (a.y > p.y) != (b.y > p.y) {
                let o = orientation(b, a, p);
                // Upward edge (b below a): p is left of b->a when inside.
                let left = if a.y > b.y { o == Orientation::CounterClockwise } else { o == Orientation::Clockwise };
                if left {
                    inside = !inside;
                }
            }
            j = i;
        }
        inside
    }

    pub fn bbox(&self) -> (Point2, Point2) {
        let mut lo = Point2::new(f64::INFINITY, f64::INFINITY);
        let mut hi = Point2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for v in &self.vertices {
            lo.x = lo.x.min(v.x);
            lo.y = lo.y.min(v.y);
            hi.x = hi.x.max(v.x);
            hi.y = hi.y.max(v.y);
        }
        (lo, hi)
    }
}

/// Exact simplicity check: at least three finite vertices, no repeats, no
/// touching non-adjacent edges, no folded adjacent edges, non-zero area.
fn check_simple(v: &[Point2]) -> std::result::Result<(), String> {
    let n = v.len();
    if n < 3 {
        return Err(format!("{n} vertices, need at least 3"));
    }
    if let Some(i) = v.iter().position(|p| !p.is_finite()) {
        return Err(format!("vertex {i} is not finite"));
    }
    let mut sorted: Vec<(Point2, usize)> = v.iter().copied().zip(0..).collect();
    sorted.sort_by(|a, b| a.0.lex_cmp(&b.0));
    for w in sorted.windows(2) {
        if w[0].0 == w[1].0 {
            return Err(format!("vertices {} and {} coincide", w[0].1, w[1].1));
        }
    }
    for i in 0..n {
        let a = v[i];
        let b = v[(i + 1) % n];
        // Adjacent edge folding back onto this one.
        let c = v[(i + 2) % n];
        if orientation(a, b, c) == Orientation::Collinear && (c - b).dot(a - b) > 0.0 {
            return Err(format!("edges at vertex {} overlap", (i + 1) % n));
        }
        for j in (i + 2)..n {
            if i == 0 && j == n - 1 {
                continue;
            }
            let c = v[j];
            let d = v[(j + 1) % n];
            if segments_intersect(a, b, c, d) {
                return Err(format!("edges {i} and {j} intersect"));
            }
        }
    }
    if signed_area(v) == 0.0 {
        return Err("zero area".into());
    }
    Ok(())
}
