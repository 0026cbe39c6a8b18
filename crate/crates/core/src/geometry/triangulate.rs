use super::predicates::{orientation, side_tol, Orientation};
use super::{Point2, SimplePolygon};
use crate::{Error, Result};

/// Vertex indices of a counterclockwise triangle.
pub type Triangle = [usize; 3];

/// Ear-clipping triangulation of a simple polygon into `n - 2` triangles.
pub fn triangulate(poly: &SimplePolygon) -> Result<Vec<Triangle>> {
    triangulate_points(poly.vertices())
}

/// Ear clipping over a counterclockwise ring. Vertices lying on the
/// supporting segment of another edge (180 degree corners) are supported;
/// they never become ear tips.
pub fn triangulate_points(pts: &[Point2]) -> Result<Vec<Triangle>> {
    let n = pts.len();
    if n < 3 {
        return Err(Error::NonSimplePolygon(format!("{n} vertices")));
    }
    let mut ring: Vec<usize> = (0..n).collect();
    let mut out = Vec::with_capacity(n - 2);
    let mut start = 0;
    while ring.len() > 3 {
        let m = ring.len();
        let found = (0..m)
            .map(|k| (start + k) % m)
            .find(|&i| is_ear(pts, &ring, i, Strictness::Tolerant))
            .or_else(|| (0..m).find(|&i| is_ear(pts, &ring, i, Strictness::Exact)))
            .or_else(|| {
                // Last resort on badly conditioned input: clip the flattest
                // non-reflex corner so the loop always terminates.
                (0..m).find(|&i| {
                    let (a, b, c) = corner(pts, &ring, i);
                    orientation(a, b, c) != Orientation::Clockwise
                })
            });
        let Some(i) = found else {
            return Err(Error::NonSimplePolygon("no ear found".into()));
        };
        let prev = ring[(i + m - 1) % m];
        let next = ring[(i + 1) % m];
        out.push([prev, ring[i], next]);
        ring.remove(i);
        start = if i == 0 { 0 } else { i - 1 };
    }
    out.push([ring[0], ring[1], ring[2]]);
    Ok(out)
}

#[derive(Clone, Copy)]
enum Strictness {
    Tolerant,
    Exact,
}

fn corner(pts: &[Point2], ring: &[usize], i: usize) -> (Point2, Point2, Point2) {
    let m = ring.len();
    (pts[ring[(i + m - 1) % m]], pts[ring[i]], pts[ring[(i + 1) % m]])
}

fn is_ear(pts: &[Point2], ring: &[usize], i: usize, mode: Strictness) -> bool {
    let m = ring.len();
    let (a, b, c) = corner(pts, ring, i);
    let convex = match mode {
        Strictness::Tolerant => side_tol(a, b, c) > 0 && side_tol(c, a, b) > 0,
        Strictness::Exact => orientation(a, b, c) == Orientation::CounterClockwise,
    };
    if !convex {
        return false;
    }
    let ia = ring[(i + m - 1) % m];
    let ib = ring[i];
    let ic = ring[(i + 1) % m];
    ring.iter().all(|&j| {
        if j == ia || j == ib || j == ic {
            return true;
        }
        let q = pts[j];
        if q == a || q == b || q == c {
            return true;
        }
        match mode {
            Strictness::Tolerant => !(side_tol(a, b, q) >= 0 && side_tol(b, c, q) >= 0 && side_tol(c, a, q) >= 0),
            Strictness::Exact => {
                let s1 = orientation(a, b, q).sign();
                let s2 = orientation(b, c, q).sign();
                let s3 = orientation(c, a, q).sign();
                !(s1 >= 0 && s2 >= 0 && s3 >= 0)
            }
        }
    })
}
