//! Orientation and intersection predicates.
//!
//! [`orientation`] is exact for any finite f64 input (adaptive-precision
//! determinant). The `_tol` variants treat features closer than
//! [`DIST_EPS`](super::DIST_EPS) as touching; they are used on constructed
//! points (chord endpoints, ray hits) that only approximately lie on the
//! boundary they were computed from.

use super::{Point2, DIST_EPS};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    Clockwise,
    Collinear,
    CounterClockwise,
}

impl Orientation {
    pub fn sign(self) -> i8 {
        match self {
            Orientation::Clockwise => -1,
            Orientation::Collinear => 0,
            Orientation::CounterClockwise => 1,
        }
    }
}

fn coord(p: Point2) -> robust::Coord<f64> {
    robust::Coord { x: p.x, y: p.y }
}

/// Sign of twice the signed area of triangle `abc`.
pub fn orientation(a: Point2, b: Point2, c: Point2) -> Orientation {
    let det = robust::orient2d(coord(a), coord(b), coord(c));
    if det > 0.0 {
        Orientation::CounterClockwise
    } else if det < 0.0 {
        Orientation::Clockwise
    } else {
        Orientation::Collinear
    }
}

/// Signed distance of `c` from the line through `a` and `b`, positive on
/// the left.
pub fn signed_dist(a: Point2, b: Point2, c: Point2) -> f64 {
    let d = b - a;
    let len = d.norm();
    if len == 0.0 {
        return c.dist(a);
    }
    d.cross(c - a) / len
}

/// Orientation with a distance tolerance.
pub fn side_tol(a: Point2, b: Point2, c: Point2) -> i8 {
    let s = signed_dist(a, b, c);
    if s > DIST_EPS {
        1
    } else if s < -DIST_EPS {
        -1
    } else {
        0
    }
}

pub fn dist_point_segment(p: Point2, a: Point2, b: Point2) -> f64 {
    let d = b - a;
    let len2 = d.dot(d);
    if len2 == 0.0 {
        return p.dist(a);
    }
    let t = ((p - a).dot(d) / len2).clamp(0.0, 1.0);
    p.dist(a.lerp(b, t))
}

pub fn on_segment_tol(p: Point2, a: Point2, b: Point2) -> bool {
    dist_point_segment(p, a, b) <= DIST_EPS
}

/// Interiors of `ab` and `cd` cross at a single point, with every endpoint
/// clearly off the other segment's supporting line.
pub fn cross_properly_tol(a: Point2, b: Point2, c: Point2, d: Point2) -> bool {
    let s1 = side_tol(a, b, c);
    let s2 = side_tol(a, b, d);
    if s1 == 0 || s2 == 0 || s1 == s2 {
        return false;
    }
    let s3 = side_tol(c, d, a);
    let s4 = side_tol(c, d, b);
    s3 != 0 && s4 != 0 && s3 != s4
}

fn on_closed_segment_exact(p: Point2, a: Point2, b: Point2) -> bool {
    orientation(a, b, p) == Orientation::Collinear
        && p.x >= a.x.min(b.x)
        && p.x <= a.x.max(b.x)
        && p.y >= a.y.min(b.y)
        && p.y <= a.y.max(b.y)
}

/// Closed segments `ab` and `cd` share at least one point (exact).
pub fn segments_intersect(a: Point2, b: Point2, c: Point2, d: Point2) -> bool {
    let o1 = orientation(a, b, c).sign();
    let o2 = orientation(a, b, d).sign();
    let o3 = orientation(c, d, a).sign();
    let o4 = orientation(c, d, b).sign();
    if o1 * o2 < 0 && o3 * o4 < 0 {
        return true;
    }
    on_closed_segment_exact(c, a, b)
        || on_closed_segment_exact(d, a, b)
        || on_closed_segment_exact(a, c, d)
        || on_closed_segment_exact(b, c, d)
}

/// Intersection of the ray `origin + s * dir` (s > 0) with segment `ab`.
/// Returns `(s, u)` with `u` the parameter along `ab`. Parallel segments are
/// reported through their endpoint nearest to the origin when collinear.
pub fn ray_segment(origin: Point2, dir: Point2, a: Point2, b: Point2) -> Option<(f64, f64)> {
    let e = b - a;
    let denom = dir.cross(e);
    let w = a - origin;
    if denom.abs() <= 1e-15 * dir.norm() * e.norm() {
        // Parallel: only a collinear overlap can be hit.
        if signed_dist(origin, origin + dir, a).abs() > DIST_EPS {
            return None;
        }
        let dn = dir.norm();
        let sa = (a - origin).dot(dir) / (dn * dn);
        let sb = (b - origin).dot(dir) / (dn * dn);
        let (s, u) = if sa <= sb { (sa, 0.0) } else { (sb, 1.0) };
        return if s > 0.0 { Some((s, u)) } else { None };
    }
    let s = w.cross(e) / denom;
    let u = w.cross(dir) / denom;
    let tol = DIST_EPS / e.norm().max(DIST_EPS);
    if s > 0.0 && u >= -tol && u <= 1.0 + tol {
        Some((s, u.clamp(0.0, 1.0)))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: f64, y: f64) -> Point2 {
        Point2::new(x, y)
    }

    #[test]
    fn orientation_examples() {
        assert_eq!(orientation(p(0., 0.), p(1., 0.), p(0., 1.)).sign(), 1);
        assert_eq!(orientation(p(0., 0.), p(1., 1.), p(2., 2.)).sign(), 0);
        assert_eq!(orientation(p(0., 0.), p(0., 1.), p(1., 1.)).sign(), -1);
    }

    #[test]
    fn orientation_is_exact_near_degeneracy() {
        // Dyadic coordinates: the three points are exactly collinear.
        let a = p(999_999.5, -123_456.25);
        let d = p(0.000_976_562_5, 0.001_953_125);
        let b = a + d;
        let c = a + d * 3.0;
        assert_eq!(orientation(a, b, c), Orientation::Collinear);
        // One ulp off the line must be detected on the correct side.
        let above = p(c.x, f64::from_bits(c.y.to_bits() - 1));
        let below = p(c.x, f64::from_bits(c.y.to_bits() + 1));
        // y is negative, so decreasing the bit pattern moves it up.
        assert_eq!(orientation(a, b, above), Orientation::CounterClockwise);
        assert_eq!(orientation(a, b, below), Orientation::Clockwise);
    }

    #[test]
    fn crossing_and_touching() {
        assert!(segments_intersect(p(0., 0.), p(2., 2.), p(0., 2.), p(2., 0.)));
        assert!(segments_intersect(p(0., 0.), p(2., 0.), p(1., 0.), p(1., 5.)));
        assert!(!segments_intersect(p(0., 0.), p(1., 0.), p(2., 0.), p(3., 0.)));
        assert!(cross_properly_tol(p(0., 0.), p(2., 2.), p(0., 2.), p(2., 0.)));
        assert!(!cross_properly_tol(p(0., 0.), p(2., 0.), p(1., 0.), p(1., 5.)));
    }

    #[test]
    fn ray_hits() {
        let (s, u) = ray_segment(p(0., 0.), p(1., 0.), p(3., -1.), p(3., 1.)).unwrap();
        assert!((s - 3.0).abs() < 1e-12 && (u - 0.5).abs() < 1e-12);
        assert!(ray_segment(p(0., 0.), p(-1., 0.), p(3., -1.), p(3., 1.)).is_none());
    }
}
