use serde::{Deserialize, Serialize};

use crate::geometry::predicates::segments_intersect;
use crate::geometry::{Point2, SimplePolygon};
use crate::{Error, Result};

/// An outer simple polygon with pairwise disjoint holes strictly inside it.
/// The free space is the closed outer region minus the open hole interiors.
///
/// Every ring is stored counterclockwise; [`boundary_edges`] orients hole
/// edges clockwise so the free space is always on the left.
///
/// [`boundary_edges`]: PolygonalDomain::boundary_edges
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolygonalDomain {
    outer: SimplePolygon,
    holes: Vec<SimplePolygon>,
}

impl PolygonalDomain {
    pub fn new(outer: SimplePolygon, holes: Vec<SimplePolygon>) -> Result<Self> {
        for (i, h) in holes.iter().enumerate() {
            let touches_outer = h.edges().any(|(a, b)| outer.edges().any(|(c, d)| segments_intersect(a, b, c, d)));
            if touches_outer {
                return Err(Error::DegenerateDomain(format!("hole {i} touches the outer boundary")));
            }
            if !h.vertices().iter().all(|&v| outer.contains_strict(v)) {
                return Err(Error::DegenerateDomain(format!("hole {i} is not inside the outer polygon")));
            }
            for (j, g) in holes.iter().enumerate().take(i) {
                let touch = h.edges().any(|(a, b)| g.edges().any(|(c, d)| segments_intersect(a, b, c, d)));
                if touch || g.contains_closed(h.vertex(0)) || h.contains_closed(g.vertex(0)) {
                    return Err(Error::DegenerateDomain(format!("holes {j} and {i} overlap")));
                }
            }
        }
        Ok(PolygonalDomain { outer, holes })
    }

    pub fn simple(outer: SimplePolygon) -> Self {
        PolygonalDomain { outer, holes: Vec::new() }
    }

    pub fn outer(&self) -> &SimplePolygon {
        &self.outer
    }

    pub fn holes(&self) -> &[SimplePolygon] {
        &self.holes
    }

    pub fn hole_count(&self) -> usize {
        self.holes.len()
    }

    /// Free-space membership; hole boundaries belong to the free space.
    pub fn contains(&self, p: Point2) -> bool {
        self.outer.contains_closed(p) && self.holes.iter().all(|h| !h.contains_strict(p))
    }

    pub fn free_area(&self) -> f64 {
        self.outer.area() - self.holes.iter().map(|h| h.area()).sum::<f64>()
    }

    /// All polygon vertices: outer ring first, then each hole in order.
    pub fn vertices(&self) -> Vec<Point2> {
        let mut v = self.outer.vertices().to_vec();
        for h in &self.holes {
            v.extend_from_slice(h.vertices());
        }
        v
    }

    /// Boundary edges oriented with the free space on their left.
    pub fn boundary_edges(&self) -> Vec<(Point2, Point2)> {
        let mut e: Vec<_> = self.outer.edges().collect();
        for h in &self.holes {
            e.extend(h.edges().map(|(a, b)| (b, a)));
        }
        e
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sq(x0: f64, y0: f64, s: f64) -> SimplePolygon {
        SimplePolygon::new(vec![
            Point2::new(x0, y0),
            Point2::new(x0 + s, y0),
            Point2::new(x0 + s, y0 + s),
            Point2::new(x0, y0 + s),
        ])
        .unwrap()
    }

    #[test]
    fn hole_boundary_is_free_space() {
        let d = PolygonalDomain::new(sq(0., 0., 10.), vec![sq(4., 4., 2.)]).unwrap();
        assert!(d.contains(Point2::new(4., 5.)));
        assert!(!d.contains(Point2::new(5., 5.)));
        assert!(d.contains(Point2::new(1., 1.)));
        assert_eq!(d.free_area(), 96.0);
    }

    #[test]
    fn rejects_touching_and_overlapping_holes() {
        assert!(matches!(PolygonalDomain::new(sq(0., 0., 10.), vec![sq(0., 4., 2.)]), Err(Error::DegenerateDomain(_))));
        assert!(PolygonalDomain::new(sq(0., 0., 10.), vec![sq(2., 2., 3.), sq(4., 4., 3.)]).is_err());
        assert!(PolygonalDomain::new(sq(0., 0., 10.), vec![sq(2., 2., 5.), sq(3., 3., 1.)]).is_err());
    }
}
