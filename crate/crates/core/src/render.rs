//! Static SVG pictures of instances and spanners.

use std::fmt::Write;

use crate::exec::Execution;
use crate::geodesic::GeodesicOracle;
use crate::geometry::Point2;
use crate::instance::Instance;
use crate::spanner::SpannerGraph;
use crate::Result;

struct Canvas {
    lo: Point2,
    hi: Point2,
    scale: f64,
    unit: f64,
}

impl Canvas {
    fn map(&self, p: Point2) -> (f64, f64) {
        (p.x * self.scale - self.lo.x, self.hi.y - p.y * self.scale)
    }

    fn path(&self, pts: &[Point2], close: bool) -> String {
        let mut d = String::new();
        for (i, &p) in pts.iter().enumerate() {
            let (x, y) = self.map(p);
            let _ = write!(d, "{}{x:.4},{y:.4} ", if i == 0 { "M" } else { "L" });
        }
        if close {
            d.push('Z');
        }
        d
    }
}

/// Draws the domain, the points (radius grows with weight) and, when given,
/// the spanner edges along their geodesics. Faulted vertices are crossed out.
pub fn render_svg(instance: &Instance, spanner: Option<&SpannerGraph>, faults: &[usize]) -> Result<String> {
    let (lo, hi) = instance.domain.outer().bbox();
    let s = instance.scale;
    let (lo, hi) = (Point2::new(lo.x * s, lo.y * s), Point2::new(hi.x * s, hi.y * s));
    let unit = (hi - lo).norm() / 400.0;
    let margin = 10.0 * unit;
    let c = Canvas {
        lo: Point2::new(lo.x - margin, lo.y - margin),
        hi: Point2::new(hi.x + margin, hi.y + margin),
        scale: s,
        unit,
    };
    let (w, h) = (c.hi.x - c.lo.x, c.hi.y - c.lo.y);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r##"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {w:.4} {h:.4}" width="800" height="{:.0}">"##,
        800.0 * h / w
    );
    let _ = writeln!(
        out,
        r##"<defs><pattern id="hatch" width="{0:.4}" height="{0:.4}" patternUnits="userSpaceOnUse" patternTransform="rotate(45)"><line x1="0" y1="0" x2="0" y2="{0:.4}" stroke="#777" stroke-width="{1:.4}"/></pattern></defs>"##,
        4.0 * c.unit,
        0.6 * c.unit
    );
    let _ = writeln!(
        out,
        r##"<path d="{}" fill="#fbfbf7" stroke="#222" stroke-width="{:.4}"/>"##,
        c.path(instance.domain.outer().vertices(), true),
        c.unit
    );
    for hole in instance.domain.holes() {
        let _ = writeln!(
            out,
            r##"<path class="hole" d="{}" fill="url(#hatch)" stroke="#222" stroke-width="{:.4}"/>"##,
            c.path(hole.vertices(), true),
            c.unit
        );
    }
    if let Some(g) = spanner {
        let oracle = GeodesicOracle::new(instance.domain.clone());
        let pts = &instance.points;
        let ctx = Execution::default().map(pts, |p| oracle.context(p.pos));
        let ctx = ctx.into_iter().collect::<Result<Vec<_>>>()?;
        for e in g.edges() {
            let path = oracle.path_between(&ctx[e.u], &ctx[e.v]);
            let _ = writeln!(
                out,
                r##"<path class="edge" d="{}" fill="none" stroke="#3a6ea5" stroke-opacity="0.5" stroke-width="{:.4}"/>"##,
                c.path(&path.anchors, false),
                0.5 * c.unit
            );
        }
    }
    for p in &instance.points {
        let (x, y) = c.map(p.pos);
        let r = c.unit * (2.0 + 4.0 * (p.weight * s / (hi - lo).norm() * 50.0).min(4.0));
        let _ = writeln!(out, r##"<circle cx="{x:.4}" cy="{y:.4}" r="{r:.4}" fill="#c0392b"/>"##);
        let _ = writeln!(
            out,
            r##"<text x="{:.4}" y="{:.4}" font-size="{:.4}" fill="#333">{}</text>"##,
            x + r,
            y - r,
            6.0 * c.unit,
            p.id
        );
        if faults.contains(&p.id) {
            let d = 2.0 * r;
            let _ = writeln!(
                out,
                r##"<path class="fault" d="M{:.4},{:.4} L{:.4},{:.4} M{:.4},{:.4} L{:.4},{:.4}" stroke="#000" stroke-width="{:.4}"/>"##,
                x - d,
                y - d,
                x + d,
                y + d,
                x - d,
                y + d,
                x + d,
                y - d,
                c.unit
            );
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{InstanceFile, PointRecord};
    use crate::spanner::SpannerEdge;

    fn inst() -> Instance {
        InstanceFile {
            outer: vec![[0., 0.], [10., 0.], [10., 10.], [0., 10.]],
            holes: vec![vec![[4., 2.], [6., 2.], [6., 8.], [4., 8.]]],
            points: vec![PointRecord { x: 2., y: 5., w: 0.0 }, PointRecord { x: 8., y: 5., w: 1.0 }],
            seed: None,
            generator: None,
        }
        .to_instance()
        .unwrap()
    }

    #[test]
    fn instance_only() {
        let svg = render_svg(&inst(), None, &[]).unwrap();
        assert_eq!(svg.matches("<circle").count(), 2);
        assert_eq!(svg.matches("class=\"hole\"").count(), 1);
        assert!(!svg.contains("class=\"edge\""));
    }

    #[test]
    fn edges_bend_around_holes_and_faults_are_marked() {
        let i = inst();
        let g = SpannerGraph::from_edges(2, [SpannerEdge { u: 0, v: 1, length: 0.0 }]).unwrap();
        let svg = render_svg(&i, Some(&g), &[0]).unwrap();
        let edge = svg.lines().find(|l| l.contains("class=\"edge\"")).unwrap();
        // Start, two hole corners, end.
        assert_eq!(edge.matches('L').count(), 3);
        assert_eq!(svg.matches("class=\"fault\"").count(), 1);
    }
}
