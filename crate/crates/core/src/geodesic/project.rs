use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::geometry::predicates::{dist_point_segment, segments_intersect, signed_dist};
use crate::geometry::{Point2, SplitSegment, WeightedPoint, DIST_EPS};
use crate::{Error, Result};

use super::{GeodesicOracle, PointContext};

/// The geodesically closest point of a segment to a weighted point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProjectedPoint {
    pub source_id: usize,
    pub position: Point2,
    /// Parameter along the segment, in `[0, 1]`.
    pub param: f64,
    /// `d_pi(p, position)`.
    pub distance: f64,
    /// `w(p) + d_pi(p, position)`.
    pub augmented_weight: f64,
}

/// A segment prepared for repeated projections. Visibility of the segment
/// from each reflex vertex is computed on first use and shared.
pub struct SegmentView<'a> {
    oracle: &'a GeodesicOracle,
    seg: SplitSegment,
    per_vertex: Vec<OnceLock<Vec<(f64, f64)>>>,
}

fn tie(a: f64) -> f64 {
    1e-12 * (1.0 + a.abs())
}

impl GeodesicOracle {
    pub fn segment_view(&self, seg: SplitSegment) -> SegmentView<'_> {
        SegmentView {
            oracle: self,
            seg,
            per_vertex: (0..self.reflex_vertices().len()).map(|_| OnceLock::new()).collect(),
        }
    }

    /// Maximal closed parameter ranges of `seg` visible from `src`.
    /// Isolated visible points come back as degenerate ranges.
    pub fn visible_intervals(&self, src: Point2, seg: SplitSegment) -> Vec<(f64, f64)> {
        let (a, b) = (seg.a, seg.b);
        let d = b - a;
        let len = d.norm();
        if len <= DIST_EPS {
            return if self.visible(src, a) { vec![(0.0, 0.0)] } else { Vec::new() };
        }
        let mut ts = vec![0.0, 1.0];
        let collinear = signed_dist(a, b, src).abs() <= DIST_EPS;
        let mut push = |t: f64| {
            if t > 0.0 && t < 1.0 {
                ts.push(t);
            }
        };
        for &w in &self.all_vertices {
            let r = w - src;
            let rn = r.norm();
            if rn <= DIST_EPS {
                continue;
            }
            let denom = d.cross(r);
            if denom.abs() > 1e-14 * rn * len {
                push((src - a).cross(r) / denom);
            }
            if collinear {
                push((w - a).dot(d) / (len * len));
            }
        }
        for (c, e) in self.boundary_segments() {
            if segments_intersect(a, b, c, e) {
                let f = e - c;
                let denom = d.cross(f);
                if denom.abs() > 1e-14 * len * f.norm() {
                    push((c - a).cross(f) / denom);
                }
            }
        }
        ts.sort_by(f64::total_cmp);
        ts.dedup_by(|x, y| (*x - *y) * len <= 1e-12);
        let n = ts.len();
        let at = |t: f64| seg.point_at(t);
        let vis_pt: Vec<bool> = ts.iter().map(|&t| self.visible(src, at(t))).collect();
        let vis_mid: Vec<bool> = ts.windows(2).map(|w| self.visible(src, at(0.5 * (w[0] + w[1])))).collect();
        let mut out = Vec::new();
        let mut i = 0;
        while i < n {
            if !vis_pt[i] && !(i + 1 < n && vis_mid[i]) {
                i += 1;
                continue;
            }
            let mut j = i;
            while j + 1 < n && vis_mid[j] {
                j += 1;
            }
            out.push((ts[i], ts[j]));
            i = j + 1;
        }
        out
    }

    /// Every point of `seg` is visible from `src`.
    fn sees_whole(&self, src: Point2, seg: SplitSegment) -> bool {
        if !self.visible(src, seg.a) || !self.visible(src, seg.b) || !self.visible(seg.a, seg.b) {
            return false;
        }
        let (a, b) = (seg.a, seg.b);
        let s = signed_dist(a, b, src).signum();
        // Any boundary intruding into the triangle would leave a vertex inside.
        !self.all_vertices.iter().any(|&v| {
            s * signed_dist(a, b, v) > DIST_EPS
                && s * signed_dist(b, src, v) > DIST_EPS
                && s * signed_dist(src, a, v) > DIST_EPS
        })
    }
}

impl SegmentView<'_> {
    pub fn segment(&self) -> SplitSegment {
        self.seg
    }

    fn vertex_intervals(&self, v: usize) -> &[(f64, f64)] {
        self.per_vertex[v].get_or_init(|| self.oracle.visible_intervals(self.oracle.reflex_vertices()[v], self.seg))
    }

    /// Projects `p`, whose context `ctx` must come from the same oracle.
    /// Ties go to the smaller parameter.
    pub fn project(&self, ctx: &PointContext, p: &WeightedPoint) -> Result<ProjectedPoint> {
        let seg = self.seg;
        let mut best = (f64::INFINITY, f64::INFINITY);
        let offer = |best: &mut (f64, f64), val: f64, t: f64| {
            if val < best.0 - tie(val) || (val <= best.0 + tie(val) && t < best.1) {
                *best = (val, t);
            }
        };
        let from = |src: Point2, lo: f64, hi: f64| {
            let t = seg.clamp_param(src).clamp(lo, hi);
            (src.dist(seg.point_at(t)), t)
        };
        if self.oracle.sees_whole(p.pos, seg) {
            let (val, t) = from(p.pos, 0.0, 1.0);
            offer(&mut best, val, t);
        } else {
            for (lo, hi) in self.oracle.visible_intervals(p.pos, seg) {
                let (val, t) = from(p.pos, lo, hi);
                offer(&mut best, val, t);
            }
        }
        let reflex = self.oracle.reflex_vertices();
        let mut order: Vec<(f64, usize)> = (0..reflex.len())
            .map(|v| (ctx.to_vertex(v) + dist_point_segment(reflex[v], seg.a, seg.b), v))
            .filter(|(lb, _)| lb.is_finite())
            .collect();
        order.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)));
        for (lb, v) in order {
            if lb > best.0 + tie(best.0) {
                break;
            }
            for &(lo, hi) in self.vertex_intervals(v) {
                let (val, t) = from(reflex[v], lo, hi);
                offer(&mut best, ctx.to_vertex(v) + val, t);
            }
        }
        let (distance, param) = best;
        if !distance.is_finite() {
            return Err(Error::DegenerateInput(format!("point {} cannot reach the segment", p.id)));
        }
        Ok(ProjectedPoint {
            source_id: p.id,
            position: seg.point_at(param),
            param,
            distance,
            augmented_weight: p.weight + distance,
        })
    }
}

/// One-off projection of `p` onto `seg`.
pub fn geodesic_project(oracle: &GeodesicOracle, p: &WeightedPoint, seg: SplitSegment) -> Result<ProjectedPoint> {
    let ctx = oracle.context(p.pos)?;
    oracle.segment_view(seg).project(&ctx, p)
}
