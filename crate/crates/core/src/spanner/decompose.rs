use std::collections::BTreeSet;

use crate::geodesic::PolygonalDomain;
use crate::geometry::predicates::{dist_point_segment, ray_segment};
use crate::geometry::{triangulate_points, Point2, SimplePolygon, SplitSegment, WeightedPoint, DIST_EPS};
use crate::separator::PlanarGraph;
use crate::{Error, Result};

const SNAP: f64 = 10.0 * DIST_EPS;

/// A simple polygon of the decomposition. `labels[i]` names the splitting
/// segment along edge `i -> i+1`, or `None` for domain boundary.
#[derive(Debug, Clone, PartialEq)]
pub struct Face {
    pub polygon: SimplePolygon,
    pub labels: Vec<Option<usize>>,
}

impl Face {
    fn whole(polygon: SimplePolygon) -> Self {
        let labels = vec![None; polygon.len()];
        Face { polygon, labels }
    }

    /// Distinct splitting segments on the boundary, in boundary order.
    pub fn segments(&self) -> Vec<usize> {
        let mut out: Vec<usize> = Vec::new();
        for s in self.labels.iter().flatten() {
            if !out.contains(s) {
                out.push(*s);
            }
        }
        out
    }
}

#[derive(Debug, Clone)]
pub struct DomainDecomposition {
    pub faces: Vec<Face>,
    pub segments: Vec<SplitSegment>,
    /// The two faces on either side of each segment.
    pub segment_faces: Vec<[usize; 2]>,
    /// Face adjacency across splitting segments, rotations following each
    /// face boundary. Weights are point counts when points were supplied.
    pub dual: PlanarGraph,
}

impl DomainDecomposition {
    /// The first face containing `p`, or the closest one.
    pub fn face_of(&self, p: Point2) -> usize {
        if let Some(f) = self.faces.iter().position(|f| f.polygon.contains_closed(p)) {
            return f;
        }
        let gap = |f: &Face| f.polygon.edges().map(|(a, b)| dist_point_segment(p, a, b)).fold(f64::INFINITY, f64::min);
        (0..self.faces.len()).min_by(|&a, &b| gap(&self.faces[a]).total_cmp(&gap(&self.faces[b]))).unwrap_or(0)
    }

    pub fn other_face(&self, segment: usize, face: usize) -> usize {
        let [a, b] = self.segment_faces[segment];
        if a == face {
            b
        } else {
            a
        }
    }

    fn build_dual(&mut self, weights: Vec<u64>) -> Result<()> {
        let adj = (0..self.faces.len())
            .map(|f| {
                let mut out: Vec<usize> = Vec::new();
                for s in self.faces[f].segments() {
                    let g = self.other_face(s, f);
                    if g != f && !out.contains(&g) {
                        out.push(g);
                    }
                }
                out
            })
            .collect();
        self.dual = PlanarGraph::new(adj, weights)?;
        Ok(())
    }

    /// Reweights the dual by the number of points in each face.
    pub fn assign_points(&mut self, pts: &[WeightedPoint]) -> Result<Vec<usize>> {
        let owner: Vec<usize> = pts.iter().map(|p| self.face_of(p.pos)).collect();
        let mut w = vec![0u64; self.faces.len()];
        for &f in &owner {
            w[f] += 1;
        }
        self.build_dual(w)?;
        Ok(owner)
    }
}

#[derive(Debug, Clone, Copy)]
struct HalfEdge {
    from: usize,
    to: usize,
    label: Option<usize>,
    free_left: bool,
}

/// Node indices around a face and the label of each edge.
type NodeCycle = (Vec<usize>, Vec<Option<usize>>);

struct Arrangement {
    nodes: Vec<Point2>,
    half: Vec<HalfEdge>,
}

impl Arrangement {
    fn node(&mut self, p: Point2) -> usize {
        if let Some(i) = self.nodes.iter().position(|q| q.dist(p) <= SNAP) {
            return i;
        }
        self.nodes.push(p);
        self.nodes.len() - 1
    }

    fn add(&mut self, a: usize, b: usize, label: Option<usize>, both_free: bool) {
        self.half.push(HalfEdge { from: a, to: b, label, free_left: true });
        self.half.push(HalfEdge { from: b, to: a, label, free_left: both_free });
    }

    /// Faces to the left of free half-edges, as node cycles with edge labels.
    fn faces(&self) -> Result<Vec<NodeCycle>> {
        let n = self.nodes.len();
        let mut out_edges: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (i, e) in self.half.iter().enumerate() {
            out_edges[e.from].push(i);
        }
        let angle = |e: &HalfEdge| {
            let d = self.nodes[e.to] - self.nodes[e.from];
            d.y.atan2(d.x)
        };
        for list in &mut out_edges {
            list.sort_by(|&a, &b| angle(&self.half[a]).total_cmp(&angle(&self.half[b])));
        }
        let twin = |i: usize| i ^ 1;
        let next = |i: usize| {
            let e = &self.half[i];
            let around = &out_edges[e.to];
            let pos = around.iter().position(|&j| j == twin(i)).expect("twin present");
            around[(pos + around.len() - 1) % around.len()]
        };
        let mut seen = vec![false; self.half.len()];
        let mut faces = Vec::new();
        for start in 0..self.half.len() {
            if seen[start] || !self.half[start].free_left {
                continue;
            }
            let (mut cycle, mut labels) = (Vec::new(), Vec::new());
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                if !self.half[i].free_left {
                    return Err(Error::DegenerateDomain("face leaks into a hole".into()));
                }
                cycle.push(self.half[i].from);
                labels.push(self.half[i].label);
                i = next(i);
            }
            if i != start {
                return Err(Error::DegenerateDomain("inconsistent face boundary".into()));
            }
            let distinct: BTreeSet<usize> = cycle.iter().copied().collect();
            if distinct.len() != cycle.len() {
                return Err(Error::DegenerateDomain("decomposition produced a non-simple face".into()));
            }
            faces.push((cycle, labels));
        }
        Ok(faces)
    }
}

/// Ray from `origin` along `dir` to the nearest boundary point.
fn shoot(rings: &[Vec<Point2>], origin: Point2, dir: Point2) -> Option<Point2> {
    let mut best: Option<(f64, Point2)> = None;
    for ring in rings {
        let n = ring.len();
        for i in 0..n {
            let (a, b) = (ring[i], ring[(i + 1) % n]);
            if let Some((s, u)) = ray_segment(origin, dir, a, b) {
                if s > SNAP && best.is_none_or(|(bs, _)| s < bs) {
                    let mut hit = a.lerp(b, u);
                    if hit.dist(a) <= SNAP {
                        hit = a;
                    } else if hit.dist(b) <= SNAP {
                        hit = b;
                    }
                    best = Some((s, hit));
                }
            }
        }
    }
    best.map(|(_, p)| p)
}

/// Vertical segments up and down from each hole's leftmost and rightmost
/// vertices, stopped at the first boundary hit.
fn vertical_shots(domain: &PolygonalDomain, rings: &[Vec<Point2>]) -> Result<Vec<SplitSegment>> {
    let up = Point2::new(0.0, 1.0);
    let down = Point2::new(0.0, -1.0);
    let mut shots: Vec<SplitSegment> = Vec::new();
    for h in domain.holes() {
        let v = h.vertices();
        let lo = v.iter().map(|p| p.x).fold(f64::INFINITY, f64::min);
        let hi = v.iter().map(|p| p.x).fold(f64::NEG_INFINITY, f64::max);
        for x in [lo, hi] {
            let column: Vec<Point2> = v.iter().copied().filter(|p| (p.x - x).abs() <= DIST_EPS).collect();
            let top = column.iter().copied().max_by(|a, b| a.y.total_cmp(&b.y)).unwrap();
            let bottom = column.iter().copied().min_by(|a, b| a.y.total_cmp(&b.y)).unwrap();
            for (origin, dir) in [(top, up), (bottom, down)] {
                let hit = shoot(rings, origin, dir)
                    .ok_or_else(|| Error::DegenerateDomain("vertical shot escaped the domain".into()))?;
                let seg = SplitSegment::new(origin, hit);
                if !shots.iter().any(|s| s.same_as(&seg, SNAP)) {
                    shots.push(seg);
                }
            }
        }
    }
    Ok(shots)
}

/// Splits `face` along a triangulation diagonal that leaves at least two
/// splitting segments on each side.
fn refine(face: &Face, new_label: usize) -> Result<(Face, Face, SplitSegment)> {
    let v = face.polygon.vertices();
    let n = v.len();
    let tris = triangulate_points(v)?;
    let is_edge = |a: usize, b: usize| (a + 1) % n == b || (b + 1) % n == a;
    let label_of = |a: usize, b: usize| if (a + 1) % n == b { face.labels[a] } else { face.labels[b] };
    let weight: Vec<usize> = tris
        .iter()
        .map(|t| (0..3).filter(|&i| is_edge(t[i], t[(i + 1) % 3]) && label_of(t[i], t[(i + 1) % 3]).is_some()).count())
        .collect();
    let key = |a: usize, b: usize| (a.min(b), a.max(b));
    let mut adj: Vec<Vec<(usize, (usize, usize))>> = vec![Vec::new(); tris.len()];
    for i in 0..tris.len() {
        for j in i + 1..tris.len() {
            let shared: Vec<usize> = tris[i].iter().copied().filter(|x| tris[j].contains(x)).collect();
            if shared.len() == 2 {
                adj[i].push((j, key(shared[0], shared[1])));
                adj[j].push((i, key(shared[0], shared[1])));
            }
        }
    }
    let total: usize = weight.iter().sum();
    let mut order = vec![0];
    let mut parent = vec![(usize::MAX, (0, 0)); tris.len()];
    parent[0].0 = 0;
    let mut i = 0;
    while i < order.len() {
        let t = order[i];
        i += 1;
        for &(u, d) in &adj[t] {
            if parent[u].0 == usize::MAX {
                parent[u] = (t, d);
                order.push(u);
            }
        }
    }
    let mut sub = weight.clone();
    for &t in order.iter().skip(1).rev() {
        sub[parent[t].0] += sub[t];
    }
    let best = order
        .iter()
        .skip(1)
        .filter(|&&t| sub[t] >= 2 && sub[t] + 2 <= total)
        .min_by_key(|&&t| ((2 * sub[t]).abs_diff(total), t))
        .ok_or_else(|| Error::DegenerateDomain("face cannot be refined".into()))?;
    let (a, b) = parent[*best].1;
    let half = |from: usize, to: usize| {
        let mut pts = Vec::new();
        let mut labels = Vec::new();
        let mut k = from;
        while k != to {
            pts.push(v[k]);
            labels.push(face.labels[k]);
            k = (k + 1) % n;
        }
        pts.push(v[to]);
        labels.push(Some(new_label));
        let polygon = SimplePolygon::new(pts).map_err(|e| Error::DegenerateDomain(e.to_string()))?;
        Ok::<_, Error>(Face { polygon, labels })
    };
    Ok((half(a, b)?, half(b, a)?, SplitSegment::new(v[a], v[b])))
}

/// Partitions the free space into simple polygons, each bounded by at most
/// three splitting segments.
pub fn decompose_domain(domain: &PolygonalDomain) -> Result<DomainDecomposition> {
    let mut dec = DomainDecomposition {
        faces: Vec::new(),
        segments: Vec::new(),
        segment_faces: Vec::new(),
        dual: PlanarGraph::new(Vec::new(), Vec::new())?,
    };
    if domain.hole_count() == 0 {
        dec.faces.push(Face::whole(domain.outer().clone()));
        dec.build_dual(vec![0])?;
        return Ok(dec);
    }
    let mut rings: Vec<Vec<Point2>> = vec![domain.outer().vertices().to_vec()];
    rings.extend(domain.holes().iter().map(|h| h.vertices().iter().rev().copied().collect()));
    let shots = vertical_shots(domain, &rings)?;

    let mut arr = Arrangement { nodes: Vec::new(), half: Vec::new() };
    for ring in &rings {
        let n = ring.len();
        for i in 0..n {
            let (a, b) = (ring[i], ring[(i + 1) % n]);
            let mut stops: Vec<(f64, Point2)> = vec![(0.0, a), (1.0, b)];
            for s in &shots {
                for p in [s.a, s.b] {
                    if p.dist(a) > SNAP && p.dist(b) > SNAP && dist_point_segment(p, a, b) <= SNAP {
                        stops.push(((p - a).dot(b - a) / (b - a).dot(b - a), p));
                    }
                }
            }
            stops.sort_by(|x, y| x.0.total_cmp(&y.0));
            for w in stops.windows(2) {
                let (u, v) = (arr.node(w[0].1), arr.node(w[1].1));
                if u != v {
                    arr.add(u, v, None, false);
                }
            }
        }
    }
    for (id, s) in shots.iter().enumerate() {
        let (u, v) = (arr.node(s.a), arr.node(s.b));
        arr.add(u, v, Some(id), true);
    }
    dec.segments = shots;

    let mut pending: Vec<Face> = Vec::new();
    for (cycle, labels) in arr.faces()? {
        let pts: Vec<Point2> = cycle.iter().map(|&i| arr.nodes[i]).collect();
        let polygon = SimplePolygon::new(pts).map_err(|e| Error::DegenerateDomain(e.to_string()))?;
        if polygon.vertices()[0] != arr.nodes[cycle[0]] || polygon.area() <= 0.0 {
            return Err(Error::DegenerateDomain("face traced clockwise".into()));
        }
        pending.push(Face { polygon, labels });
    }
    while let Some(face) = pending.pop() {
        if face.segments().len() <= 3 {
            dec.faces.push(face);
            continue;
        }
        let (a, b, seg) = refine(&face, dec.segments.len())?;
        dec.segments.push(seg);
        pending.push(a);
        pending.push(b);
    }
    dec.faces.sort_by(|x, y| x.polygon.vertex(0).lex_cmp(&y.polygon.vertex(0)));

    let mut sides: Vec<Vec<usize>> = vec![Vec::new(); dec.segments.len()];
    for (f, face) in dec.faces.iter().enumerate() {
        for s in face.segments() {
            sides[s].push(f);
        }
    }
    dec.segment_faces = sides
        .into_iter()
        .enumerate()
        .map(|(s, v)| match v[..] {
            [a, b] => Ok([a, b]),
            _ => Err(Error::DegenerateDomain(format!("segment {s} borders {} faces", v.len()))),
        })
        .collect::<Result<_>>()?;
    let w = vec![0; dec.faces.len()];
    dec.build_dual(w)?;
    Ok(dec)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rect(x0: f64, y0: f64, x1: f64, y1: f64) -> SimplePolygon {
        SimplePolygon::new(vec![Point2::new(x0, y0), Point2::new(x1, y0), Point2::new(x1, y1), Point2::new(x0, y1)])
            .unwrap()
    }

    fn area_sum(d: &DomainDecomposition) -> f64 {
        d.faces.iter().map(|f| f.polygon.area()).sum()
    }

    #[test]
    fn no_holes_is_one_face() {
        let d = decompose_domain(&PolygonalDomain::simple(rect(0., 0., 4., 4.))).unwrap();
        assert_eq!(d.faces.len(), 1);
        assert!(d.segments.is_empty());
        assert_eq!(d.dual.len(), 1);
    }

    #[test]
    fn centred_square_hole() {
        let dom = PolygonalDomain::new(rect(0., 0., 10., 10.), vec![rect(4.5, 4.5, 5.5, 5.5)]).unwrap();
        let d = decompose_domain(&dom).unwrap();
        assert_eq!(d.segments.len(), 4);
        assert_eq!(d.faces.len(), 4);
        assert!((area_sum(&d) - dom.free_area()).abs() < 1e-9);
        for v in 0..4 {
            assert_eq!(d.dual.neighbors(v).len(), 2);
        }
        assert_eq!(d.dual.edges().count(), 4);
    }

    #[test]
    fn two_holes_stay_within_three_segments() {
        let dom = PolygonalDomain::new(
            rect(0., 0., 20., 10.),
            vec![
                rect(3., 3., 6., 7.),
                SimplePolygon::new(vec![Point2::new(11., 2.), Point2::new(15., 4.), Point2::new(13., 8.)]).unwrap(),
            ],
        )
        .unwrap();
        let d = decompose_domain(&dom).unwrap();
        assert!((area_sum(&d) - dom.free_area()).abs() < 1e-9);
        for f in &d.faces {
            assert!(f.segments().len() <= 3);
            assert!(f.polygon.is_simple());
        }
        for s in &d.segments {
            let mid = s.point_at(0.5);
            assert!(dom.contains(mid));
        }
    }
}
