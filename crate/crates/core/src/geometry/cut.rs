use std::collections::{HashMap, VecDeque};

use super::predicates::{dist_point_segment, ray_segment, side_tol};
use super::triangulate::{triangulate, Triangle};
use super::{Point2, SimplePolygon, SplitSegment, WeightedPoint, DIST_EPS};
use crate::{Error, Result};

/// A chord splitting a polygon and its points into two balanced halves.
///
/// `left_polygon` lies to the left of the directed chord `a -> b`. Points on
/// the chord belong to `left_points` only.
#[derive(Debug, Clone)]
pub struct PolygonCut {
    pub chord: SplitSegment,
    pub left_polygon: SimplePolygon,
    pub right_polygon: SimplePolygon,
    pub left_points: Vec<usize>,
    pub right_points: Vec<usize>,
}

impl PolygonCut {
    pub fn max_side(&self) -> usize {
        self.left_points.len().max(self.right_points.len())
    }
}

/// Largest side allowed for `n` points: `ceil(2n / 3)`.
pub fn balance_limit(n: usize) -> usize {
    (2 * n).div_ceil(3)
}

/// Splits point ids by closed membership in `left`; anything else, including
/// points only on the far side of the chord, goes right.
pub fn assign_sides(left: &SimplePolygon, pts: &[WeightedPoint]) -> (Vec<usize>, Vec<usize>) {
    let mut l = Vec::new();
    let mut r = Vec::new();
    for p in pts {
        if left.contains_closed(p.pos) {
            l.push(p.id);
        } else {
            r.push(p.id);
        }
    }
    l.sort_unstable();
    r.sort_unstable();
    (l, r)
}

#[derive(Debug, Clone, Copy)]
enum ChordEnd {
    Vertex(usize),
    OnEdge { edge: usize, at: Point2 },
}

/// Cuts `poly` with a chord so that each side receives at most
/// `ceil(2n/3)` of the `n` points.
///
/// The polygon is triangulated and the dual tree weighted by point counts.
/// A diagonal is used when one is balanced; otherwise the chord is a ray
/// from a corner of the centroid triangle, rotated between consecutive point
/// directions so that no point lies on it.
pub fn balanced_cut(poly: &SimplePolygon, pts: &[WeightedPoint]) -> Result<PolygonCut> {
    let n = pts.len();
    if n < 2 {
        return Err(Error::DegenerateInput(format!("cannot cut {n} point(s)")));
    }
    let tris = triangulate(poly)?;
    let cutter = Cutter { poly, pts, limit: balance_limit(n) };

    let tree = DualTree::new(poly, &tris, pts);
    let mut best: Option<PolygonCut> = None;

    for (i, j) in tree.diagonals_by_balance(n) {
        if let Some(cut) = cutter.evaluate(i, ChordEnd::Vertex(j)) {
            if cutter.is_valid(&cut) {
                return Ok(cut);
            }
            keep_better(&mut best, cut);
        }
    }

    let centre = tree.centroid(n);
    let mut order: Vec<usize> = vec![centre];
    order.extend((0..tris.len()).filter(|&t| t != centre));
    for t in order {
        for r in 0..3 {
            if let Some(cut) = cutter.fan_sweep(&tris[t], r) {
                if cutter.is_valid(&cut) {
                    return Ok(cut);
                }
                keep_better(&mut best, cut);
            }
        }
    }

    match best {
        Some(cut) if cut.max_side() < n && !cut.left_points.is_empty() => Ok(cut),
        _ => Err(Error::DegenerateInput("no chord separates the points (coincident positions?)".into())),
    }
}

fn keep_better(best: &mut Option<PolygonCut>, cut: PolygonCut) {
    let replace = match best {
        None => true,
        Some(b) => cut.max_side() < b.max_side(),
    };
    if replace {
        *best = Some(cut);
    }
}

struct Cutter<'a> {
    poly: &'a SimplePolygon,
    pts: &'a [WeightedPoint],
    limit: usize,
}

impl Cutter<'_> {
    fn is_valid(&self, cut: &PolygonCut) -> bool {
        cut.max_side() <= self.limit && !cut.left_points.is_empty() && !cut.right_points.is_empty()
    }

    /// Builds the two sub-polygons for the chord from vertex `from` to `end`.
    fn evaluate(&self, from: usize, end: ChordEnd) -> Option<PolygonCut> {
        let v = self.poly.vertices();
        let n = v.len();
        let walk = |start: usize, stop: usize| -> Vec<Point2> {
            let mut out = Vec::new();
            let mut i = start;
            loop {
                out.push(v[i]);
                if i == stop {
                    break;
                }
                i = (i + 1) % n;
            }
            out
        };
        let (left, right, b) = match end {
            ChordEnd::Vertex(j) => {
                if j == from || (j + 1) % n == from || (from + 1) % n == j {
                    return None;
                }
                (walk(j, from), walk(from, j), v[j])
            }
            ChordEnd::OnEdge { edge, at } => {
                let mut left = vec![at];
                left.extend(walk((edge + 1) % n, from));
                let mut right = walk(from, edge);
                right.push(at);
                (left, right, at)
            }
        };
        if left.len() < 3 || right.len() < 3 {
            return None;
        }
        let left_polygon = SimplePolygon::from_ccw_unchecked(left);
        let right_polygon = SimplePolygon::from_ccw_unchecked(right);
        if left_polygon.area() <= 0.0 || right_polygon.area() <= 0.0 {
            return None;
        }
        let (left_points, right_points) = assign_sides(&left_polygon, self.pts);
        Some(PolygonCut {
            chord: SplitSegment::new(v[from], b),
            left_polygon,
            right_polygon,
            left_points,
            right_points,
        })
    }

    /// First boundary point hit by the ray from vertex `from` along `dir`.
    fn cast(&self, from: usize, dir: Point2) -> Option<ChordEnd> {
        let v = self.poly.vertices();
        let n = v.len();
        let origin = v[from];
        let mut hit: Option<(f64, usize, f64)> = None;
        for e in 0..n {
            if e == from || (e + 1) % n == from {
                continue;
            }
            if let Some((s, u)) = ray_segment(origin, dir, v[e], v[(e + 1) % n]) {
                if s * dir.norm() <= DIST_EPS {
                    continue;
                }
                if hit.is_none_or(|(best, _, _)| s < best) {
                    hit = Some((s, e, u));
                }
            }
        }
        let (s, e, u) = hit?;
        let at = origin + dir * s;
        let (a, b) = (v[e], v[(e + 1) % n]);
        if at.dist(a) <= 10.0 * DIST_EPS || u == 0.0 {
            Some(ChordEnd::Vertex(e))
        } else if at.dist(b) <= 10.0 * DIST_EPS || u == 1.0 {
            Some(ChordEnd::Vertex((e + 1) % n))
        } else {
            Some(ChordEnd::OnEdge { edge: e, at })
        }
    }

    /// Rotates a chord around corner `r` of triangle `tri` and binary
    /// searches for the first direction whose right side is heavy enough.
    fn fan_sweep(&self, tri: &Triangle, r: usize) -> Option<PolygonCut> {
        let v = self.poly.vertices();
        let from = tri[r];
        let apex = v[from];
        let a = v[tri[(r + 1) % 3]];
        let b = v[tri[(r + 2) % 3]];
        let d1 = a - apex;
        let d2 = b - apex;

        // Point directions strictly inside the wedge, sorted counterclockwise.
        let mut events: Vec<Point2> = self
            .pts
            .iter()
            .map(|p| p.pos)
            .filter(|&p| side_tol(apex, a, p) > 0 && side_tol(apex, b, p) < 0)
            .map(|p| (p - apex).normalized())
            .collect();
        events.sort_by(|x, y| 0.0f64.total_cmp(&x.cross(*y)));
        events.dedup_by(|x, y| x.cross(*y).abs() <= 1e-12);

        let mut dirs = Vec::with_capacity(events.len() + 1);
        let mut prev = d1.normalized();
        for e in events.iter().chain(std::iter::once(&d2.normalized())) {
            dirs.push((prev + *e).normalized());
            prev = *e;
        }

        let n = self.pts.len();
        let need = (n - self.limit.min(n)).max(1);
        let eval = |k: usize| -> Option<PolygonCut> {
            let end = self.cast(from, dirs[k])?;
            self.evaluate(from, end)
        };
        // Right count is non-decreasing along `dirs`.
        let (mut lo, mut hi) = (0usize, dirs.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match eval(mid) {
                Some(c) if c.right_points.len() >= need => hi = mid,
                _ => lo = mid + 1,
            }
        }
        let mut best: Option<PolygonCut> = None;
        for k in [lo.saturating_sub(1), lo, lo + 1] {
            if k < dirs.len() {
                if let Some(c) = eval(k) {
                    if self.is_valid(&c) {
                        return Some(c);
                    }
                    keep_better(&mut best, c);
                }
            }
        }
        best
    }
}

/// Dual tree of a triangulation, each triangle weighted by the number of
/// points it holds.
struct DualTree {
    tris: Vec<Triangle>,
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    subtree: Vec<usize>,
}

impl DualTree {
    fn new(poly: &SimplePolygon, tris: &[Triangle], pts: &[WeightedPoint]) -> Self {
        let n = poly.len();
        let m = tris.len();
        let mut by_edge: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for (t, tri) in tris.iter().enumerate() {
            for k in 0..3 {
                let (u, w) = (tri[k], tri[(k + 1) % 3]);
                let adjacent = (u + 1) % n == w || (w + 1) % n == u;
                if !adjacent {
                    by_edge.entry((u.min(w), u.max(w))).or_default().push(t);
                }
            }
        }
        let mut adj = vec![Vec::new(); m];
        let mut keys: Vec<_> = by_edge.keys().copied().collect();
        keys.sort_unstable();
        for k in keys {
            let ts = &by_edge[&k];
            if ts.len() == 2 {
                adj[ts[0]].push(ts[1]);
                adj[ts[1]].push(ts[0]);
            }
        }

        let mut own = vec![0usize; m];
        for p in pts {
            own[locate(poly, tris, p.pos)] += 1;
        }

        let mut parent = vec![None; m];
        let mut children = vec![Vec::new(); m];
        let mut order = Vec::with_capacity(m);
        let mut seen = vec![false; m];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(t) = queue.pop_front() {
            order.push(t);
            for &u in &adj[t] {
                if !seen[u] {
                    seen[u] = true;
                    parent[u] = Some(t);
                    children[t].push(u);
                    queue.push_back(u);
                }
            }
        }
        let mut subtree = own;
        for &t in order.iter().rev() {
            if let Some(p) = parent[t] {
                subtree[p] += subtree[t];
            }
        }
        DualTree { tris: tris.to_vec(), parent, children, subtree }
    }

    fn shared_diagonal(&self, a: usize, b: usize) -> (usize, usize) {
        let ta = &self.tris[a];
        let tb = &self.tris[b];
        let common: Vec<usize> = ta.iter().copied().filter(|v| tb.contains(v)).collect();
        (common[0], common[1])
    }

    /// Diagonals ordered by how balanced their (approximate) split is.
    fn diagonals_by_balance(&self, n: usize) -> Vec<(usize, usize)> {
        let mut cands: Vec<(usize, (usize, usize))> = (0..self.tris.len())
            .filter_map(|t| {
                let p = self.parent[t]?;
                let s = self.subtree[t];
                Some((s.max(n - s), self.shared_diagonal(t, p)))
            })
            .collect();
        cands.sort_unstable();
        cands.into_iter().map(|(_, d)| d).collect()
    }

    /// Triangle minimising the heaviest component left after removing it.
    fn centroid(&self, n: usize) -> usize {
        (0..self.tris.len())
            .min_by_key(|&t| {
                let up = n - self.subtree[t];
                let down = self.children[t].iter().map(|&c| self.subtree[c]).max().unwrap_or(0);
                (up.max(down), t)
            })
            .unwrap_or(0)
    }
}

fn locate(poly: &SimplePolygon, tris: &[Triangle], p: Point2) -> usize {
    let v = poly.vertices();
    let inside = |t: &Triangle| {
        side_tol(v[t[0]], v[t[1]], p) >= 0 && side_tol(v[t[1]], v[t[2]], p) >= 0 && side_tol(v[t[2]], v[t[0]], p) >= 0
    };
    if let Some(t) = tris.iter().position(inside) {
        return t;
    }
    let gap =
        |t: &Triangle| (0..3).map(|k| dist_point_segment(p, v[t[k]], v[t[(k + 1) % 3]])).fold(f64::INFINITY, f64::min);
    (0..tris.len()).min_by(|&a, &b| gap(&tris[a]).total_cmp(&gap(&tris[b]))).unwrap_or(0)
}
