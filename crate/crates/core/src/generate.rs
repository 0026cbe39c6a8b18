//! Seeded random instances: a simple polygon untangled by 2-opt, disjoint
//! star-shaped holes, and uniform points in the free space.

use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp};

use crate::geodesic::PolygonalDomain;
use crate::geometry::predicates::{dist_point_segment, orientation, Orientation};
use crate::geometry::{Point2, SimplePolygon};
use crate::instance::{GeneratorInfo, InstanceFile, PointRecord};
use crate::{Error, Result};

pub const SWAP_CAP: usize = 1_000_000;
const SIDE: f64 = 100.0;
const GRID: f64 = 1e6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightDist {
    Zero,
    Uniform01,
    Exp,
}

impl WeightDist {
    pub fn name(self) -> &'static str {
        match self {
            WeightDist::Zero => "zero",
            WeightDist::Uniform01 => "uniform01",
            WeightDist::Exp => "exp",
        }
    }
}

impl FromStr for WeightDist {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "zero" => Ok(WeightDist::Zero),
            "uniform01" => Ok(WeightDist::Uniform01),
            "exp" => Ok(WeightDist::Exp),
            _ => Err(Error::InvalidParameter(format!("unknown weight distribution {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenParams {
    pub n: usize,
    pub holes: usize,
    pub polygon_vertices: usize,
    pub weights: WeightDist,
    pub seed: u64,
}

fn snap(v: f64) -> f64 {
    (v * GRID).round() / GRID
}

fn random_point(rng: &mut ChaCha8Rng, lo: Point2, hi: Point2) -> Point2 {
    Point2::new(snap(rng.random_range(lo.x..hi.x)), snap(rng.random_range(lo.y..hi.y)))
}

fn proper_cross(a: Point2, b: Point2, c: Point2, d: Point2) -> bool {
    let o = |p, q, r| orientation(p, q, r);
    let ccw = Orientation::CounterClockwise;
    let cw = Orientation::Clockwise;
    let s1 = (o(a, b, c), o(a, b, d));
    let s2 = (o(c, d, a), o(c, d, b));
    ((s1 == (ccw, cw)) || (s1 == (cw, ccw))) && ((s2 == (ccw, cw)) || (s2 == (cw, ccw)))
}

/// Reverses sub-paths until no two edges cross. Returns false at the cap.
fn untangle(v: &mut [Point2]) -> bool {
    let m = v.len();
    let mut swaps = 0;
    loop {
        let mut clean = true;
        for i in 0..m {
            for j in i + 2..m {
                if i == 0 && j == m - 1 {
                    continue;
                }
                if proper_cross(v[i], v[i + 1], v[j], v[(j + 1) % m]) {
                    v[i + 1..=j].reverse();
                    swaps += 1;
                    clean = false;
                    if swaps >= SWAP_CAP {
                        return false;
                    }
                }
            }
        }
        if clean {
            return true;
        }
    }
}

fn random_polygon(rng: &mut ChaCha8Rng, m: usize) -> Result<SimplePolygon> {
    for _ in 0..100 {
        let mut v: Vec<Point2> =
            (0..m).map(|_| random_point(rng, Point2::new(0.0, 0.0), Point2::new(SIDE, SIDE))).collect();
        if untangle(&mut v) {
            if let Ok(p) = SimplePolygon::new(v) {
                return Ok(p);
            }
        }
    }
    Err(Error::GenerationFailed(format!("no simple polygon with {m} vertices")))
}

fn star(rng: &mut ChaCha8Rng, centre: Point2, radius: f64) -> Option<SimplePolygon> {
    let k = rng.random_range(3..=6);
    let mut angles: Vec<f64> = (0..k).map(|_| rng.random_range(0.0..std::f64::consts::TAU)).collect();
    angles.sort_by(f64::total_cmp);
    let v = angles
        .iter()
        .map(|&a| {
            let r = radius * rng.random_range(0.5..1.0);
            Point2::new(snap(centre.x + r * a.cos()), snap(centre.y + r * a.sin()))
        })
        .collect();
    SimplePolygon::new(v).ok()
}

fn clearance(a: &SimplePolygon, b: &SimplePolygon) -> f64 {
    let one = |p: &SimplePolygon, q: &SimplePolygon| {
        p.vertices()
            .iter()
            .flat_map(|&v| q.edges().map(move |(x, y)| dist_point_segment(v, x, y)))
            .fold(f64::INFINITY, f64::min)
    };
    one(a, b).min(one(b, a))
}

fn place_holes(rng: &mut ChaCha8Rng, outer: &SimplePolygon, h: usize) -> Result<Vec<SimplePolygon>> {
    let (lo, hi) = outer.bbox();
    let mut holes: Vec<SimplePolygon> = Vec::new();
    let mut radius = 8.0;
    let mut failures = 0;
    while holes.len() < h {
        if failures > 0 && failures % 200 == 0 {
            radius *= 0.7;
        }
        if failures > 20_000 {
            return Err(Error::GenerationFailed(format!("placed {} of {h} holes", holes.len())));
        }
        let centre = random_point(rng, lo, hi);
        let Some(cand) = star(rng, centre, radius) else {
            failures += 1;
            continue;
        };
        let gap = 0.1 * radius;
        let fits = cand.vertices().iter().all(|&v| outer.contains_strict(v))
            && clearance(&cand, outer) > gap
            && holes.iter().all(|o| clearance(&cand, o) > gap && !o.contains_closed(cand.vertex(0)));
        let mut trial = holes.clone();
        trial.push(cand.clone());
        if fits && PolygonalDomain::new(outer.clone(), trial).is_ok() {
            holes.push(cand);
        } else {
            failures += 1;
        }
    }
    Ok(holes)
}

pub fn generate_instance(p: &GenParams) -> Result<InstanceFile> {
    if p.polygon_vertices < 3 {
        return Err(Error::InvalidParameter("polygon needs at least 3 vertices".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let outer = random_polygon(&mut rng, p.polygon_vertices)?;
    let holes = place_holes(&mut rng, &outer, p.holes)?;
    let domain = PolygonalDomain::new(outer.clone(), holes.clone())?;
    let (lo, hi) = outer.bbox();
    let exp = Exp::new(1.0).expect("rate is positive");
    let mut points: Vec<PointRecord> = Vec::with_capacity(p.n);
    let mut seen = std::collections::HashSet::new();
    let mut attempts = 0usize;
    while points.len() < p.n {
        attempts += 1;
        if attempts > 10_000 * (p.n + 1) {
            return Err(Error::GenerationFailed(format!("placed {} of {} points", points.len(), p.n)));
        }
        let q = random_point(&mut rng, lo, hi);
        if !domain.contains(q) || !seen.insert((q.x.to_bits(), q.y.to_bits())) {
            continue;
        }
        let w = match p.weights {
            WeightDist::Zero => 0.0,
            WeightDist::Uniform01 => snap(rng.random_range(0.0..1.0)),
            WeightDist::Exp => snap(exp.sample(&mut rng)),
        };
        points.push(PointRecord { x: q.x, y: q.y, w });
    }
    let coords = |s: &SimplePolygon| s.vertices().iter().map(|v| [v.x, v.y]).collect::<Vec<_>>();
    Ok(InstanceFile {
        outer: coords(&outer),
        holes: holes.iter().map(coords).collect(),
        points,
        seed: Some(p.seed),
        generator: Some(GeneratorInfo {
            name: "2opt-star".into(),
            polygon_vertices: p.polygon_vertices,
            holes: p.holes,
            weight_dist: p.weights.name().into(),
        }),
    })
}
