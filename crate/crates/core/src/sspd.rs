//! Semi-separated pair decompositions of collinear point sets.
//!
//! Inputs are projections onto one segment, so the construction works on
//! the sorted 1-D coordinates directly.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::geodesic::ProjectedPoint;
use crate::geometry::SplitSegment;
use crate::{Error, Result};

#[derive(Debug, Clone)]
pub struct SspdInput {
    pub segment: SplitSegment,
    pub points: Vec<ProjectedPoint>,
    pub s: f64,
}

/// One pair `(A, B)` with `radius_a <= radius_b`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SspdPair {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub radius_a: f64,
    pub radius_b: f64,
    pub gap: f64,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct SspdDecomposition {
    pub pairs: Vec<SspdPair>,
    pub weight: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SspdReport {
    pub covered: bool,
    pub separated: bool,
    pub weight: usize,
}

struct Builder<'a> {
    ids: Vec<usize>,
    coord: Vec<f64>,
    s: f64,
    out: &'a mut Vec<SspdPair>,
}

impl Builder<'_> {
    fn radius(&self, lo: usize, hi: usize) -> f64 {
        0.5 * (self.coord[hi - 1] - self.coord[lo])
    }

    fn within(&mut self, lo: usize, hi: usize) {
        if hi - lo < 2 {
            return;
        }
        let mid = lo + (hi - lo) / 2;
        self.within(lo, mid);
        self.within(mid, hi);
        self.cover((lo, mid), (mid, hi));
    }

    /// Pairs every point of `a` with every point of `b`; `a` lies left of `b`.
    fn cover(&mut self, a: (usize, usize), b: (usize, usize)) {
        let ra = self.radius(a.0, a.1);
        let rb = self.radius(b.0, b.1);
        let gap = self.coord[b.0] - self.coord[a.1 - 1];
        if gap >= self.s * ra.min(rb) {
            self.emit(a, b, ra, rb, gap);
            return;
        }
        let (na, nb) = (a.1 - a.0, b.1 - b.0);
        if ra > rb || (ra == rb && na >= nb) {
            let m = a.0 + na / 2;
            self.cover((a.0, m), b);
            self.cover((m, a.1), b);
        } else {
            let m = b.0 + nb / 2;
            self.cover(a, (b.0, m));
            self.cover(a, (m, b.1));
        }
    }

    fn emit(&mut self, a: (usize, usize), b: (usize, usize), ra: f64, rb: f64, gap: f64) {
        let set = |r: (usize, usize)| {
            let mut v = self.ids[r.0..r.1].to_vec();
            v.sort_unstable();
            v
        };
        let (mut sa, mut sb, mut ra, mut rb) = (set(a), set(b), ra, rb);
        if rb < ra || (ra == rb && sb.len() < sa.len()) {
            std::mem::swap(&mut sa, &mut sb);
            std::mem::swap(&mut ra, &mut rb);
        }
        self.out.push(SspdPair { a: sa, b: sb, radius_a: ra, radius_b: rb, gap });
    }
}

pub fn build_sspd(input: &SspdInput) -> SspdDecomposition {
    let len = input.segment.length();
    let mut order: Vec<&ProjectedPoint> = input.points.iter().collect();
    order.sort_by(|x, y| x.param.total_cmp(&y.param).then(x.source_id.cmp(&y.source_id)));
    let mut pairs = Vec::new();
    let mut b = Builder {
        ids: order.iter().map(|p| p.source_id).collect(),
        coord: order.iter().map(|p| p.param * len).collect(),
        s: input.s,
        out: &mut pairs,
    };
    let n = b.ids.len();
    b.within(0, n);
    let weight = pairs.iter().map(|p| p.a.len() + p.b.len()).sum();
    SspdDecomposition { pairs, weight }
}

/// Brute-force check of coverage and semi-separation.
pub fn verify_sspd(input: &SspdInput, dec: &SspdDecomposition) -> Result<SspdReport> {
    let len = input.segment.length();
    let index: HashMap<usize, usize> = input.points.iter().enumerate().map(|(i, p)| (p.source_id, i)).collect();
    let n = input.points.len();
    let coord: Vec<f64> = input.points.iter().map(|p| p.param * len).collect();
    let mut seen = vec![false; n * n];
    let mut separated = true;
    let mut weight = 0;
    for pair in &dec.pairs {
        let look = |ids: &[usize]| -> Result<Vec<usize>> {
            ids.iter().map(|id| index.get(id).copied().ok_or(Error::UnknownId(*id))).collect()
        };
        let a = look(&pair.a)?;
        let b = look(&pair.b)?;
        weight += a.len() + b.len();
        let span = |v: &[usize]| {
            v.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &i| (lo.min(coord[i]), hi.max(coord[i])))
        };
        let (a_lo, a_hi) = span(&a);
        let (b_lo, b_hi) = span(&b);
        let ra = 0.5 * (a_hi - a_lo);
        let rb = 0.5 * (b_hi - b_lo);
        let gap = (b_lo - a_hi).max(a_lo - b_hi);
        let disjoint = a.iter().all(|x| !b.contains(x));
        if a.is_empty() || b.is_empty() || !disjoint || gap < input.s * ra.min(rb) {
            separated = false;
        }
        for &i in &a {
            for &j in &b {
                seen[i * n + j] = true;
                seen[j * n + i] = true;
            }
        }
    }
    let covered = (0..n).all(|i| (i + 1..n).all(|j| seen[i * n + j]));
    Ok(SspdReport { covered, separated, weight })
}
