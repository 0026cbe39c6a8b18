use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::exec::Execution;
use crate::geodesic::GeodesicOracle;
use crate::geometry::WeightedPoint;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpannerParams {
    pub k: usize,
    pub epsilon: f64,
}

impl SpannerParams {
    /// `k = 0` is accepted and yields plain (non fault-tolerant) spanners.
    pub fn new(k: usize, epsilon: f64) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon <= 1.0) {
            return Err(Error::InvalidParameter(format!("epsilon must lie in (0, 1], got {epsilon}")));
        }
        Ok(SpannerParams { k, epsilon })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpannerEdge {
    pub u: usize,
    pub v: usize,
    /// Geodesic length `d_pi(u, v)`; point weights are not included.
    pub length: f64,
}

/// Undirected graph over point ids `0..n`, edges sorted by `(u, v)` with `u < v`.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct SpannerGraph {
    n: usize,
    edges: Vec<SpannerEdge>,
}

impl SpannerGraph {
    pub fn empty(n: usize) -> Self {
        SpannerGraph { n, edges: Vec::new() }
    }

    /// Normalises endpoint order, drops self-loops and keeps the first copy
    /// of duplicated edges.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = SpannerEdge>) -> Result<Self> {
        let mut out: Vec<SpannerEdge> = Vec::new();
        for e in edges {
            let (u, v) = (e.u.min(e.v), e.u.max(e.v));
            if v >= n {
                return Err(Error::UnknownId(v));
            }
            if u != v {
                out.push(SpannerEdge { u, v, length: e.length });
            }
        }
        out.sort_by_key(|e| (e.u, e.v));
        out.dedup_by(|a, b| (a.u, a.v) == (b.u, b.v));
        Ok(SpannerGraph { n, edges: out })
    }

    /// Attaches geodesic lengths to an id-pair set.
    pub(crate) fn measure(
        oracle: &GeodesicOracle,
        pts: &[WeightedPoint],
        pairs: &BTreeSet<(usize, usize)>,
        exec: Execution,
    ) -> Result<Self> {
        let ctx = exec.map(pts, |p| oracle.context(p.pos));
        let ctx = ctx.into_iter().collect::<Result<Vec<_>>>()?;
        let list: Vec<(usize, usize)> = pairs.iter().copied().collect();
        let edges = exec.map(&list, |&(u, v)| SpannerEdge { u, v, length: oracle.distance_between(&ctx[u], &ctx[v]) });
        Ok(SpannerGraph { n: pts.len(), edges })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[SpannerEdge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn contains(&self, u: usize, v: usize) -> bool {
        let key = (u.min(v), u.max(v));
        self.edges.binary_search_by(|e| (e.u, e.v).cmp(&key)).is_ok()
    }

    /// Returns whether the edge was present.
    pub fn remove_edge(&mut self, u: usize, v: usize) -> bool {
        let key = (u.min(v), u.max(v));
        match self.edges.binary_search_by(|e| (e.u, e.v).cmp(&key)) {
            Ok(i) => {
                self.edges.remove(i);
                true
            }
            Err(_) => false,
        }
    }

    pub fn adjacency(&self) -> Vec<Vec<(usize, f64)>> {
        let mut adj = vec![Vec::new(); self.n];
        for e in &self.edges {
            adj[e.u].push((e.v, e.length));
            adj[e.v].push((e.u, e.length));
        }
        adj
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn epsilon_range() {
        assert!(SpannerParams::new(1, 0.0).is_err());
        assert!(SpannerParams::new(1, 1.5).is_err());
        assert!(SpannerParams::new(1, f64::NAN).is_err());
        assert!(SpannerParams::new(0, 1.0).is_ok());
    }

    #[test]
    fn from_edges_normalises() {
        let e = |u, v| SpannerEdge { u, v, length: 1.0 };
        let g = SpannerGraph::from_edges(4, [e(2, 1), e(1, 2), e(3, 3), e(0, 3)]).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert!(g.contains(2, 1) && g.contains(3, 0));
        assert_eq!(SpannerGraph::from_edges(2, [e(0, 2)]), Err(Error::UnknownId(2)));
    }
}
