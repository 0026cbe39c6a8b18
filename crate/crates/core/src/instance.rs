//! Instances and spanners as JSON files.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::exec::Execution;
use crate::geodesic::PolygonalDomain;
use crate::geometry::{Point2, SimplePolygon, WeightedPoint, COORD_BUDGET};
use crate::spanner::{
    build_vftswp_polygonal_domain_with, build_vftswp_simple_polygon_with, SpannerEdge, SpannerGraph, SpannerParams,
};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PointRecord {
    pub x: f64,
    pub y: f64,
    pub w: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorInfo {
    pub name: String,
    pub polygon_vertices: usize,
    pub holes: usize,
    pub weight_dist: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub outer: Vec<[f64; 2]>,
    pub holes: Vec<Vec<[f64; 2]>>,
    pub points: Vec<PointRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<GeneratorInfo>,
}

/// A validated domain with its points, coordinates divided by `scale`.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub domain: PolygonalDomain,
    pub points: Vec<WeightedPoint>,
    /// Factor restoring file units: `file = stored * scale`. A power of two.
    pub scale: f64,
}

fn ring(coords: &[[f64; 2]], scale: f64, what: &str) -> Result<SimplePolygon> {
    let pts = coords.iter().map(|c| Point2::new(c[0] / scale, c[1] / scale)).collect();
    SimplePolygon::new(pts).map_err(|e| Error::InvalidInstance(format!("{what}: {e}")))
}

impl InstanceFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidInstance(format!("line {}: {e}", e.line())))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("instance serializes")
    }

    /// SHA-256 of the compact serialization, hex encoded.
    pub fn hash(&self) -> String {
        let bytes = serde_json::to_vec(self).expect("instance serializes");
        hex::encode(Sha256::digest(bytes))
    }

    /// Validates the geometry and normalises coordinates whose magnitude
    /// exceeds the geometry budget.
    pub fn to_instance(&self) -> Result<Instance> {
        let all = self.outer.iter().chain(self.holes.iter().flatten()).flatten();
        let all = all.chain(self.points.iter().flat_map(|p| [&p.x, &p.y]));
        let mut biggest = 0.0f64;
        for &c in all {
            if !c.is_finite() {
                return Err(Error::InvalidInstance("non-finite coordinate".into()));
            }
            biggest = biggest.max(c.abs());
        }
        let mut scale = 1.0;
        while biggest / scale > COORD_BUDGET {
            scale *= 2.0;
        }
        let outer = ring(&self.outer, scale, "outer boundary")?;
        let holes = self
            .holes
            .iter()
            .enumerate()
            .map(|(i, h)| ring(h, scale, &format!("hole {i}")))
            .collect::<Result<Vec<_>>>()?;
        let domain = PolygonalDomain::new(outer, holes).map_err(|e| Error::InvalidInstance(e.to_string()))?;
        let mut points = Vec::with_capacity(self.points.len());
        for (i, p) in self.points.iter().enumerate() {
            if !(p.w.is_finite() && p.w >= 0.0) {
                return Err(Error::InvalidInstance(format!(
                    "point {i}: weight {} is not a finite non-negative number",
                    p.w
                )));
            }
            let pos = Point2::new(p.x / scale, p.y / scale);
            if !domain.contains(pos) {
                return Err(Error::InvalidInstance(format!("point {i} ({}, {}) is outside the free space", p.x, p.y)));
            }
            points.push(WeightedPoint::new(i, pos, p.w / scale));
        }
        let mut order: Vec<usize> = (0..points.len()).collect();
        order.sort_by(|&a, &b| points[a].pos.lex_cmp(&points[b].pos));
        if let Some(w) = order.windows(2).find(|w| points[w[0]].pos == points[w[1]].pos) {
            return Err(Error::InvalidInstance(format!("points {} and {} coincide", w[0].min(w[1]), w[0].max(w[1]))));
        }
        Ok(Instance { domain, points, scale })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BuildMode {
    Simple,
    Domain,
}

impl BuildMode {
    /// Simple for hole-free domains, domain otherwise.
    pub fn auto(instance: &Instance) -> BuildMode {
        if instance.domain.hole_count() == 0 {
            BuildMode::Simple
        } else {
            BuildMode::Domain
        }
    }

    /// The stretch guaranteed by the construction.
    pub fn target(self, epsilon: f64) -> f64 {
        match self {
            BuildMode::Simple => 10f64.sqrt() + epsilon,
            BuildMode::Domain => 6.0 + epsilon,
        }
    }
}

impl Instance {
    pub fn weights(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.weight).collect()
    }

    pub fn build(&self, params: SpannerParams, mode: BuildMode, exec: Execution) -> Result<SpannerGraph> {
        match mode {
            BuildMode::Simple if self.domain.hole_count() > 0 => {
                Err(Error::InvalidParameter("simple mode needs an instance without holes".into()))
            }
            BuildMode::Simple => build_vftswp_simple_polygon_with(self.domain.outer(), &self.points, params, exec),
            BuildMode::Domain => build_vftswp_polygonal_domain_with(&self.domain, &self.points, params, exec),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub instance_hash: String,
    pub tool_version: String,
    pub seed: Option<u64>,
}

/// Edge lengths are in file units.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpannerFile {
    pub n: usize,
    pub k: usize,
    pub epsilon: f64,
    pub mode: BuildMode,
    pub edges: Vec<(usize, usize, f64)>,
    pub provenance: Provenance,
}

impl SpannerFile {
    pub fn new(
        g: &SpannerGraph,
        instance: &Instance,
        params: SpannerParams,
        mode: BuildMode,
        file: &InstanceFile,
    ) -> Self {
        SpannerFile {
            n: g.n(),
            k: params.k,
            epsilon: params.epsilon,
            mode,
            edges: g.edges().iter().map(|e| (e.u, e.v, e.length * instance.scale)).collect(),
            provenance: Provenance {
                instance_hash: file.hash(),
                tool_version: env!("CARGO_PKG_VERSION").to_string(),
                seed: file.seed,
            },
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidInstance(format!("line {}: {e}", e.line())))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spanner serializes")
    }

    pub fn params(&self) -> Result<SpannerParams> {
        SpannerParams::new(self.k, self.epsilon)
    }

    /// The graph in the instance's normalised units.
    pub fn to_graph(&self, instance: &Instance) -> Result<SpannerGraph> {
        if self.n != instance.points.len() {
            return Err(Error::InvalidInstance(format!(
                "spanner has {} points, instance has {}",
                self.n,
                instance.points.len()
            )));
        }
        let edges = self.edges.iter().map(|&(u, v, l)| SpannerEdge { u, v, length: l / instance.scale });
        SpannerGraph::from_edges(self.n, edges)
    }
}
