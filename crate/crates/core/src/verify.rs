//! Brute-force certification of the fault-tolerant stretch property.
//!
//! Path costs in the spanner charge `w(u) + d_pi(u, v) + w(v)` per edge, so a
//! direct edge costs exactly `d_w(u, v)`.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::exec::Execution;
use crate::generate::{generate_instance, GenParams};
use crate::geodesic::{combine_weights, GeodesicOracle};
use crate::geometry::WeightedPoint;
use crate::instance::BuildMode;
use crate::spanner::{SpannerGraph, SpannerParams};
use crate::{Error, Result};

/// Largest number of (fault set, pair) checks allowed in exhaustive mode.
pub const CHECK_BUDGET: u128 = 100_000_000;

/// Relative slack applied to every stretch and lower-bound comparison.
pub const REL_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FaultSet {
    pub removed: Vec<usize>,
}

impl FaultSet {
    pub fn new(mut removed: Vec<usize>) -> Self {
        removed.sort_unstable();
        removed.dedup();
        FaultSet { removed }
    }

    pub fn none() -> Self {
        FaultSet { removed: Vec::new() }
    }

    pub fn contains(&self, v: usize) -> bool {
        self.removed.binary_search(&v).is_ok()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Witness {
    pub faults: Vec<usize>,
    pub p: usize,
    pub q: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StretchReport {
    pub max_stretch: f64,
    pub witness: Option<Witness>,
    pub pairs_checked: u64,
    pub fault_sets_checked: u64,
    pub exhaustive: bool,
    pub unreachable: u64,
    pub unreachable_witness: Option<Witness>,
    pub lower_bound_violations: u64,
}

impl StretchReport {
    /// Every checked pair is connected, no path undercuts `d_w`, and the
    /// stretch stays within `target` up to [`REL_SLACK`].
    pub fn passes(&self, target: f64) -> bool {
        self.unreachable == 0 && self.lower_bound_violations == 0 && self.max_stretch <= target * (1.0 + REL_SLACK)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Budget {
    Exhaustive,
    Sampled { count: usize, seed: u64 },
}

/// `d_w` between all point pairs, row-major. Each pair is evaluated once,
/// so the matrix is exactly symmetric.
pub fn metric_matrix(oracle: &GeodesicOracle, pts: &[WeightedPoint], exec: Execution) -> Result<Vec<f64>> {
    let n = pts.len();
    let ctx = exec.map(pts, |p| oracle.context(p.pos)).into_iter().collect::<Result<Vec<_>>>()?;
    let upper = exec.map_range(n, |i| {
        (i + 1..n)
            .map(|j| combine_weights(pts[i].weight, oracle.distance_between(&ctx[i], &ctx[j]), pts[j].weight))
            .collect::<Vec<f64>>()
    });
    let mut out = vec![0.0; n * n];
    for (i, row) in upper.into_iter().enumerate() {
        for (j, d) in (i + 1..n).zip(row) {
            out[i * n + j] = d;
            out[j * n + i] = d;
        }
    }
    Ok(out)
}

fn weighted_adjacency(g: &SpannerGraph, weights: &[f64]) -> Vec<Vec<(usize, f64)>> {
    let mut adj = vec![Vec::new(); g.n()];
    for e in g.edges() {
        let c = combine_weights(weights[e.u], e.length, weights[e.v]);
        adj[e.u].push((e.v, c));
        adj[e.v].push((e.u, c));
    }
    adj
}

fn dijkstra(adj: &[Vec<(usize, f64)>], faults: &FaultSet, src: usize) -> Vec<f64> {
    let mut dist = vec![f64::INFINITY; adj.len()];
    let mut heap = BinaryHeap::new();
    dist[src] = 0.0;
    heap.push(Reverse((Ordered(0.0), src)));
    while let Some(Reverse((Ordered(d), u))) = heap.pop() {
        if d > dist[u] {
            continue;
        }
        for &(v, c) in &adj[u] {
            if faults.contains(v) {
                continue;
            }
            let nd = d + c;
            if nd < dist[v] {
                dist[v] = nd;
                heap.push(Reverse((Ordered(nd), v)));
            }
        }
    }
    dist
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Ordered(f64);

impl Eq for Ordered {}

impl PartialOrd for Ordered {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ordered {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.total_cmp(&other.0)
    }
}

/// Cheapest path cost from `p` to `q` avoiding `faults`; `None` when
/// disconnected.
pub fn graph_distance(g: &SpannerGraph, faults: &FaultSet, p: usize, q: usize, weights: &[f64]) -> Result<Option<f64>> {
    for v in [p, q] {
        if v >= g.n() {
            return Err(Error::UnknownId(v));
        }
        if faults.contains(v) {
            return Err(Error::FaultedEndpoint(v));
        }
    }
    let d = dijkstra(&weighted_adjacency(g, weights), faults, p)[q];
    Ok(d.is_finite().then_some(d))
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
}

/// Checks performed by exhaustive certification: `sum_{j<=k} C(n, j) * n^2`.
pub fn exhaustive_checks(n: usize, k: usize) -> u128 {
    let n = n as u128;
    (0..=k as u128).map(|j| binomial(n, j)).sum::<u128>() * n * n
}

fn all_fault_sets(n: usize, k: usize) -> Vec<FaultSet> {
    let mut out = vec![FaultSet::none()];
    for size in 1..=k.min(n) {
        let mut c: Vec<usize> = (0..size).collect();
        loop {
            out.push(FaultSet { removed: c.clone() });
            let Some(i) = (0..size).rev().find(|&i| c[i] < n - size + i) else {
                break;
            };
            c[i] += 1;
            for j in i + 1..size {
                c[j] = c[j - 1] + 1;
            }
        }
    }
    out
}

fn sampled_fault_sets(n: usize, k: usize, count: usize, seed: u64) -> Vec<FaultSet> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = vec![FaultSet::none()];
    let size = k.min(n);
    for _ in 0..count {
        out.push(FaultSet::new(sample(&mut rng, n, size).into_vec()));
    }
    out
}

#[derive(Debug, Clone, Default)]
struct Partial {
    max: Option<(f64, Witness)>,
    pairs: u64,
    unreachable: u64,
    unreachable_witness: Option<Witness>,
    below: u64,
}

impl Partial {
    fn merge(mut self, o: Partial) -> Partial {
        self.max = match (self.max, o.max) {
            (Some(a), Some(b)) => {
                if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) {
                    Some(b)
                } else {
                    Some(a)
                }
            }
            (a, b) => a.or(b),
        };
        self.pairs += o.pairs;
        self.unreachable += o.unreachable;
        self.unreachable_witness = match (self.unreachable_witness, o.unreachable_witness) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        self.below += o.below;
        self
    }
}

fn check_fault_set(adj: &[Vec<(usize, f64)>], metric: &[f64], faults: &FaultSet) -> Partial {
    let n = adj.len();
    let mut part = Partial::default();
    for p in 0..n {
        if faults.contains(p) {
            continue;
        }
        let dist = dijkstra(adj, faults, p);
        for q in p + 1..n {
            if faults.contains(q) {
                continue;
            }
            part.pairs += 1;
            let w = Witness { faults: faults.removed.clone(), p, q };
            let dg = dist[q];
            let dw = metric[p * n + q];
            if !dg.is_finite() {
                part.unreachable += 1;
                if part.unreachable_witness.is_none() {
                    part.unreachable_witness = Some(w);
                }
                continue;
            }
            if dg < dw * (1.0 - REL_SLACK) {
                part.below += 1;
            }
            if dw > 0.0 {
                let s = dg / dw;
                if part.max.as_ref().is_none_or(|(m, _)| s > *m) {
                    part.max = Some((s, w));
                }
            }
        }
    }
    part
}

/// Maximum of `d_{G - F}(p, q) / d_w(p, q)` over the requested fault sets
/// `F` and all pairs outside `F`. `metric` is the row-major `d_w` matrix.
pub fn certify_stretch(
    g: &SpannerGraph,
    weights: &[f64],
    metric: &[f64],
    k: usize,
    budget: Budget,
    exec: Execution,
) -> Result<StretchReport> {
    let n = g.n();
    if weights.len() != n || metric.len() != n * n {
        return Err(Error::InvalidParameter("weights or metric do not match the graph".into()));
    }
    let (sets, exhaustive) = match budget {
        Budget::Exhaustive => {
            let checks = exhaustive_checks(n, k);
            if checks > CHECK_BUDGET {
                return Err(Error::BudgetTooLarge { checks, budget: CHECK_BUDGET });
            }
            (all_fault_sets(n, k), true)
        }
        Budget::Sampled { count, seed } => (sampled_fault_sets(n, k, count, seed), false),
    };
    let adj = weighted_adjacency(g, weights);
    let parts = exec.map(&sets, |f| check_fault_set(&adj, metric, f));
    let total = parts.into_iter().fold(Partial::default(), Partial::merge);
    let (max_stretch, witness) = match total.max {
        Some((s, w)) => (s, Some(w)),
        None => (1.0, None),
    };
    Ok(StretchReport {
        max_stretch,
        witness,
        pairs_checked: total.pairs,
        fault_sets_checked: sets.len() as u64,
        exhaustive,
        unreachable: total.unreachable,
        unreachable_witness: total.unreachable_witness,
        lower_bound_violations: total.below,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingRow {
    pub n: usize,
    pub holes: usize,
    pub k: usize,
    pub edges: usize,
    /// `|E| / (k n lg^2 n)`, with `k` read as 1 when it is 0.
    pub ratio: f64,
    /// `ratio / sqrt(h + 1)`.
    pub ratio_holes: f64,
}

/// Edge counts for one generator family at several sizes. The polygon and
/// holes depend only on the seed, so rows differ only in their points.
pub fn size_scaling_report(
    family: GenParams,
    n_list: &[usize],
    k: usize,
    epsilon: f64,
    exec: Execution,
) -> Result<Vec<ScalingRow>> {
    let params = SpannerParams::new(k, epsilon)?;
    n_list
        .iter()
        .map(|&n| {
            let inst = generate_instance(&GenParams { n, ..family })?.to_instance()?;
            let mode = BuildMode::auto(&inst);
            let edges = inst.build(params, mode, exec)?.edge_count();
            let lg = if n > 1 { (n as f64).log2() } else { 0.0 };
            let denom = k.max(1) as f64 * n as f64 * lg * lg;
            let ratio = if denom > 0.0 { edges as f64 / denom } else { 0.0 };
            Ok(ScalingRow {
                n,
                holes: family.holes,
                k,
                edges,
                ratio,
                ratio_holes: ratio / ((family.holes + 1) as f64).sqrt(),
            })
        })
        .collect()
}
