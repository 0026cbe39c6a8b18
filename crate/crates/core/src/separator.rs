//! Vertex-weighted planar separators.
//!
//! Graphs up to [`EXHAUSTIVE_LIMIT`] vertices are solved by exhaustive search
//! for a smallest balanced separator. Larger graphs use BFS levels and
//! tree-path cycles in the style of Lipton and Tarjan, keeping the smallest
//! valid candidate and pruning redundant vertices from it.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub const EXHAUSTIVE_LIMIT: usize = 12;

/// Simple undirected graph with a combinatorial embedding: each adjacency
/// list is the clockwise or counterclockwise rotation around its vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanarGraph {
    adj: Vec<Vec<usize>>,
    weights: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparatorPartition {
    pub p: Vec<usize>,
    pub q: Vec<usize>,
    pub r: Vec<usize>,
}

/// Upper bound on `|R|` guaranteed for a graph with `n` vertices.
pub fn separator_bound(n: usize) -> f64 {
    4.0 * (n as f64).sqrt()
}

impl PlanarGraph {
    /// Checks symmetry and simplicity, then Euler's formula on the faces of
    /// the rotation system.
    pub fn new(adj: Vec<Vec<usize>>, weights: Vec<u64>) -> Result<Self> {
        let n = adj.len();
        if weights.len() != n {
            return Err(Error::InvalidParameter(format!("{} weights for {n} vertices", weights.len())));
        }
        for (u, list) in adj.iter().enumerate() {
            let mut seen = list.clone();
            seen.sort_unstable();
            if seen.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::NotPlanar(format!("vertex {u} has parallel edges")));
            }
            for &v in list {
                if v >= n {
                    return Err(Error::UnknownId(v));
                }
                if v == u {
                    return Err(Error::NotPlanar(format!("self-loop at {u}")));
                }
                if !adj[v].contains(&u) {
                    return Err(Error::NotPlanar(format!("edge {u}-{v} is not symmetric")));
                }
            }
        }
        let g = PlanarGraph { adj, weights };
        g.check_euler()?;
        Ok(g)
    }

    fn check_euler(&self) -> Result<()> {
        let n = self.adj.len();
        let offsets: Vec<usize> = self
            .adj
            .iter()
            .scan(0, |acc, l| {
                let o = *acc;
                *acc += l.len();
                Some(o)
            })
            .collect();
        let darts: usize = self.adj.iter().map(Vec::len).sum();
        let mut used = vec![false; darts];
        let mut faces = 0usize;
        for u in 0..n {
            for i in 0..self.adj[u].len() {
                if used[offsets[u] + i] {
                    continue;
                }
                faces += 1;
                let (mut a, mut j) = (u, i);
                while !used[offsets[a] + j] {
                    used[offsets[a] + j] = true;
                    let b = self.adj[a][j];
                    let back = self.adj[b].iter().position(|&x| x == a).expect("symmetric");
                    j = (back + 1) % self.adj[b].len();
                    a = b;
                }
            }
        }
        let edges = darts / 2;
        let (comps, isolated) = {
            let c = self.components(&vec![false; n]);
            let iso = c.iter().filter(|(_, m)| m.len() == 1).count();
            (c.len(), iso)
        };
        if n + faces + isolated != edges + 2 * comps {
            return Err(Error::NotPlanar(format!(
                "rotation system has genus > 0 (V={n}, E={edges}, F={faces}, C={comps})"
            )));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn weight(&self, v: usize) -> u64 {
        self.weights[v]
    }

    pub fn total_weight(&self) -> u64 {
        self.weights.iter().sum()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, l)| l.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    /// Subgraph on `keep` (in the given order) with inherited rotations.
    pub fn induced(&self, keep: &[usize], weights: Vec<u64>) -> PlanarGraph {
        let mut map = vec![usize::MAX; self.adj.len()];
        for (i, &v) in keep.iter().enumerate() {
            map[v] = i;
        }
        let adj = keep
            .iter()
            .map(|&v| self.adj[v].iter().filter(|&&u| map[u] != usize::MAX).map(|&u| map[u]).collect())
            .collect();
        PlanarGraph { adj, weights }
    }

    /// Components of the graph without `removed`, as (weight, members).
    fn components(&self, removed: &[bool]) -> Vec<(u64, Vec<usize>)> {
        let n = self.adj.len();
        let mut comp = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if removed[s] || comp[s] {
                continue;
            }
            comp[s] = true;
            let mut members = vec![s];
            let mut i = 0;
            while i < members.len() {
                let u = members[i];
                i += 1;
                for &v in &self.adj[u] {
                    if !removed[v] && !comp[v] {
                        comp[v] = true;
                        members.push(v);
                    }
                }
            }
            members.sort_unstable();
            out.push((members.iter().map(|&v| self.weights[v]).sum(), members));
        }
        out
    }

    /// Greedy P/Q assignment of the components left by `removed`, or `None`
    /// when some component is heavier than two thirds.
    fn split(&self, removed: &[bool]) -> Option<(Vec<usize>, Vec<usize>, u64)> {
        let total = self.total_weight();
        let mut comps = self.components(removed);
        if comps.iter().any(|(w, _)| 3 * w > 2 * total) {
            return None;
        }
        comps.sort_by(|a, b| b.0.cmp(&a.0).then(a.1[0].cmp(&b.1[0])));
        let (mut p, mut q) = (Vec::new(), Vec::new());
        let mut wp = 0u64;
        let mut filled = false;
        for (i, (w, members)) in comps.into_iter().enumerate() {
            if i == 0 && 3 * w >= total {
                p.extend(members);
                wp = w;
                filled = true;
            } else if !filled {
                p.extend(members);
                wp += w;
                filled = 3 * wp >= total;
            } else {
                q.extend(members);
            }
        }
        let wq: u64 = q.iter().map(|&v| self.weights[v]).sum();
        if 3 * wp > 2 * total || 3 * wq > 2 * total {
            return None;
        }
        p.sort_unstable();
        q.sort_unstable();
        Some((p, q, wp.max(wq)))
    }
}

type Key = (usize, u64, Vec<usize>);

struct Search<'a> {
    g: &'a PlanarGraph,
    best: Option<(Key, SeparatorPartition)>,
}

impl Search<'_> {
    fn offer(&mut self, r: &[usize]) -> bool {
        let mut removed = vec![false; self.g.len()];
        for &v in r {
            removed[v] = true;
        }
        let Some((p, q, heavy)) = self.g.split(&removed) else {
            return false;
        };
        let mut r = r.to_vec();
        r.sort_unstable();
        r.dedup();
        let key = (r.len(), heavy, r.clone());
        if self.best.as_ref().is_none_or(|(k, _)| key < *k) {
            self.best = Some((key, SeparatorPartition { p, q, r }));
        }
        true
    }

    fn valid(&self, r: &[usize]) -> bool {
        let mut removed = vec![false; self.g.len()];
        for &v in r {
            removed[v] = true;
        }
        self.g.split(&removed).is_some()
    }

    /// Drops separator vertices that are not needed for balance.
    fn prune(&self, mut r: Vec<usize>) -> Vec<usize> {
        r.sort_unstable();
        r.dedup();
        let mut i = 0;
        while i < r.len() {
            let mut trial = r.clone();
            trial.remove(i);
            if self.valid(&trial) {
                r = trial;
            } else {
                i += 1;
            }
        }
        r
    }
}

fn exhaustive(g: &PlanarGraph) -> SeparatorPartition {
    let n = g.len();
    let mut s = Search { g, best: None };
    for mask in 0u32..(1 << n) {
        let r: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        s.offer(&r);
    }
    s.best.expect("R = V is always valid").1
}

fn bfs_levels(g: &PlanarGraph, root: usize) -> (Vec<Vec<usize>>, Vec<usize>, Vec<usize>) {
    let n = g.len();
    let mut level = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut levels: Vec<Vec<usize>> = Vec::new();
    level[root] = 0;
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        if levels.len() <= level[u] {
            levels.push(Vec::new());
        }
        levels[level[u]].push(u);
        for &v in g.neighbors(u) {
            if level[v] == usize::MAX {
                level[v] = level[u] + 1;
                parent[v] = u;
                queue.push_back(v);
            }
        }
    }
    (levels, level, parent)
}

fn level_search(g: &PlanarGraph) -> SeparatorPartition {
    let n = g.len();
    let mut s = Search { g, best: None };
    if s.offer(&[]) {
        return s.best.unwrap().1;
    }
    let mut candidates: Vec<Vec<usize>> = Vec::new();
    for root in 0..n {
        let (levels, level, parent) = bfs_levels(g, root);
        let comp_weight: u64 = levels.iter().flatten().map(|&v| g.weight(v)).sum();
        let t = levels.len();
        let mut acc = 0u64;
        let mut l1 = 0;
        for (i, l) in levels.iter().enumerate() {
            acc += l.iter().map(|&v| g.weight(v)).sum::<u64>();
            if 2 * acc >= comp_weight {
                l1 = i;
                break;
            }
        }
        candidates.push(levels[l1].clone());
        let size = |l: usize| if l < t { levels[l].len() } else { 0 };
        let l0 = (0..=l1).min_by_key(|&l| (size(l) + 2 * (l1 - l), std::cmp::Reverse(l))).unwrap();
        let l2 = (l1 + 1..=t).min_by_key(|&l| (size(l) + 2 * (l - l1 - 1), l)).unwrap();
        let mut base: Vec<usize> = levels[l0].clone();
        if l2 < t {
            base.extend(&levels[l2]);
        }
        candidates.push(base.clone());
        let middle: Vec<usize> = (l0 + 1..l2.min(t)).flat_map(|l| levels[l].iter().copied()).collect();
        let climb = |mut x: usize, out: &mut Vec<usize>| {
            while level[x] > l0 {
                out.push(x);
                x = parent[x];
            }
        };
        for (i, &u) in middle.iter().enumerate() {
            for &v in &middle[i..] {
                let mut r = base.clone();
                climb(u, &mut r);
                climb(v, &mut r);
                candidates.push(r);
            }
        }
    }
    let mut valid: Vec<Vec<usize>> = candidates
        .into_iter()
        .map(|mut r| {
            r.sort_unstable();
            r.dedup();
            r
        })
        .filter(|r| s.valid(r))
        .collect();
    valid.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    valid.dedup();
    for r in valid.into_iter().take(32) {
        let r = s.prune(r);
        s.offer(&r);
    }
    if s.best.is_none() {
        let r = s.prune(greedy(g));
        s.offer(&r);
    }
    s.best.expect("greedy always ends valid").1
}

/// Repeatedly removes the best-connected vertex of the heaviest component.
fn greedy(g: &PlanarGraph) -> Vec<usize> {
    let mut removed = vec![false; g.len()];
    let mut r = Vec::new();
    while g.split(&removed).is_none() {
        let comps = g.components(&removed);
        let (_, heavy) = comps.iter().max_by_key(|(w, m)| (*w, std::cmp::Reverse(m[0]))).unwrap();
        let v = *heavy
            .iter()
            .max_by_key(|&&v| {
                let deg = g.neighbors(v).iter().filter(|&&u| !removed[u]).count();
                (deg, g.weight(v), std::cmp::Reverse(v))
            })
            .unwrap();
        removed[v] = true;
        r.push(v);
    }
    r
}

/// Splits `g` into `P`, `Q` and a separator `R` with no `P`-`Q` edge and
/// `w(P), w(Q) <= 2/3 w(V)`.
pub fn planar_separator(g: &PlanarGraph) -> SeparatorPartition {
    if g.len() <= EXHAUSTIVE_LIMIT {
        exhaustive(g)
    } else {
        level_search(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(r: usize, c: usize) -> PlanarGraph {
        let id = |i: usize, j: usize| i * c + j;
        let mut adj = vec![Vec::new(); r * c];
        for i in 0..r {
            for j in 0..c {
                // Counterclockwise: east, north, west, south.
                let v = &mut adj[id(i, j)];
                if j + 1 < c {
                    v.push(id(i, j + 1));
                }
                if i + 1 < r {
                    v.push(id(i + 1, j));
                }
                if j > 0 {
                    v.push(id(i, j - 1));
                }
                if i > 0 {
                    v.push(id(i - 1, j));
                }
            }
        }
        PlanarGraph::new(adj, vec![1; r * c]).unwrap()
    }

    fn check(g: &PlanarGraph, s: &SeparatorPartition) {
        let mut all: Vec<usize> = s.p.iter().chain(&s.q).chain(&s.r).copied().collect();
        all.sort_unstable();
        assert_eq!(all, (0..g.len()).collect::<Vec<_>>());
        for (u, v) in g.edges() {
            let cross = (s.p.contains(&u) && s.q.contains(&v)) || (s.q.contains(&u) && s.p.contains(&v));
            assert!(!cross, "edge {u}-{v} joins P and Q");
        }
        let w = |set: &[usize]| set.iter().map(|&v| g.weight(v)).sum::<u64>();
        assert!(3 * w(&s.p) <= 2 * g.total_weight());
        assert!(3 * w(&s.q) <= 2 * g.total_weight());
        assert!(s.r.len() as f64 <= separator_bound(g.len()));
    }

    #[test]
    fn path_of_three() {
        let g = PlanarGraph::new(vec![vec![1], vec![0, 2], vec![1]], vec![1, 1, 1]).unwrap();
        let s = planar_separator(&g);
        assert_eq!(s, SeparatorPartition { p: vec![0], q: vec![2], r: vec![1] });
    }

    #[test]
    fn grids() {
        for (r, c) in [(3, 3), (4, 4), (5, 6), (7, 7)] {
            let g = grid(r, c);
            check(&g, &planar_separator(&g));
        }
    }

    #[test]
    fn heavy_vertex_goes_to_separator() {
        let g = PlanarGraph::new(vec![vec![1], vec![0, 2], vec![1]], vec![0, 0, 9]).unwrap();
        let s = planar_separator(&g);
        assert_eq!(s.r, vec![2]);
        check(&g, &s);
    }

    #[test]
    fn k33_rotation_is_rejected() {
        let adj = vec![vec![3, 4, 5], vec![3, 4, 5], vec![3, 4, 5], vec![0, 1, 2], vec![0, 1, 2], vec![0, 1, 2]];
        assert!(matches!(PlanarGraph::new(adj, vec![1; 6]), Err(Error::NotPlanar(_))));
        let k5: Vec<Vec<usize>> = (0..5).map(|u| (0..5).filter(|&v| v != u).collect()).collect();
        assert!(matches!(PlanarGraph::new(k5, vec![1; 5]), Err(Error::NotPlanar(_))));
    }

    #[test]
    fn rejects_asymmetric_lists() {
        assert!(PlanarGraph::new(vec![vec![1], vec![]], vec![1, 1]).is_err());
    }
}
