use std::collections::{BTreeSet, HashMap};

use crate::sspd::{SspdDecomposition, SspdInput, SspdPair};
use crate::{Error, Result};

/// Undirected id pairs `(u, v)` with `u < v`.
pub type EdgeSet = BTreeSet<(usize, usize)>;

/// The `k + 1` members of a pair's `A` side with the smallest augmented
/// weights, ties broken by id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoreSet {
    pub ids: Vec<usize>,
}

pub fn core_set(pair: &SspdPair, k: usize, augmented: &HashMap<usize, f64>) -> Result<CoreSet> {
    let mut a: Vec<(f64, usize)> = pair
        .a
        .iter()
        .map(|&id| augmented.get(&id).map(|&w| (w, id)).ok_or(Error::UnknownId(id)))
        .collect::<Result<_>>()?;
    a.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)));
    a.truncate(k + 1);
    Ok(CoreSet { ids: a.into_iter().map(|(_, id)| id).collect() })
}

fn add(edges: &mut EdgeSet, u: usize, v: usize) {
    if u != v {
        edges.insert((u.min(v), u.max(v)));
    }
}

/// For every pair: all `A x B` edges when `|A| <= k`, otherwise edges from
/// each point of `A ∪ B` to the core set of `A`.
pub fn include_edges_using_sspd(
    input: &SspdInput,
    dec: &SspdDecomposition,
    k: usize,
    edges: &mut EdgeSet,
) -> Result<()> {
    let augmented: HashMap<usize, f64> = input.points.iter().map(|p| (p.source_id, p.augmented_weight)).collect();
    for pair in &dec.pairs {
        if let Some(&id) = pair.b.iter().find(|id| !augmented.contains_key(id)) {
            return Err(Error::UnknownId(id));
        }
        if pair.a.len() < k + 1 {
            for &p in &pair.a {
                if !augmented.contains_key(&p) {
                    return Err(Error::UnknownId(p));
                }
                for &q in &pair.b {
                    add(edges, p, q);
                }
            }
        } else {
            let core = core_set(pair, k, &augmented)?;
            for &c in &core.ids {
                for &p in pair.a.iter().chain(&pair.b) {
                    add(edges, p, c);
                }
            }
        }
    }
    Ok(())
}
