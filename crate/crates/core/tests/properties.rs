mod common;

use std::collections::HashMap;

use proptest::prelude::*;

use common::instance;
use geospanner_core::generate::WeightDist;
use geospanner_core::geodesic::ProjectedPoint;
use geospanner_core::geometry::balanced_cut;
use geospanner_core::spanner::{core_set, include_edges_using_sspd, EdgeSet, SpannerEdge};
use geospanner_core::sspd::{build_sspd, verify_sspd, SspdInput};
use geospanner_core::{Point2, SpannerGraph, SplitSegment};

fn sspd_input(params: &[(f64, f64)], s: f64) -> SspdInput {
    let segment = SplitSegment::new(Point2::new(-3.0, 1.0), Point2::new(17.0, 6.0));
    let points = params
        .iter()
        .enumerate()
        .map(|(id, &(t, w))| ProjectedPoint {
            source_id: id * 3 + 1,
            position: segment.point_at(t),
            param: t,
            distance: w,
            augmented_weight: w,
        })
        .collect();
    SspdInput { segment, points, s }
}

fn params() -> impl Strategy<Value = Vec<(f64, f64)>> {
    // Rounding to a coarse grid produces many coincident projections.
    prop::collection::vec((0.0..=1.0f64, 0.0..5.0f64), 0..120).prop_flat_map(|v| (Just(v), any::<bool>())).prop_map(
        |(v, coarse)| {
            if coarse {
                v.into_iter().map(|(t, w)| ((t * 8.0).round() / 8.0, w)).collect()
            } else {
                v
            }
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn sspd_covers_and_separates(pts in params(), s in 1.0..24.0f64) {
        let input = sspd_input(&pts, s);
        let dec = build_sspd(&input);
        let report = verify_sspd(&input, &dec).unwrap();
        prop_assert!(report.covered);
        prop_assert!(report.separated);
        let weight: usize = dec.pairs.iter().map(|p| p.a.len() + p.b.len()).sum();
        prop_assert_eq!(weight, dec.weight);
        for pair in &dec.pairs {
            prop_assert!(pair.radius_a <= pair.radius_b);
            prop_assert!(pair.gap >= s * pair.radius_a - 1e-9 * (1.0 + pair.gap));
        }
    }

    #[test]
    fn included_edges_respect_per_pair_bound(pts in params(), k in 0usize..4) {
        let input = sspd_input(&pts, 8.0);
        let dec = build_sspd(&input);
        let augmented: HashMap<usize, f64> = input.points.iter().map(|p| (p.source_id, p.augmented_weight)).collect();
        let mut all = EdgeSet::new();
        for pair in &dec.pairs {
            let single = geospanner_core::sspd::SspdDecomposition { pairs: vec![pair.clone()], weight: pair.a.len() + pair.b.len() };
            let mut edges = EdgeSet::new();
            include_edges_using_sspd(&input, &single, k, &mut edges).unwrap();
            let (a, b) = (pair.a.len(), pair.b.len());
            let bound = if a < k + 1 { a * b } else { (k + 1) * (a + b) };
            prop_assert!(edges.len() <= bound);
            if a > k {
                let core = core_set(pair, k, &augmented).unwrap();
                prop_assert_eq!(core.ids.len(), k + 1);
                let worst_core = core.ids.iter().map(|id| augmented[id]).fold(f64::MIN, f64::max);
                for id in pair.a.iter().filter(|id| !core.ids.contains(id)) {
                    prop_assert!(augmented[id] >= worst_core);
                }
            }
            all.extend(edges);
        }
        let mut together = EdgeSet::new();
        include_edges_using_sspd(&input, &dec, k, &mut together).unwrap();
        prop_assert_eq!(together, all);
    }

    #[test]
    fn graph_edges_are_normalised(raw in prop::collection::vec((0usize..12, 0usize..12, 0.1..10.0f64), 0..60)) {
        let edges = raw.iter().filter(|e| e.0 != e.1).map(|&(u, v, length)| SpannerEdge { u, v, length });
        let mut g = SpannerGraph::from_edges(12, edges).unwrap();
        for e in g.edges() {
            prop_assert!(e.u < e.v);
            prop_assert!(g.contains(e.v, e.u));
        }
        let mut keys: Vec<_> = g.edges().iter().map(|e| (e.u, e.v)).collect();
        let before = keys.len();
        keys.dedup();
        prop_assert_eq!(keys.len(), before);
        if let Some(&(u, v)) = keys.first() {
            prop_assert!(g.remove_edge(v, u));
            prop_assert!(!g.contains(u, v));
            prop_assert_eq!(g.edge_count(), before - 1);
        }
    }

    #[test]
    fn cuts_partition_and_balance(seed in 0u64..5000, n in 2usize..50, vertices in 4usize..24) {
        let inst = instance(n, 0, vertices, WeightDist::Zero, seed);
        let poly = inst.domain.outer();
        let cut = balanced_cut(poly, &inst.points).unwrap();
        let mut ids: Vec<usize> = cut.left_points.iter().chain(&cut.right_points).copied().collect();
        ids.sort_unstable();
        prop_assert_eq!(ids, (0..n).collect::<Vec<_>>());
        let limit = (2 * n).div_ceil(3);
        prop_assert!(cut.left_points.len() <= limit && cut.right_points.len() <= limit);
        prop_assert!(cut.left_polygon.is_simple() && cut.right_polygon.is_simple());
        let area = cut.left_polygon.area() + cut.right_polygon.area();
        prop_assert!((area - poly.area()).abs() <= 1e-9 * poly.area());
    }
}
