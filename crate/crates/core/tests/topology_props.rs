mod support;

use std::collections::HashSet;

use hotopo::topology::{
    classify_critical_points, contour_tree, filter_pairs, persistence_pairs, segmentation, simplify, CriticalType,
    PairKind, PersistencePair,
};
use proptest::prelude::*;
use support::{brute_force_pairs, grid_field, is_edge_connected};

/// Values with frequent exact ties, to exercise the index tie-break.
fn tied_values(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec((0u8..12).prop_map(f64::from), n)
}

fn real_values(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1.0f64..1.0, n)
}

fn values(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop_oneof![tied_values(n), real_values(n)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn union_find_matches_brute_force(vals in values(64)) {
        let tf = grid_field(8, 8, vals);
        let pairs = persistence_pairs(&tf);
        let mut fast: Vec<_> = pairs.iter().filter(|p| p.kind == PairKind::MinSaddle)
            .map(|p| (p.birth.vertex, p.death.vertex)).collect();
        let mut slow = brute_force_pairs(&tf, true);
        fast.sort_unstable();
        slow.sort_unstable();
        prop_assert_eq!(fast, slow);
        let mut fast: Vec<_> = pairs.iter().filter(|p| p.kind == PairKind::SaddleMax)
            .map(|p| (p.death.vertex, p.birth.vertex)).collect();
        let mut slow = brute_force_pairs(&tf, false);
        fast.sort_unstable();
        slow.sort_unstable();
        prop_assert_eq!(fast, slow);
    }

    #[test]
    fn pairing_is_a_partial_matching(vals in values(100)) {
        let tf = grid_field(10, 10, vals);
        let pairs = persistence_pairs(&tf);
        let cps = classify_critical_points(&tf);
        let minima = cps.iter().filter(|c| c.kind == CriticalType::Minimum).count();
        let maxima = cps.iter().filter(|c| c.kind == CriticalType::Maximum).count();
        let count = |k| pairs.iter().filter(|p| p.kind == k).count();
        prop_assert_eq!(count(PairKind::MinSaddle), minima - 1);
        prop_assert_eq!(count(PairKind::SaddleMax), maxima - 1);
        prop_assert_eq!(count(PairKind::Essential), 1);
        let mut extrema = HashSet::new();
        for p in &pairs {
            prop_assert!(p.persistence >= 0.0);
            prop_assert!(p.birth.value <= p.death.value);
            if !p.is_essential() {
                prop_assert_eq!(p.birth.kind.index(2) + 1, p.death.kind.index(2));
                let ext = if p.kind == PairKind::MinSaddle { p.birth.vertex } else { p.death.vertex };
                prop_assert!(extrema.insert(ext));
            }
        }
        // Saddles pair at most as often as their link multiplicity allows.
        for c in cps.iter().filter(|c| c.kind == CriticalType::Saddle) {
            let joins = pairs.iter().filter(|p| p.kind == PairKind::MinSaddle && p.death.vertex == c.vertex).count();
            let splits = pairs.iter().filter(|p| p.kind == PairKind::SaddleMax && p.birth.vertex == c.vertex).count();
            prop_assert!(joins <= c.join_multiplicity());
            prop_assert!(splits <= c.split_multiplicity());
        }
    }

    #[test]
    fn simplification_bounds(vals in values(1024), eps_frac in 0.0f64..1.0) {
        let tf = grid_field(32, 32, vals.clone());
        let pairs = persistence_pairs(&tf);
        let range = pairs.iter().find(|p| p.is_essential()).unwrap().persistence;
        let eps = eps_frac * range;
        let g = simplify(&tf, eps).unwrap();
        let dev = vals.iter().zip(g.values()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        prop_assert!(dev <= eps, "deviation {} > {}", dev, eps);
        let extrema = |ps: &[PersistencePair]| {
            let mut e: Vec<usize> = ps
                .iter()
                .flat_map(|p| match p.kind {
                    PairKind::MinSaddle => vec![p.birth.vertex],
                    PairKind::SaddleMax => vec![p.death.vertex],
                    PairKind::Essential => vec![p.birth.vertex, p.death.vertex],
                })
                .collect();
            e.sort_unstable();
            e
        };
        prop_assert_eq!(extrema(&filter_pairs(&pairs, eps)), extrema(&persistence_pairs(&g)));
    }

    #[test]
    fn tree_and_segmentation_invariants(vals in values(256)) {
        let tf = grid_field(16, 16, vals);
        let tree = contour_tree(&tf).unwrap();
        let cps = classify_critical_points(&tf);
        let extrema = cps.iter().filter(|c| matches!(c.kind, CriticalType::Minimum | CriticalType::Maximum)).count();
        prop_assert_eq!(tree.num_leaves(), extrema);
        prop_assert_eq!(tree.arcs.len() + 1, tree.nodes.len());
        for node in &tree.nodes {
            let cp = cps.iter().find(|c| c.vertex == node.vertex).unwrap();
            match cp.kind {
                CriticalType::Minimum | CriticalType::Maximum => prop_assert_eq!(node.degree(), 1),
                _ => {
                    let simple = cp.join_multiplicity() + cp.split_multiplicity() == 1;
                    if simple {
                        prop_assert_eq!(node.degree(), 3);
                    }
                }
            }
        }
        let seg = segmentation(&tree, &tf);
        prop_assert_eq!(seg.segments.len(), tree.arcs.len());
        prop_assert!(seg.labels.iter().all(|&l| l < tree.arcs.len()));
        for s in &seg.segments {
            prop_assert!(s.size > 0);
            let members: Vec<usize> = (0..tf.len()).filter(|&v| seg.labels[v] == s.id).collect();
            prop_assert!(is_edge_connected(&tf, &members), "segment {} disconnected", s.id);
        }
    }

    #[test]
    fn order_only_dependence(vals in values(144)) {
        let tf = grid_field(12, 12, vals.clone());
        let warped = grid_field(12, 12, vals.iter().map(|v| v.mul_add(3.0, 0.5).exp()).collect());
        prop_assert_eq!(tf.order(), warped.order());
        prop_assert_eq!(classify_critical_points(&tf).iter().map(|c| (c.vertex, c.kind)).collect::<Vec<_>>(),
            classify_critical_points(&warped).iter().map(|c| (c.vertex, c.kind)).collect::<Vec<_>>());
        let ends = |ps: Vec<hotopo::topology::PersistencePair>| ps.iter().map(|p| (p.birth.vertex, p.death.vertex, p.kind)).collect::<Vec<_>>();
        prop_assert_eq!(ends(persistence_pairs(&tf)), ends(persistence_pairs(&warped)));
        let shape = |t: hotopo::topology::ContourTree| {
            (t.nodes.iter().map(|n| (n.vertex, n.up.clone(), n.down.clone())).collect::<Vec<_>>(),
             t.arcs.iter().map(|a| (a.down, a.up, a.vertices.clone())).collect::<Vec<_>>())
        };
        let (t1, t2) = (contour_tree(&tf).unwrap(), contour_tree(&warped).unwrap());
        prop_assert_eq!(segmentation(&t1, &tf).labels, segmentation(&t2, &warped).labels);
        prop_assert_eq!(shape(t1), shape(t2));
    }
}

#[test]
fn path_profile_example() {
    // [0, 2, 1, 3] on a thin strip: one min-saddle pair of persistence 1.
    let row = [0.0, 2.0, 1.0, 3.0];
    let tf = grid_field(4, 2, (0..8).map(|i| row[i % 4]).collect());
    let pairs = persistence_pairs(&tf);
    let ms: Vec<_> = pairs.iter().filter(|p| p.kind == PairKind::MinSaddle).collect();
    assert_eq!(ms.len(), 1);
    assert_eq!((ms[0].birth.value, ms[0].death.value, ms[0].persistence), (1.0, 2.0, 1.0));
    let ess = pairs.iter().find(|p| p.is_essential()).unwrap();
    assert_eq!(ess.persistence, 3.0);
}
