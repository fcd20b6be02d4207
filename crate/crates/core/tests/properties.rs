use aeq_core::audit::{audit, AuditOptions};
use aeq_core::constructions::{double_simplex, generalized_spindle};
use aeq_core::geometry::{
    build_unit_distance_graph, complement_triangle_free, gram_matrix, is_almost_equidistant, non_neighbour_cliques,
    PointSet, TolerancePolicy,
};
use aeq_core::rank::lemma0_bound;
use nalgebra::DMatrix;
use proptest::prelude::*;
use proptest::sample::subsequence;

fn tol() -> TolerancePolicy {
    TolerancePolicy::default()
}

/// Distinct points of the integer grid `{0..4}²`, so unit pairs are common.
fn grid_points() -> impl Strategy<Value = PointSet> {
    let cells: Vec<(i32, i32)> = (0..4).flat_map(|x| (0..4).map(move |y| (x, y))).collect();
    subsequence(cells, 0..=9).prop_shuffle().prop_map(|cells| {
        let pts = cells.iter().map(|&(x, y)| vec![x as f64, y as f64]).collect();
        PointSet::new(2, pts).unwrap()
    })
}

fn cloud(dim: usize) -> impl Strategy<Value = PointSet> {
    proptest::collection::vec(proptest::collection::vec(-3.0f64..3.0, dim), 1..12)
        .prop_map(move |pts| PointSet::new(dim, pts).unwrap())
}

/// A random subset of a spindle or double simplex, which stays almost-equidistant.
fn constructed_subset() -> impl Strategy<Value = PointSet> {
    (2usize..=6, any::<bool>())
        .prop_flat_map(|(d, spindle)| {
            let ps = if spindle {
                generalized_spindle(d)
            } else {
                double_simplex(d)
            }
            .unwrap();
            let n = ps.len();
            (Just(ps), subsequence((0..n).collect::<Vec<_>>(), 1..=n))
        })
        .prop_map(|(ps, keep)| {
            let pts = keep.iter().map(|&i| ps.point(i).to_vec()).collect();
            PointSet::new(ps.dim(), pts).unwrap()
        })
}

proptest! {
    #[test]
    fn both_routes_agree_on_grid_sets(ps in grid_points()) {
        let g = build_unit_distance_graph(&ps, &tol()).unwrap();
        prop_assert_eq!(is_almost_equidistant(&ps, &tol()), complement_triangle_free(&g));
    }

    #[test]
    fn both_routes_agree_on_constructed_subsets(ps in constructed_subset()) {
        let g = build_unit_distance_graph(&ps, &tol()).unwrap();
        let v = is_almost_equidistant(&ps, &tol());
        prop_assert!(v.holds());
        prop_assert_eq!(v, complement_triangle_free(&g));
        prop_assert!(non_neighbour_cliques(&g).iter().all(|c| c.passes()));
    }

    #[test]
    fn gram_reconstructs_squared_distances(ps in cloud(3)) {
        let a = gram_matrix(&ps);
        for i in 0..ps.len() {
            for j in 0..ps.len() {
                let d2 = ps.distance(i, j).powi(2);
                let r = a[(i, i)] + a[(j, j)] - 2.0 * a[(i, j)];
                prop_assert!((d2 - r).abs() <= 1e-12 * (1.0 + a.amax()));
            }
        }
    }

    #[test]
    fn translation_keeps_unit_edges(ps in grid_points(), dx in -100.0f64..100.0, dy in -100.0f64..100.0) {
        let moved = ps.translated(&[dx, dy]).unwrap();
        let a = build_unit_distance_graph(&ps, &tol()).unwrap();
        let b = build_unit_distance_graph(&moved, &tol()).unwrap();
        prop_assert_eq!(a.edges(), b.edges());
    }

    #[test]
    fn audit_passes_on_almost_equidistant_subsets(ps in constructed_subset()) {
        let r = audit(&ps, &tol(), &AuditOptions::default()).unwrap();
        prop_assert!(r.all_passed(), "{:?}", r.failures());
        let mut covered: Vec<usize> = r.n_indices.iter().chain(&r.complement).copied().collect();
        covered.sort_unstable();
        prop_assert_eq!(covered, (0..ps.len()).collect::<Vec<_>>());
    }

    #[test]
    fn rank_bound_is_scale_free(entries in proptest::collection::vec(-5.0f64..5.0, 16), t in 0.01f64..100.0) {
        let m = DMatrix::from_vec(4, 4, entries);
        let a = &m + m.transpose();
        prop_assume!(a.amax() > 1e-3);
        let b = lemma0_bound(&a).unwrap();
        let bt = lemma0_bound(&(&a * t)).unwrap();
        prop_assert!((b - bt).abs() <= 1e-12 * b.max(1.0));
        prop_assert!(b <= 4.0 + 1e-12);
    }
}
