use proptest::prelude::*;
use supergrid::clustering::{
    cosine_distance, cosine_similarity, hcluster, kmeans_points, pam, DistanceKind, DistanceMatrix,
    KMeansConfig, Linkage, Membership,
};
use supergrid::data::{
    apply_ordering, order_by_row_mean, Axis, AxisOrder, LabeledMatrix, SortDirection,
};
use supergrid::diagnostics::{jaccard, silhouette};
use supergrid::io::{read_matrix, write_matrix, CsvOptions};
use supergrid::render::{ColorScale, Rgb};
use supergrid::smoothing::{smooth_by_cluster, SmoothStat};

fn matrix(max_r: usize, max_c: usize) -> impl Strategy<Value = LabeledMatrix<f64>> {
    (1..=max_r, 1..=max_c).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::option::weighted(0.85, -1e3f64..1e3), r * c).prop_map(
            move |vals| {
                LabeledMatrix::from_row_major(
                    r,
                    c,
                    vals,
                    (0..r).map(|i| format!("r{i}")).collect(),
                    (0..c).map(|j| format!("c{j}")).collect(),
                )
                .unwrap()
            },
        )
    })
}

fn dense(max_r: usize, max_c: usize) -> impl Strategy<Value = Vec<Vec<f64>>> {
    (2..=max_r, 1..=max_c)
        .prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-10.0f64..10.0, c), r))
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

fn labels(n: usize, k: usize) -> impl Strategy<Value = Membership> {
    prop::collection::vec(0..k, n).prop_map(|l| Membership::from_labels(&l).unwrap())
}

fn sorted_values(m: &LabeledMatrix<f64>) -> Vec<Option<f64>> {
    let mut v = m.values().to_vec();
    v.sort_by(|a, b| match (a, b) {
        (Some(x), Some(y)) => x.total_cmp(y),
        (a, b) => a.is_some().cmp(&b.is_some()),
    });
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn ordering_preserves_values_and_inverts(
        (m, rp, cp) in matrix(8, 8).prop_flat_map(|m| {
            let (r, c) = m.dims();
            (Just(m), permutation(r), permutation(c))
        })
    ) {
        let ro = AxisOrder::new(Axis::Row, rp).unwrap();
        let co = AxisOrder::new(Axis::Column, cp).unwrap();
        let moved = apply_ordering(&m, Some(&ro), Some(&co)).unwrap();
        prop_assert_eq!(sorted_values(&moved), sorted_values(&m));
        prop_assert_eq!(moved.missing_count(), m.missing_count());
        let back = apply_ordering(&moved, Some(&ro.inverse()), Some(&co.inverse())).unwrap();
        prop_assert_eq!(back, m);
    }

    #[test]
    fn row_mean_order_ignores_column_order(
        (rows, cp) in dense(8, 6).prop_flat_map(|rows| {
            let c = rows[0].len();
            (Just(rows), permutation(c))
        }),
        desc in any::<bool>()
    ) {
        // integer-valued cells keep the means exact under any summation order
        let rows: Vec<Vec<f64>> = rows.iter().map(|r| r.iter().map(|v| v.round()).collect()).collect();
        let m = LabeledMatrix::from_dense(rows).unwrap();
        let dir = if desc { SortDirection::Descending } else { SortDirection::Ascending };
        let co = AxisOrder::new(Axis::Column, cp).unwrap();
        let shuffled = apply_ordering(&m, None, Some(&co)).unwrap();
        prop_assert_eq!(order_by_row_mean(&m, dir).unwrap(), order_by_row_mean(&shuffled, dir).unwrap());
    }

    #[test]
    fn csv_round_trip(m in matrix(6, 6)) {
        let mut buf = Vec::new();
        write_matrix(&m, &mut buf).unwrap();
        let back = read_matrix::<f64, _>(buf.as_slice(), &CsvOptions::default()).unwrap().matrix;
        prop_assert_eq!(back, m);
    }

    #[test]
    fn cosine_distance_is_monotone(a in -1.0f64..=1.0, b in -1.0f64..=1.0) {
        let (da, db) = (cosine_distance(a), cosine_distance(b));
        prop_assert!((0.0..=1.0).contains(&da));
        if a < b {
            prop_assert!(da >= db);
        }
    }

    #[test]
    fn cosine_distance_matrix_is_valid(rows in dense(8, 4)) {
        let rows: Vec<Vec<f64>> = rows.into_iter().map(|mut r| { r[0] += 20.0; r }).collect();
        let m = LabeledMatrix::from_dense(rows).unwrap();
        let s = cosine_similarity(&m).unwrap();
        let d = DistanceMatrix::from_rows(&m, DistanceKind::Cosine).unwrap();
        for i in 0..d.n() {
            prop_assert_eq!(d.get(i, i), 0.0);
            prop_assert_eq!(s.get(i, i), 1.0);
            for j in 0..d.n() {
                prop_assert_eq!(d.get(i, j), d.get(j, i));
                prop_assert!((0.0..=1.0).contains(&d.get(i, j)));
            }
        }
    }

    #[test]
    fn kmeans_wcss_never_increases(points in dense(20, 3), k in 1usize..5, seed in any::<u64>()) {
        prop_assume!(k <= points.len());
        let fit = kmeans_points(&points, &KMeansConfig::new(k, seed)).unwrap();
        for w in fit.wcss_trace.windows(2) {
            prop_assert!(w[1] <= w[0] * (1.0 + 1e-12) + 1e-12);
        }
        prop_assert!(fit.membership.is_canonical());
        let again = kmeans_points(&points, &KMeansConfig::new(k, seed)).unwrap();
        prop_assert_eq!(again.membership, fit.membership);
    }

    #[test]
    fn pam_improves_on_build(points in dense(10, 2), k in 1usize..4) {
        prop_assume!(k <= points.len());
        let d = DistanceMatrix::euclidean(&points).unwrap();
        let fit = pam(&d, k).unwrap();
        prop_assert!(fit.cost <= fit.build_cost);
        let m = fit.membership.medoids().unwrap();
        for (c, &med) in m.iter().enumerate() {
            prop_assert_eq!(fit.membership.labels()[med], c);
        }
    }

    #[test]
    fn dendrogram_heights_and_order(points in dense(10, 2), link in 0usize..3) {
        let linkage = [Linkage::Single, Linkage::Complete, Linkage::Average][link];
        let d = DistanceMatrix::euclidean(&points).unwrap();
        let t = hcluster(&d, linkage).unwrap();
        let mut order = t.leaf_order().to_vec();
        order.sort_unstable();
        prop_assert_eq!(order, (0..points.len()).collect::<Vec<_>>());
        let n = t.n_leaves();
        for m in t.merges() {
            for child in [m.left, m.right] {
                prop_assert!(t.height(child) <= m.height + 1e-12 || child < n);
            }
        }
    }

    #[test]
    fn silhouette_ignores_relabeling_and_reordering(
        (points, mem, perm) in dense(10, 2).prop_flat_map(|p| {
            let n = p.len();
            (Just(p), labels(n, 3), permutation(n))
        })
    ) {
        prop_assume!(mem.k() >= 2);
        let d = DistanceMatrix::euclidean(&points).unwrap();
        let base = silhouette(&d, &mem).unwrap();
        let moved_points: Vec<Vec<f64>> = perm.iter().map(|&i| points[i].clone()).collect();
        let moved_labels: Vec<usize> = perm.iter().map(|&i| mem.labels()[i]).collect();
        let d2 = DistanceMatrix::euclidean(&moved_points).unwrap();
        let mem2 = Membership::from_labels(&moved_labels).unwrap();
        let moved = silhouette(&d2, &mem2).unwrap();
        for (p, &i) in perm.iter().enumerate() {
            prop_assert!((moved.sil[p] - base.sil[i]).abs() < 1e-12);
        }
        prop_assert!((moved.overall - base.overall).abs() < 1e-12);
    }

    #[test]
    fn jaccard_symmetric(a in labels(9, 3), b in labels(9, 4)) {
        let shared: Vec<usize> = (0..9).collect();
        let ab = jaccard(&a, &b, &shared).unwrap();
        prop_assert_eq!(ab, jaccard(&b, &a, &shared).unwrap());
        prop_assert!((0.0..=1.0).contains(&ab));
        prop_assert_eq!(jaccard(&a, &a, &shared).unwrap(), 1.0);
    }

    #[test]
    fn smoothing_invariants(
        (m, rm, cm, rp, cp) in matrix(8, 8).prop_flat_map(|m| {
            let (r, c) = m.dims();
            (Just(m), labels(r, 3), labels(c, 3), permutation(r), permutation(c))
        })
    ) {
        let s = smooth_by_cluster(&m, &rm, &cm, SmoothStat::Median).unwrap();
        // medians lie inside the block's range, so inside the raw range
        if let (Some((lo, hi)), Some((slo, shi))) = (m.value_range(), s.value_range()) {
            prop_assert!(slo >= lo && shi <= hi);
        }
        for r in 0..s.k_rows() {
            for c in 0..s.k_cols() {
                let cols = cm.members(c);
                let m = &m;
                let cells: Vec<f64> = rm.members(r).iter()
                    .flat_map(|&i| cols.iter().filter_map(move |&j| m.get(i, j)))
                    .collect();
                match s.block(r, c) {
                    None => prop_assert!(cells.is_empty()),
                    Some(v) => {
                        let lo = cells.iter().copied().fold(f64::INFINITY, f64::min);
                        let hi = cells.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                        prop_assert!(v >= lo && v <= hi);
                    }
                }
            }
        }
        // any reordering that moves memberships along leaves blocks unchanged
        let ro = AxisOrder::new(Axis::Row, rp).unwrap();
        let co = AxisOrder::new(Axis::Column, cp).unwrap();
        let moved = apply_ordering(&m, Some(&ro), Some(&co)).unwrap();
        let rl: Vec<usize> = ro.permutation().iter().map(|&i| rm.labels()[i]).collect();
        let cl: Vec<usize> = co.permutation().iter().map(|&j| cm.labels()[j]).collect();
        let rm2 = Membership::new(rl, rm.k()).unwrap();
        let cm2 = Membership::new(cl, cm.k()).unwrap();
        let s2 = smooth_by_cluster(&moved, &rm2, &cm2, SmoothStat::Median).unwrap();
        prop_assert_eq!(s2.block_values(), s.block_values());
        // expanding back to cells and smoothing again is a fixed point
        let expanded = s.expand(m.row_names().to_vec(), m.col_names().to_vec()).unwrap();
        let again = smooth_by_cluster(&expanded, &rm, &cm, SmoothStat::Median).unwrap();
        prop_assert_eq!(again.block_values(), s.block_values());
    }

    #[test]
    fn color_map_monotone_within_segments(
        anchors in prop::collection::vec(any::<(u8, u8, u8)>(), 2..6),
        t1 in 0.0f64..=1.0,
        t2 in 0.0f64..=1.0,
    ) {
        let palette: Vec<Rgb> = anchors.iter().map(|&(r, g, b)| Rgb::new(r, g, b)).collect();
        let scale = ColorScale::new(palette.clone(), (-3.0, 5.0), Rgb::new(255, 255, 255)).unwrap();
        let (lo, hi) = (t1.min(t2), t1.max(t2));
        let v1 = -3.0 + 8.0 * lo;
        let v2 = -3.0 + 8.0 * hi;
        let seg = scale.segment(v1);
        if scale.segment(v2) == seg {
            let (a, b) = (palette[seg].channels(), palette[seg + 1].channels());
            let (c1, c2) = (scale.map(Some(v1)).channels(), scale.map(Some(v2)).channels());
            for ch in 0..3 {
                let (mn, mx) = (a[ch].min(b[ch]), a[ch].max(b[ch]));
                prop_assert!(c1[ch] >= mn && c1[ch] <= mx);
                prop_assert!(c2[ch] >= mn && c2[ch] <= mx);
                if b[ch] >= a[ch] {
                    prop_assert!(c2[ch] >= c1[ch]);
                } else {
                    prop_assert!(c2[ch] <= c1[ch]);
                }
            }
        }
    }
}
