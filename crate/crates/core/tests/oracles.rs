//! Brute-force reference implementations checked against the library.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use supergrid::clustering::{
    cosine_distance, cosine_similarity, hcluster, kmeans_points, pam, DistanceMatrix, KMeansConfig,
    Linkage, Membership,
};
use supergrid::data::LabeledMatrix;
use supergrid::diagnostics::{jaccard, silhouette};

fn random_distances(rng: &mut ChaCha8Rng, n: usize) -> DistanceMatrix<f64> {
    let mut full = vec![0.0; n * n];
    for i in 0..n {
        for j in i + 1..n {
            let v: f64 = rng.gen();
            full[i * n + j] = v;
            full[j * n + i] = v;
        }
    }
    DistanceMatrix::from_full(n, full).unwrap()
}

fn random_labels(rng: &mut ChaCha8Rng, n: usize, k: usize) -> Vec<usize> {
    loop {
        let labels: Vec<usize> = (0..n).map(|_| rng.gen_range(0..k)).collect();
        if (0..k).all(|c| labels.contains(&c)) {
            return labels;
        }
    }
}

/// The typeset formula, term by term: a(i) averages d(i, j) over every j in
/// i's cluster including i itself; b(i) is the smallest such average over
/// the other clusters; sil(i) = b(i) - a(i).
fn silhouette_oracle(d: &DistanceMatrix<f64>, labels: &[usize], k: usize) -> Vec<(f64, f64, f64)> {
    let n = labels.len();
    (0..n)
        .map(|i| {
            let mean_to = |c: usize| {
                let members: Vec<usize> = (0..n).filter(|&j| labels[j] == c).collect();
                members.iter().map(|&j| d.get(i, j)).sum::<f64>() / members.len() as f64
            };
            let a = mean_to(labels[i]);
            let b = (0..k)
                .filter(|&c| c != labels[i])
                .map(mean_to)
                .fold(f64::INFINITY, f64::min);
            (a, b, b - a)
        })
        .collect()
}

#[test]
fn silhouette_matches_formula() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..200 {
        let n = rng.gen_range(4..=10);
        let k = rng.gen_range(2..=3);
        let d = random_distances(&mut rng, n);
        let labels = random_labels(&mut rng, n, k);
        let mem = Membership::from_labels(&labels).unwrap();
        let rep = silhouette(&d, &mem).unwrap();
        // from_labels renumbers clusters, so compare against the oracle on
        // the renumbered labels
        let want = silhouette_oracle(&d, mem.labels(), k);
        for (i, (a, b, s)) in want.into_iter().enumerate() {
            assert!((rep.a[i] - a).abs() < 1e-12);
            assert!((rep.b[i] - b).abs() < 1e-12);
            assert!((rep.sil[i] - s).abs() < 1e-12);
            assert_eq!(rep.sil[i], rep.b[i] - rep.a[i]);
        }
    }
}

#[test]
fn silhouette_duplicate_pairs() {
    // two clusters of two duplicates, cross distance 0.5
    let d = DistanceMatrix::from_fn(4, |i, j| if i / 2 == j / 2 { 0.0 } else { 0.5 }).unwrap();
    let mem = Membership::new(vec![0, 0, 1, 1], 2).unwrap();
    let rep = silhouette(&d, &mem).unwrap();
    assert_eq!(rep.a, vec![0.0; 4]);
    assert_eq!(rep.b, vec![0.5; 4]);
    assert_eq!(rep.sil, vec![0.5; 4]);
    assert_eq!(rep.overall, 0.5);
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn exhaustive_medoid_cost(d: &DistanceMatrix<f64>, k: usize) -> f64 {
    combinations(d.n(), k)
        .iter()
        .map(|m| {
            (0..d.n())
                .map(|i| m.iter().map(|&j| d.get(i, j)).fold(f64::INFINITY, f64::min))
                .sum::<f64>()
        })
        .fold(f64::INFINITY, f64::min)
}

/// Euclidean distances between random points in the plane.
fn random_point_distances(rng: &mut ChaCha8Rng, n: usize) -> DistanceMatrix<f64> {
    let pts: Vec<Vec<f64>> = (0..n).map(|_| vec![rng.gen(), rng.gen()]).collect();
    DistanceMatrix::euclidean(&pts).unwrap()
}

#[test]
fn pam_collinear_example() {
    let pts = vec![vec![0.0], vec![1.0], vec![10.0]];
    let d = DistanceMatrix::euclidean(&pts).unwrap();
    let fit = pam(&d, 1).unwrap();
    assert_eq!(fit.medoids(), &[1]);
    assert_eq!(fit.cost, 10.0);
}

fn medoid_set_cost(d: &DistanceMatrix<f64>, medoids: &[usize]) -> f64 {
    (0..d.n())
        .map(|i| {
            medoids
                .iter()
                .map(|&j| d.get(i, j))
                .fold(f64::INFINITY, f64::min)
        })
        .sum()
}

/// No single medoid/non-medoid exchange lowers the cost.
fn assert_swap_local_optimum(d: &DistanceMatrix<f64>, medoids: &[usize], cost: f64) {
    for slot in 0..medoids.len() {
        for cand in (0..d.n()).filter(|c| !medoids.contains(c)) {
            let mut m = medoids.to_vec();
            m[slot] = cand;
            assert!(
                medoid_set_cost(d, &m) >= cost - 1e-12,
                "swap {slot}->{cand} improves {medoids:?}"
            );
        }
    }
}

#[test]
fn pam_ends_in_a_swap_local_optimum() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut misses = 0;
    for trial in 0..200 {
        let n = rng.gen_range(3..=8);
        let k = rng.gen_range(1..=3.min(n));
        let d = if trial % 2 == 0 {
            random_point_distances(&mut rng, n)
        } else {
            random_distances(&mut rng, n)
        };
        let fit = pam(&d, k).unwrap();
        assert!((fit.cost - medoid_set_cost(&d, fit.medoids())).abs() < 1e-12);
        assert!(fit.cost <= fit.build_cost + 1e-12);
        assert_swap_local_optimum(&d, fit.medoids(), fit.cost);
        let best = exhaustive_medoid_cost(&d, k);
        assert!(fit.cost >= best - 1e-12);
        misses += usize::from(fit.cost - best > 1e-9);
    }
    eprintln!("pam above the exhaustive optimum on {misses}/200 instances");
}

#[test]
fn pam_single_medoid_is_exact() {
    // with k = 1 every set is one swap away from every other
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..100 {
        let n = rng.gen_range(2..=8);
        let d = random_distances(&mut rng, n);
        assert!((pam(&d, 1).unwrap().cost - exhaustive_medoid_cost(&d, 1)).abs() < 1e-12);
    }
}

/// Kruskal on the complete graph.
fn mst_weights(d: &DistanceMatrix<f64>) -> Vec<f64> {
    let n = d.n();
    let mut edges: Vec<(f64, usize, usize)> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            edges.push((d.get(i, j), i, j));
        }
    }
    edges.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut comp: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    for (w, i, j) in edges {
        let (ci, cj) = (comp[i], comp[j]);
        if ci != cj {
            for c in comp.iter_mut() {
                if *c == cj {
                    *c = ci;
                }
            }
            out.push(w);
        }
    }
    out
}

#[test]
fn single_linkage_heights_are_mst_edges() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..100 {
        let n = rng.gen_range(2..=10);
        let d = random_distances(&mut rng, n);
        let t = hcluster(&d, Linkage::Single).unwrap();
        let heights: Vec<f64> = t.merges().iter().map(|m| m.height).collect();
        assert_eq!(heights, mst_weights(&d));
    }
}

#[test]
fn three_point_tree() {
    let d =
        DistanceMatrix::from_full(3, vec![0.0, 1.0, 5.0, 1.0, 0.0, 5.0, 5.0, 5.0, 0.0]).unwrap();
    let t = hcluster(&d, Linkage::Complete).unwrap();
    let m = t.merges();
    assert_eq!((m[0].left, m[0].right, m[0].height), (0, 1, 1.0));
    assert_eq!((m[1].left, m[1].right, m[1].height), (3, 2, 5.0));
    let cut = supergrid::clustering::cut_dendrogram(&t, 2).unwrap();
    assert_eq!(cut.labels(), &[0, 0, 1]);
}

fn wcss_of(points: &[Vec<f64>], labels: &[usize], k: usize) -> f64 {
    (0..k)
        .map(|c| {
            let members: Vec<&Vec<f64>> = points
                .iter()
                .zip(labels)
                .filter(|(_, &l)| l == c)
                .map(|(p, _)| p)
                .collect();
            if members.is_empty() {
                return 0.0;
            }
            let dim = points[0].len();
            let center: Vec<f64> = (0..dim)
                .map(|j| members.iter().map(|p| p[j]).sum::<f64>() / members.len() as f64)
                .collect();
            members
                .iter()
                .map(|p| {
                    p.iter()
                        .zip(&center)
                        .map(|(a, b)| (a - b) * (a - b))
                        .sum::<f64>()
                })
                .sum()
        })
        .sum()
}

#[test]
fn planted_two_partition_is_the_wcss_minimum() {
    // 12 points in two tight blobs; enumerate every 2-partition
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let points: Vec<Vec<f64>> = (0..12)
        .map(|i| {
            let c = if i < 6 { 0.0 } else { 10.0 };
            vec![
                c + 0.1 * (rng.gen::<f64>() - 0.5),
                c + 0.1 * (rng.gen::<f64>() - 0.5),
            ]
        })
        .collect();
    let planted: Vec<usize> = (0..12).map(|i| usize::from(i >= 6)).collect();
    let planted_cost = wcss_of(&points, &planted, 2);
    for mask in 1u32..(1 << 11) {
        let labels: Vec<usize> = (0..12).map(|i| ((mask << 1) >> i & 1) as usize).collect();
        if labels != planted && labels.contains(&0) && labels.contains(&1) {
            assert!(wcss_of(&points, &labels, 2) > planted_cost);
        }
    }
    let fit = kmeans_points(&points, &KMeansConfig::new(2, 1)).unwrap();
    assert_eq!(fit.membership.labels(), planted.as_slice());
    assert!((fit.wcss - planted_cost).abs() < 1e-12);
}

fn pair_oracle(a: &[usize], b: &[usize], shared: &[usize]) -> f64 {
    let mut inter = 0;
    let mut union = 0;
    for (x, &i) in shared.iter().enumerate() {
        for &j in &shared[x + 1..] {
            let pa = a[i] == a[j];
            let pb = b[i] == b[j];
            inter += usize::from(pa && pb);
            union += usize::from(pa || pb);
        }
    }
    if union == 0 {
        1.0
    } else {
        inter as f64 / union as f64
    }
}

#[test]
fn jaccard_matches_pair_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(29);
    for _ in 0..300 {
        let n = rng.gen_range(2..=12);
        let (ka, kb) = (rng.gen_range(1..=n.min(4)), rng.gen_range(1..=n.min(4)));
        let la = random_labels(&mut rng, n, ka);
        let lb = random_labels(&mut rng, n, kb);
        let shared: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.8)).collect();
        if shared.len() < 2 {
            continue;
        }
        let a = Membership::from_labels(&la).unwrap();
        let b = Membership::from_labels(&lb).unwrap();
        let j = jaccard(&a, &b, &shared).unwrap();
        assert!((j - pair_oracle(&la, &lb, &shared)).abs() < 1e-15);
    }
}

#[test]
fn jaccard_worked_example() {
    let a = Membership::new(vec![0, 0, 1, 1], 2).unwrap();
    let b = Membership::new(vec![0, 0, 0, 1], 2).unwrap();
    assert_eq!(jaccard(&a, &b, &[0, 1, 2, 3]).unwrap(), 0.25);
}

#[test]
fn cosine_hand_values() {
    let m =
        LabeledMatrix::from_dense(vec![vec![1.0, 1.0], vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
    let s = cosine_similarity(&m).unwrap();
    assert!((s.get(0, 1) - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
    assert_eq!(s.get(1, 2), 0.0);
    assert_eq!(s.get(0, 0), 1.0);
    assert_eq!(cosine_distance(1.0f64), 0.0);
    assert_eq!(cosine_distance(0.0f64), 0.5);
    assert_eq!(cosine_distance(-1.0f64), 1.0);
}
