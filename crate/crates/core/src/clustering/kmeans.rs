use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Membership;
use crate::data::LabeledMatrix;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KMeansConfig {
    pub k: usize,
    pub seed: u64,
    pub restarts: usize,
    pub max_iter: usize,
}

impl KMeansConfig {
    pub fn new(k: usize, seed: u64) -> Self {
        Self {
            k,
            seed,
            restarts: 10,
            max_iter: 100,
        }
    }
}

#[derive(Debug, Clone)]
pub struct KMeansFit<F> {
    /// Labels relabeled by first occurrence.
    pub membership: Membership,
    /// `centers[c]` is the mean of cluster `c`.
    pub centers: Vec<Vec<F>>,
    pub wcss: F,
    /// Within-cluster sum of squares after each Lloyd iteration of the
    /// winning restart.
    pub wcss_trace: Vec<F>,
    pub iterations: usize,
    pub restart: usize,
}

/// K-means on the rows of `m` (which must have no missing cells).
pub fn kmeans<F: Scalar>(m: &LabeledMatrix<F>, cfg: &KMeansConfig) -> Result<KMeansFit<F>> {
    kmeans_points(&m.dense_rows("k-means")?, cfg)
}

/// Lloyd's algorithm from k-means++ seeds, best of `cfg.restarts` by WCSS.
///
/// Restart `r` draws from ChaCha stream `r` of `cfg.seed`, so results do not
/// depend on evaluation order; ties between restarts go to the lower index.
pub fn kmeans_points<F: Scalar>(points: &[Vec<F>], cfg: &KMeansConfig) -> Result<KMeansFit<F>> {
    let n = points.len();
    if cfg.k == 0 || cfg.k > n {
        return Err(Error::ClusterCount {
            k: cfg.k,
            n,
            min: 1,
        });
    }
    let dim = points[0].len();
    if points.iter().any(|p| p.len() != dim) {
        return Err(Error::dim("k-means points have differing dimensions"));
    }
    let mut best: Option<KMeansFit<F>> = None;
    for restart in 0..cfg.restarts.max(1) {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(restart as u64);
        let fit = lloyd(points, cfg.k, cfg.max_iter, &mut rng, restart)?;
        if best.as_ref().is_none_or(|b| fit.wcss < b.wcss) {
            best = Some(fit);
        }
    }
    Ok(best.expect("at least one restart"))
}

#[inline]
fn sq_dist<F: Scalar>(a: &[F], b: &[F]) -> F {
    a.iter().zip(b).map(|(&x, &y)| (x - y) * (x - y)).sum()
}

fn plus_plus_seeds<F: Scalar>(points: &[Vec<F>], k: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<F>> {
    let n = points.len();
    let mut centers = Vec::with_capacity(k);
    let mut chosen = vec![false; n];
    let first = rng.gen_range(0..n);
    chosen[first] = true;
    centers.push(points[first].clone());
    let mut nearest: Vec<F> = points.iter().map(|p| sq_dist(p, &centers[0])).collect();
    while centers.len() < k {
        let total: f64 = nearest.iter().map(|d| d.as_f64()).sum();
        let pick = if total > 0.0 {
            let mut target = rng.gen::<f64>() * total;
            let mut pick = None;
            for (i, d) in nearest.iter().enumerate() {
                let d = d.as_f64();
                if d > 0.0 {
                    pick = Some(i);
                    if target < d {
                        break;
                    }
                    target -= d;
                }
            }
            pick.expect("positive mass")
        } else {
            // every point coincides with a center; take the first unused one
            chosen.iter().position(|&c| !c).expect("k <= n")
        };
        chosen[pick] = true;
        centers.push(points[pick].clone());
        let c = centers.last().expect("just pushed");
        for (i, p) in points.iter().enumerate() {
            let d = sq_dist(p, c);
            if d < nearest[i] {
                nearest[i] = d;
            }
        }
    }
    centers
}

fn lloyd<F: Scalar>(
    points: &[Vec<F>],
    k: usize,
    max_iter: usize,
    rng: &mut ChaCha8Rng,
    restart: usize,
) -> Result<KMeansFit<F>> {
    let n = points.len();
    let dim = points[0].len();
    let mut centers = plus_plus_seeds(points, k, rng);
    let mut labels = vec![usize::MAX; n];
    let mut trace = Vec::new();
    let mut iterations = 0;

    for _ in 0..max_iter.max(1) {
        iterations += 1;
        let mut changed = false;
        let mut dists = vec![F::zero(); n];
        for (i, p) in points.iter().enumerate() {
            let (mut best_c, mut best_d) = (0, sq_dist(p, &centers[0]));
            for (c, center) in centers.iter().enumerate().skip(1) {
                let d = sq_dist(p, center);
                if d < best_d {
                    best_c = c;
                    best_d = d;
                }
            }
            if labels[i] != best_c {
                labels[i] = best_c;
                changed = true;
            }
            dists[i] = best_d;
        }

        // An empty cluster takes the point farthest from its own center.
        let mut sizes = vec![0usize; k];
        for &l in &labels {
            sizes[l] += 1;
        }
        for c in 0..k {
            if sizes[c] > 0 {
                continue;
            }
            let far = (0..n)
                .filter(|&i| sizes[labels[i]] > 1)
                .fold(None::<usize>, |acc, i| match acc {
                    Some(j) if dists[j] >= dists[i] => Some(j),
                    _ => Some(i),
                })
                .expect("k <= n leaves a donor cluster");
            sizes[labels[far]] -= 1;
            sizes[c] = 1;
            labels[far] = c;
            dists[far] = F::zero();
            centers[c] = points[far].clone();
            changed = true;
        }

        let mut sums = vec![vec![F::zero(); dim]; k];
        for (p, &l) in points.iter().zip(&labels) {
            for (s, &v) in sums[l].iter_mut().zip(p) {
                *s = *s + v;
            }
        }
        for (c, sum) in sums.into_iter().enumerate() {
            let size = F::of(sizes[c] as f64);
            centers[c] = sum.into_iter().map(|s| s / size).collect();
        }

        let wcss = points
            .iter()
            .zip(&labels)
            .map(|(p, &l)| sq_dist(p, &centers[l]))
            .sum::<F>();
        trace.push(wcss);
        if !changed {
            break;
        }
    }

    let membership = Membership::from_labels(&labels)?;
    // reorder centers to match first-occurrence labels
    let mut ordered = vec![Vec::new(); k];
    for (i, &l) in labels.iter().enumerate() {
        let new = membership.labels()[i];
        if ordered[new].is_empty() {
            ordered[new] = centers[l].clone();
        }
    }
    Ok(KMeansFit {
        membership,
        centers: ordered,
        wcss: *trace.last().expect("at least one iteration"),
        wcss_trace: trace,
        iterations,
        restart,
    })
}

/// Within-cluster sum of squares of an arbitrary labeling.
pub fn wcss<F: Scalar>(points: &[Vec<F>], membership: &Membership) -> F {
    let dim = points[0].len();
    let k = membership.k();
    let mut sums = vec![vec![F::zero(); dim]; k];
    let sizes = membership.sizes();
    for (p, &l) in points.iter().zip(membership.labels()) {
        for (s, &v) in sums[l].iter_mut().zip(p) {
            *s = *s + v;
        }
    }
    let centers: Vec<Vec<F>> = sums
        .into_iter()
        .zip(&sizes)
        .map(|(s, &n)| s.into_iter().map(|v| v / F::of(n as f64)).collect())
        .collect();
    points
        .iter()
        .zip(membership.labels())
        .map(|(p, &l)| sq_dist(p, &centers[l]))
        .sum()
}
