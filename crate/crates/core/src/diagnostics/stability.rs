use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::jaccard::pair_jaccard;
use super::silhouette::silhouette;
use crate::clustering::{
    kmeans_points, pam, DistanceKind, DistanceMatrix, KMeansConfig, Membership,
};
use crate::data::LabeledMatrix;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum StabilityMethod {
    #[default]
    KMeans,
    Pam,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StabilityConfig {
    pub k_min: usize,
    pub k_max: usize,
    pub method: StabilityMethod,
    pub subsamples: usize,
    pub fraction: f64,
    pub seed: u64,
    /// Dissimilarity for PAM and for the silhouette widths.
    pub distance: DistanceKind,
    pub kmeans_restarts: usize,
    pub kmeans_max_iter: usize,
}

impl Default for StabilityConfig {
    fn default() -> Self {
        Self {
            k_min: 2,
            k_max: 6,
            method: StabilityMethod::KMeans,
            subsamples: 100,
            fraction: 0.9,
            seed: 0,
            distance: DistanceKind::Cosine,
            kmeans_restarts: 10,
            kmeans_max_iter: 100,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StabilityReport {
    pub k: usize,
    pub subsample_count: usize,
    pub subsample_fraction: f64,
    pub mean_pairwise_jaccard: f64,
    pub mean_silhouette: f64,
}

/// Size of each subsample: `ceil(fraction * n)`.
pub fn subsample_size(n: usize, fraction: f64) -> usize {
    ((fraction * n as f64).ceil() as usize).min(n)
}

/// Draws the subsamples used for every `k`. Subsample `s` comes from ChaCha
/// stream `s` of `seed`, followed by the seed its clusterings use.
fn draw_subsamples(n: usize, size: usize, count: usize, seed: u64) -> Vec<(Vec<usize>, u64)> {
    (0..count)
        .map(|s| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(s as u64);
            let mut idx = rand::seq::index::sample(&mut rng, n, size).into_vec();
            idx.sort_unstable();
            (idx, rng.gen())
        })
        .collect()
}

/// Stability and silhouette curves over a range of cluster counts.
///
/// For every `k` the same `subsamples` subsets (each of `ceil(fraction*n)`
/// rows, drawn without replacement) are clustered. The Jaccard score averages
/// [`super::jaccard`] over all pairs of subsample clusterings, each pair
/// restricted to the rows both subsets contain; the silhouette score averages
/// each clustering's overall silhouette width.
pub fn stability_curve<F: Scalar>(
    m: &LabeledMatrix<F>,
    cfg: &StabilityConfig,
) -> Result<Vec<StabilityReport>> {
    let n = m.n_rows();
    if !(cfg.fraction > 0.0 && cfg.fraction <= 1.0) {
        return Err(Error::invalid(
            "subsample fraction",
            format!("{} is outside (0, 1]", cfg.fraction),
        ));
    }
    if cfg.k_min > cfg.k_max {
        return Err(Error::invalid(
            "k range",
            format!("{}..={} is empty", cfg.k_min, cfg.k_max),
        ));
    }
    let k_cap = (cfg.fraction * n as f64).floor() as usize;
    if cfg.k_min < 2 || cfg.k_max > k_cap {
        return Err(Error::invalid(
            "k range",
            format!(
                "{}..={} must lie within 2..={k_cap} for {n} rows at fraction {}",
                cfg.k_min, cfg.k_max, cfg.fraction
            ),
        ));
    }
    if cfg.subsamples < 2 {
        return Err(Error::invalid(
            "subsample count",
            "need at least 2 subsamples",
        ));
    }

    let points = match cfg.method {
        StabilityMethod::KMeans => Some(m.dense_rows("k-means stability")?),
        StabilityMethod::Pam => None,
    };
    let dist = DistanceMatrix::from_rows(m, cfg.distance)?;
    let size = subsample_size(n, cfg.fraction);
    let samples = draw_subsamples(n, size, cfg.subsamples, cfg.seed);
    let sample_dists: Vec<DistanceMatrix<F>> =
        samples.iter().map(|(idx, _)| dist.subset(idx)).collect();

    let mut reports = Vec::new();
    for k in cfg.k_min..=cfg.k_max {
        let mut memberships: Vec<Membership> = Vec::with_capacity(samples.len());
        let mut sil_total = 0.0;
        for ((idx, cluster_seed), sub_d) in samples.iter().zip(&sample_dists) {
            let mem = match (&points, cfg.method) {
                (Some(points), StabilityMethod::KMeans) => {
                    let sub: Vec<Vec<F>> = idx.iter().map(|&i| points[i].clone()).collect();
                    let kc = KMeansConfig {
                        k,
                        seed: *cluster_seed,
                        restarts: cfg.kmeans_restarts,
                        max_iter: cfg.kmeans_max_iter,
                    };
                    kmeans_points(&sub, &kc)?.membership
                }
                _ => pam(sub_d, k)?.membership,
            };
            sil_total += silhouette(sub_d, &mem)?.overall.as_f64();
            memberships.push(mem);
        }

        // labels over all n rows, usize::MAX outside the subsample
        let full: Vec<Vec<usize>> = samples
            .iter()
            .zip(&memberships)
            .map(|((idx, _), mem)| {
                let mut v = vec![usize::MAX; n];
                for (&i, &l) in idx.iter().zip(mem.labels()) {
                    v[i] = l;
                }
                v
            })
            .collect();
        let mut jac_total = 0.0;
        let mut pairs = 0usize;
        for s in 0..full.len() {
            for t in (s + 1)..full.len() {
                let (mut la, mut lb) = (Vec::new(), Vec::new());
                for i in 0..n {
                    if full[s][i] != usize::MAX && full[t][i] != usize::MAX {
                        la.push(full[s][i]);
                        lb.push(full[t][i]);
                    }
                }
                jac_total += pair_jaccard(&la, &lb);
                pairs += 1;
            }
        }
        reports.push(StabilityReport {
            k,
            subsample_count: cfg.subsamples,
            subsample_fraction: cfg.fraction,
            mean_pairwise_jaccard: jac_total / pairs as f64,
            mean_silhouette: sil_total / samples.len() as f64,
        });
    }
    Ok(reports)
}
