use crate::clustering::{DistanceMatrix, Membership};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Per-object and aggregate cosine-silhouette widths.
#[derive(Debug, Clone, PartialEq)]
pub struct SilhouetteReport<F> {
    /// Mean distance to the object's own cluster, self included.
    pub a: Vec<F>,
    /// Lowest mean distance to any other cluster.
    pub b: Vec<F>,
    /// `b - a`, without the classic `max(a, b)` normalization.
    pub sil: Vec<F>,
    pub cluster_means: Vec<F>,
    pub overall: F,
}

/// Silhouette widths `sil(i) = b(i) - a(i)` where
/// `a(i) = (1/|C_i|) * sum_{j in C_i} d(i, j)` (the sum includes `j = i`, so a
/// singleton has `a = 0`) and `b(i)` is the smallest mean distance from `i`
/// to another cluster.
pub fn silhouette<F: Scalar>(
    d: &DistanceMatrix<F>,
    mem: &Membership,
) -> Result<SilhouetteReport<F>> {
    let n = d.n();
    if mem.len() != n {
        return Err(Error::dim(format!(
            "membership covers {} objects, distance matrix {n}",
            mem.len()
        )));
    }
    let k = mem.k();
    if k < 2 {
        return Err(Error::ClusterCount { k, n, min: 2 });
    }
    let sizes: Vec<F> = mem.sizes().into_iter().map(|s| F::of(s as f64)).collect();
    let labels = mem.labels();
    let mut a = Vec::with_capacity(n);
    let mut b = Vec::with_capacity(n);
    let mut sums = vec![F::zero(); k];
    for i in 0..n {
        sums.iter_mut().for_each(|s| *s = F::zero());
        for (j, &v) in d.row(i).iter().enumerate() {
            sums[labels[j]] = sums[labels[j]] + v;
        }
        let own = labels[i];
        a.push(sums[own] / sizes[own]);
        let nearest_other = (0..k)
            .filter(|&c| c != own)
            .map(|c| sums[c] / sizes[c])
            .fold(F::infinity(), F::min);
        b.push(nearest_other);
    }
    let sil: Vec<F> = a.iter().zip(&b).map(|(&ai, &bi)| bi - ai).collect();
    let mut cluster_sums = vec![F::zero(); k];
    for (&s, &l) in sil.iter().zip(labels) {
        cluster_sums[l] = cluster_sums[l] + s;
    }
    let cluster_means = cluster_sums
        .into_iter()
        .zip(&sizes)
        .map(|(s, &c)| s / c)
        .collect();
    let overall = sil.iter().copied().sum::<F>() / F::of(n as f64);
    Ok(SilhouetteReport {
        a,
        b,
        sil,
        cluster_means,
        overall,
    })
}
