//! Within-cluster aggregation of the heatmap.

use crate::clustering::Membership;
use crate::data::LabeledMatrix;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SmoothStat {
    #[default]
    Median,
    Mean,
}

/// One summary value per (row cluster, column cluster) block.
#[derive(Debug, Clone, PartialEq)]
pub struct SmoothedMatrix<F> {
    block_values: Vec<Option<F>>,
    row_membership: Membership,
    col_membership: Membership,
    source_dims: (usize, usize),
}

impl<F: Scalar> SmoothedMatrix<F> {
    pub fn k_rows(&self) -> usize {
        self.row_membership.k()
    }

    pub fn k_cols(&self) -> usize {
        self.col_membership.k()
    }

    pub fn block(&self, r: usize, c: usize) -> Option<F> {
        self.block_values[r * self.k_cols() + c]
    }

    pub fn block_values(&self) -> &[Option<F>] {
        &self.block_values
    }

    pub fn row_membership(&self) -> &Membership {
        &self.row_membership
    }

    pub fn col_membership(&self) -> &Membership {
        &self.col_membership
    }

    pub fn source_dims(&self) -> (usize, usize) {
        self.source_dims
    }

    pub fn value_range(&self) -> Option<(F, F)> {
        self.block_values
            .iter()
            .flatten()
            .fold(None, |acc, &v| match acc {
                None => Some((v, v)),
                Some((lo, hi)) => Some((lo.min(v), hi.max(v))),
            })
    }

    /// Cell-level matrix where every cell holds its block's value.
    pub fn expand(
        &self,
        row_names: Vec<String>,
        col_names: Vec<String>,
    ) -> Result<LabeledMatrix<F>> {
        let (r, c) = self.source_dims;
        let rl = self.row_membership.labels();
        let cl = self.col_membership.labels();
        let values = (0..r * c)
            .map(|i| self.block(rl[i / c], cl[i % c]))
            .collect();
        LabeledMatrix::from_row_major(r, c, values, row_names, col_names)
    }

    /// Block matrix with cluster label names on both axes.
    pub fn to_labeled(&self) -> Result<LabeledMatrix<F>> {
        let names = |m: &Membership| (0..m.k()).map(|c| m.label_name(c)).collect();
        LabeledMatrix::from_row_major(
            self.k_rows(),
            self.k_cols(),
            self.block_values.clone(),
            names(&self.row_membership),
            names(&self.col_membership),
        )
    }
}

/// Median of a non-empty slice; an even count averages the middle pair.
pub fn median<F: Scalar>(values: &mut [F]) -> Option<F> {
    if values.is_empty() {
        return None;
    }
    values.sort_by(|a, b| a.partial_cmp(b).expect("finite values"));
    let n = values.len();
    Some(if n % 2 == 1 {
        values[n / 2]
    } else {
        (values[n / 2 - 1] + values[n / 2]) / F::of(2.0)
    })
}

/// Replaces every block of cells sharing a row cluster and a column cluster
/// by `stat` over its present cells. Blocks with no present cells are
/// missing.
pub fn smooth_by_cluster<F: Scalar>(
    m: &LabeledMatrix<F>,
    row_mem: &Membership,
    col_mem: &Membership,
    stat: SmoothStat,
) -> Result<SmoothedMatrix<F>> {
    if row_mem.len() != m.n_rows() || col_mem.len() != m.n_cols() {
        return Err(Error::dim(format!(
            "memberships cover {}x{} objects, matrix is {}x{}",
            row_mem.len(),
            col_mem.len(),
            m.n_rows(),
            m.n_cols()
        )));
    }
    let (kr, kc) = (row_mem.k(), col_mem.k());
    let mut buckets: Vec<Vec<F>> = vec![Vec::new(); kr * kc];
    let cl = col_mem.labels();
    for (r, &rlab) in row_mem.labels().iter().enumerate() {
        for (c, v) in m.row(r).iter().enumerate() {
            if let Some(v) = v {
                buckets[rlab * kc + cl[c]].push(*v);
            }
        }
    }
    let block_values = buckets
        .into_iter()
        .map(|mut b| match stat {
            SmoothStat::Median => median(&mut b),
            SmoothStat::Mean if b.is_empty() => None,
            SmoothStat::Mean => Some(b.iter().copied().sum::<F>() / F::of(b.len() as f64)),
        })
        .collect();
    Ok(SmoothedMatrix {
        block_values,
        row_membership: row_mem.clone(),
        col_membership: col_mem.clone(),
        source_dims: m.dims(),
    })
}
