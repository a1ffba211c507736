use crate::data::LabeledMatrix;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Which dissimilarity to derive from row vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DistanceKind {
    #[default]
    Euclidean,
    /// Angular cosine distance `arccos(s) / pi`, in `[0, 1]`.
    Cosine,
}

/// Symmetric cosine similarity matrix with unit diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct SimilarityMatrix<F> {
    n: usize,
    values: Vec<F>,
}

impl<F: Scalar> SimilarityMatrix<F> {
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> F {
        self.values[i * self.n + j]
    }
}

/// Symmetric, non-negative dissimilarities with a zero diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix<F> {
    n: usize,
    values: Vec<F>,
}

impl<F: Scalar> DistanceMatrix<F> {
    /// Validates a full row-major `n x n` grid.
    pub fn from_full(n: usize, values: Vec<F>) -> Result<Self> {
        if n == 0 || values.len() != n * n {
            return Err(Error::dim(format!(
                "{} entries do not form a non-empty square matrix of side {n}",
                values.len()
            )));
        }
        let d = Self { n, values };
        d.check()?;
        Ok(d)
    }

    /// Builds from a function evaluated on the strict upper triangle.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> F) -> Result<Self> {
        if n == 0 {
            return Err(Error::dim("distance matrix over zero objects"));
        }
        let mut values = vec![F::zero(); n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let v = f(i, j);
                values[i * n + j] = v;
                values[j * n + i] = v;
            }
        }
        let d = Self { n, values };
        d.check()?;
        Ok(d)
    }

    fn check(&self) -> Result<()> {
        let n = self.n;
        for i in 0..n {
            if self.get(i, i) != F::zero() {
                return Err(Error::invalid(
                    "distance matrix",
                    format!("d[{i}][{i}] is not zero"),
                ));
            }
            for j in (i + 1)..n {
                let v = self.get(i, j);
                if !v.is_finite() || v < F::zero() {
                    return Err(Error::invalid(
                        "distance matrix",
                        format!("d[{i}][{j}] = {v} is not a finite non-negative number"),
                    ));
                }
                if v != self.get(j, i) {
                    return Err(Error::invalid(
                        "distance matrix",
                        format!("d[{i}][{j}] != d[{j}][{i}]"),
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> F {
        self.values[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.values[i * self.n..(i + 1) * self.n]
    }

    /// Angular distances from a cosine similarity matrix.
    pub fn from_similarity(s: &SimilarityMatrix<F>) -> Result<Self> {
        Self::from_fn(s.n(), |i, j| cosine_distance(s.get(i, j)))
    }

    pub fn euclidean(points: &[Vec<F>]) -> Result<Self> {
        Self::from_fn(points.len(), |i, j| {
            points[i]
                .iter()
                .zip(&points[j])
                .map(|(&a, &b)| (a - b) * (a - b))
                .sum::<F>()
                .sqrt()
        })
    }

    /// Distances between the rows of `m`.
    pub fn from_rows(m: &LabeledMatrix<F>, kind: DistanceKind) -> Result<Self> {
        match kind {
            DistanceKind::Euclidean => Self::euclidean(&m.dense_rows("euclidean distance")?),
            DistanceKind::Cosine => Self::from_similarity(&cosine_similarity(m)?),
        }
    }

    /// Restriction to `indices`, in the given order.
    pub fn subset(&self, indices: &[usize]) -> Self {
        let k = indices.len();
        let mut values = Vec::with_capacity(k * k);
        for &i in indices {
            let row = self.row(i);
            values.extend(indices.iter().map(|&j| row[j]));
        }
        Self { n: k, values }
    }
}

/// Pairwise cosine similarity of the rows of `m`, clamped into `[-1, 1]`.
pub fn cosine_similarity<F: Scalar>(m: &LabeledMatrix<F>) -> Result<SimilarityMatrix<F>> {
    let rows = m.dense_rows("cosine similarity")?;
    let norms: Vec<F> = rows
        .iter()
        .map(|r| r.iter().map(|&v| v * v).sum::<F>().sqrt())
        .collect();
    if let Some(i) = norms.iter().position(|&nrm| nrm == F::zero()) {
        return Err(Error::ZeroNorm {
            index: i,
            name: m.row_names()[i].clone(),
        });
    }
    let n = rows.len();
    let mut values = vec![F::one(); n * n];
    for i in 0..n {
        for j in (i + 1)..n {
            let dot: F = rows[i].iter().zip(&rows[j]).map(|(&a, &b)| a * b).sum();
            let s = (dot / (norms[i] * norms[j])).max(-F::one()).min(F::one());
            values[i * n + j] = s;
            values[j * n + i] = s;
        }
    }
    Ok(SimilarityMatrix { n, values })
}

/// Angular distance `arccos(s) / pi`; `s` is clamped into `[-1, 1]` first.
#[inline]
pub fn cosine_distance<F: Scalar>(s: F) -> F {
    let s = s.max(-F::one()).min(F::one());
    s.acos() / F::of(std::f64::consts::PI)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn sim(rows: Vec<Vec<f64>>) -> SimilarityMatrix<f64> {
        cosine_similarity(&LabeledMatrix::from_dense(rows).unwrap()).unwrap()
    }

    #[test]
    fn cosine_examples() {
        let s = sim(vec![vec![2.0, 3.0], vec![2.0, 3.0]]);
        assert_eq!(s.get(0, 1), 1.0);
        let s = sim(vec![vec![1.0, 0.0], vec![0.0, 1.0]]);
        assert_eq!(s.get(0, 1), 0.0);
        let s = sim(vec![vec![1.0, 1.0], vec![1.0, 0.0]]);
        assert_abs_diff_eq!(
            s.get(0, 1),
            std::f64::consts::FRAC_1_SQRT_2,
            epsilon = 1e-15
        );
    }

    #[test]
    fn zero_norm_row_is_named() {
        let m = LabeledMatrix::from_dense(vec![vec![1.0, 0.0], vec![0.0, 0.0]]).unwrap();
        let err = cosine_similarity(&m).unwrap_err();
        assert!(matches!(err, Error::ZeroNorm { index: 1, .. }));
        assert!(err.to_string().contains("r2"));
    }

    #[test]
    fn cosine_rejects_missing() {
        let m = LabeledMatrix::new(
            vec![vec![Some(1.0), None], vec![Some(1.0), Some(1.0)]],
            vec!["a".into(), "b".into()],
            vec!["x".into(), "y".into()],
        )
        .unwrap();
        assert!(matches!(
            cosine_similarity(&m),
            Err(Error::MissingValues(_))
        ));
    }

    #[test]
    fn angular_distance_endpoints() {
        assert_eq!(cosine_distance(1.0f64), 0.0);
        assert_eq!(cosine_distance(0.0f64), 0.5);
        assert_eq!(cosine_distance(-1.0f64), 1.0);
        assert_eq!(cosine_distance(1.0 + 1e-16f64), 0.0);
        assert_eq!(cosine_distance(0.0f32), 0.5);
    }

    #[test]
    fn rejects_asymmetric() {
        assert!(DistanceMatrix::from_full(2, vec![0.0, 1.0, 2.0, 0.0]).is_err());
        assert!(DistanceMatrix::from_full(2, vec![1.0, 1.0, 1.0, 0.0]).is_err());
        assert!(DistanceMatrix::from_full(2, vec![0.0, -1.0, -1.0, 0.0]).is_err());
        assert!(DistanceMatrix::from_full(2, vec![0.0, 1.0, 1.0, 0.0]).is_ok());
    }

    #[test]
    fn subset_preserves_entries() {
        let d = DistanceMatrix::euclidean(&[vec![0.0], vec![1.0], vec![5.0]]).unwrap();
        let s = d.subset(&[2, 0]);
        assert_eq!(s.n(), 2);
        assert_eq!(s.get(0, 1), 5.0);
    }
}
