use crate::data::AxisOrder;
use crate::error::{Error, Result};

/// Cluster assignment for the objects on one axis.
///
/// Every label lies in `0..k` and every cluster is non-empty. When medoids
/// are present, `medoids[c]` is an object labeled `c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Membership {
    labels: Vec<usize>,
    k: usize,
    medoids: Option<Vec<usize>>,
    label_names: Option<Vec<String>>,
}

impl Membership {
    pub fn new(labels: Vec<usize>, k: usize) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::invalid("membership", "no objects"));
        }
        let mut sizes = vec![0usize; k];
        for (i, &l) in labels.iter().enumerate() {
            if l >= k {
                return Err(Error::invalid(
                    "membership",
                    format!("object {i} has label {l}, but k = {k}"),
                ));
            }
            sizes[l] += 1;
        }
        if let Some(c) = sizes.iter().position(|&s| s == 0) {
            return Err(Error::invalid(
                "membership",
                format!("cluster {c} is empty"),
            ));
        }
        Ok(Self {
            labels,
            k,
            medoids: None,
            label_names: None,
        })
    }

    /// Relabels arbitrary cluster ids by order of first occurrence.
    pub fn from_labels(raw: &[usize]) -> Result<Self> {
        let (labels, k, _) = canonicalize(raw);
        Self::new(labels, k)
    }

    /// Every object in its own cluster.
    pub fn singletons(n: usize) -> Self {
        Self {
            labels: (0..n).collect(),
            k: n,
            medoids: None,
            label_names: None,
        }
    }

    pub fn with_medoids(mut self, medoids: Vec<usize>) -> Result<Self> {
        if medoids.len() != self.k {
            return Err(Error::invalid(
                "membership",
                format!("{} medoids for {} clusters", medoids.len(), self.k),
            ));
        }
        for (c, &m) in medoids.iter().enumerate() {
            if m >= self.labels.len() || self.labels[m] != c {
                return Err(Error::invalid(
                    "membership",
                    format!("medoid {m} is not a member of cluster {c}"),
                ));
            }
        }
        self.medoids = Some(medoids);
        Ok(self)
    }

    pub fn with_label_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.k {
            return Err(Error::invalid(
                "membership",
                format!("{} label names for {} clusters", names.len(), self.k),
            ));
        }
        self.label_names = Some(names);
        Ok(self)
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn medoids(&self) -> Option<&[usize]> {
        self.medoids.as_deref()
    }

    pub fn label_names(&self) -> Option<&[String]> {
        self.label_names.as_deref()
    }

    /// Display name of cluster `c`: its label name, or the 1-based id.
    pub fn label_name(&self, c: usize) -> String {
        match &self.label_names {
            Some(names) => names[c].clone(),
            None => (c + 1).to_string(),
        }
    }

    pub fn sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.k];
        for &l in &self.labels {
            sizes[l] += 1;
        }
        sizes
    }

    pub fn members(&self, c: usize) -> Vec<usize> {
        self.labels
            .iter()
            .enumerate()
            .filter(|(_, &l)| l == c)
            .map(|(i, _)| i)
            .collect()
    }

    /// True when labels already follow first-occurrence order.
    pub fn is_canonical(&self) -> bool {
        let mut next = 0;
        for &l in &self.labels {
            if l > next {
                return false;
            }
            if l == next {
                next += 1;
            }
        }
        true
    }

    /// Relabels by first occurrence, carrying medoids and names along.
    pub fn canonical(&self) -> Self {
        let (labels, k, old_to_new) = canonicalize(&self.labels);
        let mut new_to_old = vec![0; k];
        for (old, &new) in old_to_new.iter().enumerate() {
            if new != usize::MAX {
                new_to_old[new] = old;
            }
        }
        Self {
            labels,
            k,
            medoids: self
                .medoids
                .as_ref()
                .map(|m| new_to_old.iter().map(|&o| m[o]).collect()),
            label_names: self
                .label_names
                .as_ref()
                .map(|n| new_to_old.iter().map(|&o| n[o].clone()).collect()),
        }
    }

    /// Reorders objects along `order` and relabels by first occurrence in
    /// the new arrangement.
    pub fn reordered(&self, order: &AxisOrder) -> Result<Self> {
        let labels = order.apply_to(&self.labels)?;
        let inv = order.inverse();
        let moved = Self {
            labels,
            k: self.k,
            medoids: self
                .medoids
                .as_ref()
                .map(|m| m.iter().map(|&i| inv.permutation()[i]).collect()),
            label_names: self.label_names.clone(),
        };
        Ok(moved.canonical())
    }

    /// Stable permutation grouping objects cluster by cluster in label order.
    pub fn grouping_permutation(&self) -> Vec<usize> {
        let mut perm: Vec<usize> = (0..self.labels.len()).collect();
        perm.sort_by_key(|&i| self.labels[i]);
        perm
    }

    /// True when each cluster occupies a contiguous run of positions in
    /// label order.
    pub fn is_contiguous(&self) -> bool {
        self.labels
            .windows(2)
            .all(|w| w[1] == w[0] || w[1] == w[0] + 1)
            && self.labels[0] == 0
    }
}

/// First-occurrence relabeling; returns (labels, k, raw id -> new id) where
/// unused raw ids map to `usize::MAX`.
fn canonicalize(raw: &[usize]) -> (Vec<usize>, usize, Vec<usize>) {
    let max = raw.iter().copied().max().unwrap_or(0);
    let mut map = vec![usize::MAX; max + 1];
    let mut k = 0;
    let labels = raw
        .iter()
        .map(|&l| {
            if map[l] == usize::MAX {
                map[l] = k;
                k += 1;
            }
            map[l]
        })
        .collect();
    (labels, k, map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::Axis;

    #[test]
    fn rejects_empty_cluster_and_bad_labels() {
        assert!(Membership::new(vec![0, 2], 3).is_err());
        assert!(Membership::new(vec![0, 3], 3).is_err());
        assert!(Membership::new(vec![], 0).is_err());
    }

    #[test]
    fn first_occurrence_relabel() {
        let m = Membership::from_labels(&[5, 5, 2, 9, 2]).unwrap();
        assert_eq!(m.labels(), &[0, 0, 1, 2, 1]);
        assert_eq!(m.k(), 3);
        assert!(m.is_canonical());
    }

    #[test]
    fn canonical_carries_medoids_and_names() {
        let m = Membership::new(vec![1, 0, 1, 0], 2)
            .unwrap()
            .with_medoids(vec![3, 2])
            .unwrap()
            .with_label_names(vec!["b".into(), "a".into()])
            .unwrap();
        let c = m.canonical();
        assert_eq!(c.labels(), &[0, 1, 0, 1]);
        assert_eq!(c.medoids(), Some(&[2, 3][..]));
        assert_eq!(c.label_names().unwrap(), &["a", "b"]);
    }

    #[test]
    fn medoid_must_belong_to_its_cluster() {
        let m = Membership::new(vec![0, 1], 2).unwrap();
        assert!(m.clone().with_medoids(vec![1, 0]).is_err());
        assert!(m.with_medoids(vec![0, 1]).is_ok());
    }

    #[test]
    fn reorder_moves_medoids() {
        let m = Membership::new(vec![0, 0, 1], 2)
            .unwrap()
            .with_medoids(vec![1, 2])
            .unwrap();
        let o = AxisOrder::new(Axis::Row, vec![2, 0, 1]).unwrap();
        let r = m.reordered(&o).unwrap();
        assert_eq!(r.labels(), &[0, 1, 1]);
        assert_eq!(r.medoids(), Some(&[0, 2][..]));
    }

    #[test]
    fn grouping() {
        let m = Membership::new(vec![0, 1, 0, 1], 2).unwrap();
        assert_eq!(m.grouping_permutation(), vec![0, 2, 1, 3]);
        assert!(!m.is_contiguous());
        assert!(Membership::new(vec![0, 0, 1], 2).unwrap().is_contiguous());
    }
}
