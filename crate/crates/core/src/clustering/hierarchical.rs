use super::{DistanceMatrix, Membership};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Linkage {
    Single,
    #[default]
    Complete,
    Average,
}

/// One agglomeration step. Node ids below `n` are leaves; the node created
/// by merge `s` has id `n + s`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Merge<F> {
    /// Child whose subtree holds the smaller minimum leaf index.
    pub left: usize,
    pub right: usize,
    pub height: F,
    /// Number of leaves under the new node.
    pub size: usize,
}

/// Binary merge tree with non-decreasing merge heights.
#[derive(Debug, Clone, PartialEq)]
pub struct Dendrogram<F> {
    n_leaves: usize,
    merges: Vec<Merge<F>>,
    leaf_order: Vec<usize>,
}

impl<F: Scalar> Dendrogram<F> {
    /// Validates merges and derives the leaf order.
    pub fn from_merges(n_leaves: usize, merges: Vec<Merge<F>>) -> Result<Self> {
        if n_leaves < 2 || merges.len() != n_leaves - 1 {
            return Err(Error::invalid(
                "dendrogram",
                format!("{} merges for {n_leaves} leaves", merges.len()),
            ));
        }
        let mut used = vec![false; 2 * n_leaves - 1];
        let mut min_leaf: Vec<usize> = (0..n_leaves).collect();
        let mut size = vec![1usize; n_leaves];
        let mut heights = vec![F::zero(); n_leaves];
        let mut merges = merges;
        for (s, m) in merges.iter_mut().enumerate() {
            let id = n_leaves + s;
            for child in [m.left, m.right] {
                if child >= id || std::mem::replace(&mut used[child], true) {
                    return Err(Error::invalid(
                        "dendrogram",
                        format!("merge {s} reuses or forward-references node {child}"),
                    ));
                }
                if heights[child] > m.height {
                    return Err(Error::invalid(
                        "dendrogram",
                        format!("merge {s} is lower than its child {child}"),
                    ));
                }
            }
            if min_leaf[m.right] < min_leaf[m.left] {
                std::mem::swap(&mut m.left, &mut m.right);
            }
            m.size = size[m.left] + size[m.right];
            min_leaf.push(min_leaf[m.left]);
            size.push(m.size);
            heights.push(m.height);
        }
        let leaf_order = traverse(n_leaves, &merges);
        Ok(Self {
            n_leaves,
            merges,
            leaf_order,
        })
    }

    pub fn n_leaves(&self) -> usize {
        self.n_leaves
    }

    pub fn merges(&self) -> &[Merge<F>] {
        &self.merges
    }

    /// Left-to-right leaf sequence of the drawing.
    pub fn leaf_order(&self) -> &[usize] {
        &self.leaf_order
    }

    pub fn height(&self, node: usize) -> F {
        if node < self.n_leaves {
            F::zero()
        } else {
            self.merges[node - self.n_leaves].height
        }
    }

    pub fn max_height(&self) -> F {
        self.merges.last().map_or(F::zero(), |m| m.height)
    }

    pub fn root(&self) -> usize {
        2 * self.n_leaves - 2
    }

    /// The same tree with leaves renumbered so that leaf `i` becomes
    /// `position[i]`.
    pub fn relabeled(&self, position: &[usize]) -> Result<Self> {
        if position.len() != self.n_leaves {
            return Err(Error::dim("relabeling length differs from leaf count"));
        }
        let map = |id: usize| if id < self.n_leaves { position[id] } else { id };
        let merges = self
            .merges
            .iter()
            .map(|m| Merge {
                left: map(m.left),
                right: map(m.right),
                ..*m
            })
            .collect();
        Self::from_merges(self.n_leaves, merges)
    }
}

fn traverse<F>(n: usize, merges: &[Merge<F>]) -> Vec<usize> {
    let mut order = Vec::with_capacity(n);
    let mut stack = vec![2 * n - 2];
    while let Some(node) = stack.pop() {
        if node < n {
            order.push(node);
        } else {
            let m = &merges[node - n];
            stack.push(m.right);
            stack.push(m.left);
        }
    }
    order
}

/// Agglomerative clustering under `linkage`.
///
/// Each step merges the closest pair of active clusters; ties go to the
/// lexicographically smallest pair of node ids.
pub fn hcluster<F: Scalar>(d: &DistanceMatrix<F>, linkage: Linkage) -> Result<Dendrogram<F>> {
    let n = d.n();
    if n < 2 {
        return Err(Error::invalid(
            "hierarchical clustering",
            "needs at least 2 objects",
        ));
    }
    // slot i holds the active cluster that absorbed leaf i's slot
    let mut dist: Vec<F> = (0..n * n).map(|x| d.get(x / n, x % n)).collect();
    let mut id: Vec<usize> = (0..n).collect();
    let mut size = vec![1usize; n];
    let mut active: Vec<usize> = (0..n).collect();
    let mut merges = Vec::with_capacity(n - 1);

    for step in 0..n - 1 {
        let mut best: Option<(F, (usize, usize), usize, usize)> = None;
        for (ai, &a) in active.iter().enumerate() {
            for &b in &active[ai + 1..] {
                let v = dist[a * n + b];
                let key = (id[a].min(id[b]), id[a].max(id[b]));
                let better = match best {
                    None => true,
                    Some((bv, bk, _, _)) => v < bv || (v == bv && key < bk),
                };
                if better {
                    best = Some((v, key, a, b));
                }
            }
        }
        let (height, _, a, b) = best.expect("two active clusters");
        let (sa, sb) = (size[a], size[b]);
        for &c in &active {
            if c == a || c == b {
                continue;
            }
            let (da, db) = (dist[a * n + c], dist[b * n + c]);
            let merged = match linkage {
                Linkage::Single => da.min(db),
                Linkage::Complete => da.max(db),
                Linkage::Average => {
                    (F::of(sa as f64) * da + F::of(sb as f64) * db) / F::of((sa + sb) as f64)
                }
            };
            dist[a * n + c] = merged;
            dist[c * n + a] = merged;
        }
        merges.push(Merge {
            left: id[a],
            right: id[b],
            height,
            size: sa + sb,
        });
        id[a] = n + step;
        size[a] = sa + sb;
        active.retain(|&s| s != b);
    }
    Dendrogram::from_merges(n, merges)
}

/// Cuts the tree into `k` clusters by undoing its `k - 1` highest merges.
/// Clusters are numbered by first appearance along the leaf order.
pub fn cut_dendrogram<F: Scalar>(t: &Dendrogram<F>, k: usize) -> Result<Membership> {
    let n = t.n_leaves();
    if k == 0 || k > n {
        return Err(Error::ClusterCount { k, n, min: 1 });
    }
    let mut parent: Vec<usize> = (0..2 * n - 1).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (s, m) in t.merges().iter().take(n - k).enumerate() {
        let node = n + s;
        let l = find(&mut parent, m.left);
        let r = find(&mut parent, m.right);
        parent[l] = node;
        parent[r] = node;
    }
    let mut root_label = std::collections::BTreeMap::new();
    let mut labels = vec![0; n];
    for &leaf in t.leaf_order() {
        let root = find(&mut parent, leaf);
        let next = root_label.len();
        labels[leaf] = *root_label.entry(root).or_insert(next);
    }
    Membership::new(labels, k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn three() -> DistanceMatrix<f64> {
        DistanceMatrix::from_full(3, vec![0.0, 1.0, 5.0, 1.0, 0.0, 5.0, 5.0, 5.0, 0.0]).unwrap()
    }

    #[test]
    fn hand_agglomeration() {
        let t = hcluster(&three(), Linkage::Complete).unwrap();
        let m = t.merges();
        assert_eq!((m[0].left, m[0].right, m[0].height), (0, 1, 1.0));
        assert_eq!((m[1].left, m[1].right, m[1].height), (3, 2, 5.0));
        assert_eq!(t.leaf_order(), &[0, 1, 2]);
    }

    #[test]
    fn two_points() {
        let d = DistanceMatrix::from_full(2, vec![0.0, 0.7, 0.7, 0.0]).unwrap();
        let t = hcluster(&d, Linkage::Average).unwrap();
        assert_eq!(t.merges().len(), 1);
        assert_eq!(t.merges()[0].height, 0.7);
    }

    #[test]
    fn equidistant_tie_break() {
        let d = DistanceMatrix::from_fn(3, |_, _| 1.0).unwrap();
        for linkage in [Linkage::Single, Linkage::Complete, Linkage::Average] {
            let t = hcluster(&d, linkage).unwrap();
            assert_eq!((t.merges()[0].left, t.merges()[0].right), (0, 1));
            assert!(t.merges().iter().all(|m| m.height == 1.0));
        }
    }

    #[test]
    fn leaf_order_puts_smaller_leaf_first() {
        // 2 and 3 merge first, then 0 joins them, 1 last
        let xs = [0.0, 100.0, 1.5, 1.0];
        let d = DistanceMatrix::from_fn(4, |i, j| f64::abs(xs[i] - xs[j])).unwrap();
        let t = hcluster(&d, Linkage::Single).unwrap();
        assert_eq!(t.leaf_order(), &[0, 2, 3, 1]);
    }

    #[test]
    fn cut_examples() {
        let t = hcluster(&three(), Linkage::Complete).unwrap();
        assert_eq!(cut_dendrogram(&t, 1).unwrap().labels(), &[0, 0, 0]);
        assert_eq!(cut_dendrogram(&t, 2).unwrap().labels(), &[0, 0, 1]);
        assert_eq!(cut_dendrogram(&t, 3).unwrap().labels(), &[0, 1, 2]);
        assert!(cut_dendrogram(&t, 4).is_err());
        assert!(cut_dendrogram(&t, 0).is_err());
    }

    #[test]
    fn rejects_inverted_heights() {
        let bad = vec![
            Merge {
                left: 0,
                right: 1,
                height: 2.0,
                size: 2,
            },
            Merge {
                left: 3,
                right: 2,
                height: 1.0,
                size: 3,
            },
        ];
        assert!(Dendrogram::from_merges(3, bad).is_err());
    }

    #[test]
    fn single_point_is_rejected() {
        let d = DistanceMatrix::from_full(1, vec![0.0]).unwrap();
        assert!(hcluster(&d, Linkage::Complete).is_err());
    }
}
