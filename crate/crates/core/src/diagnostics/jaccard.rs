use std::collections::BTreeMap;

use crate::clustering::Membership;
use crate::error::{Error, Result};

/// Jaccard similarity of the co-clustered pair sets of two memberships,
/// restricted to the objects in `shared`.
///
/// `P_x` is the set of unordered pairs `{i, j}` within `shared` that `x`
/// puts in the same cluster; the result is `|P_a & P_b| / |P_a | P_b|`, or 1
/// when both sets are empty.
pub fn jaccard(a: &Membership, b: &Membership, shared: &[usize]) -> Result<f64> {
    if shared.len() < 2 {
        return Err(Error::invalid("jaccard", "need at least 2 shared objects"));
    }
    let mut seen = std::collections::BTreeSet::new();
    for &i in shared {
        if i >= a.len() || i >= b.len() {
            return Err(Error::dim(format!("shared index {i} outside a membership")));
        }
        if !seen.insert(i) {
            return Err(Error::invalid("jaccard", format!("index {i} repeated")));
        }
    }
    let la: Vec<usize> = shared.iter().map(|&i| a.labels()[i]).collect();
    let lb: Vec<usize> = shared.iter().map(|&i| b.labels()[i]).collect();
    Ok(pair_jaccard(&la, &lb))
}

/// Pair-set Jaccard of two aligned label vectors, via the contingency table.
pub(crate) fn pair_jaccard(la: &[usize], lb: &[usize]) -> f64 {
    fn pairs(c: u64) -> u64 {
        c * c.saturating_sub(1) / 2
    }
    let mut joint: BTreeMap<(usize, usize), u64> = BTreeMap::new();
    let mut ca: BTreeMap<usize, u64> = BTreeMap::new();
    let mut cb: BTreeMap<usize, u64> = BTreeMap::new();
    for (&x, &y) in la.iter().zip(lb) {
        *joint.entry((x, y)).or_default() += 1;
        *ca.entry(x).or_default() += 1;
        *cb.entry(y).or_default() += 1;
    }
    let both: u64 = joint.values().map(|&c| pairs(c)).sum();
    let pa: u64 = ca.values().map(|&c| pairs(c)).sum();
    let pb: u64 = cb.values().map(|&c| pairs(c)).sum();
    let union = pa + pb - both;
    if union == 0 {
        1.0
    } else {
        both as f64 / union as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mem(l: &[usize]) -> Membership {
        Membership::from_labels(l).unwrap()
    }

    #[test]
    fn identical_is_one() {
        let a = mem(&[0, 0, 1, 2, 1]);
        assert_eq!(jaccard(&a, &a, &[0, 1, 2, 3, 4]).unwrap(), 1.0);
    }

    #[test]
    fn one_cluster_vs_singletons() {
        let a = mem(&[0, 0, 0, 0]);
        let b = mem(&[0, 1, 2, 3]);
        assert_eq!(jaccard(&a, &b, &[0, 1, 2, 3]).unwrap(), 0.0);
    }

    #[test]
    fn both_singletons_is_one() {
        let b = mem(&[0, 1, 2]);
        assert_eq!(jaccard(&b, &b, &[0, 1, 2]).unwrap(), 1.0);
    }

    #[test]
    fn hand_enumerated_quarter() {
        let a = mem(&[0, 0, 1, 1]);
        let b = mem(&[0, 0, 0, 1]);
        assert_eq!(jaccard(&a, &b, &[0, 1, 2, 3]).unwrap(), 0.25);
    }

    #[test]
    fn restricted_to_shared() {
        let a = mem(&[0, 0, 1, 1]);
        let b = mem(&[0, 0, 0, 1]);
        assert_eq!(jaccard(&a, &b, &[0, 1]).unwrap(), 1.0);
        assert!(jaccard(&a, &b, &[0]).is_err());
        assert!(jaccard(&a, &b, &[0, 0]).is_err());
        assert!(jaccard(&a, &b, &[0, 9]).is_err());
    }
}
