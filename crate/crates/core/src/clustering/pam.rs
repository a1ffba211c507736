use super::{DistanceMatrix, Membership};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone)]
pub struct PamFit<F> {
    /// Labels by first occurrence; `membership.medoids()` is set.
    pub membership: Membership,
    /// Total distance of every object to its medoid after SWAP.
    pub cost: F,
    /// Cost after the BUILD phase.
    pub build_cost: F,
    pub swaps: usize,
}

impl<F: Scalar> PamFit<F> {
    pub fn medoids(&self) -> &[usize] {
        self.membership.medoids().expect("pam always sets medoids")
    }
}

/// Partitioning Around Medoids: greedy BUILD, then steepest-descent SWAP.
///
/// Each round evaluates every (medoid, non-medoid) exchange and applies the
/// one with the lowest resulting cost, stopping once no exchange lowers it.
/// Both phases break ties toward the lowest index, so the result is fully
/// determined by `d` and `k`.
pub fn pam<F: Scalar>(d: &DistanceMatrix<F>, k: usize) -> Result<PamFit<F>> {
    let n = d.n();
    if k == 0 || k > n {
        return Err(Error::ClusterCount { k, n, min: 1 });
    }
    let mut medoids = build(d, k);
    let mut is_medoid = vec![false; n];
    for &m in &medoids {
        is_medoid[m] = true;
    }
    let mut near = Nearest::compute(d, &medoids);
    let build_cost = near.cost();
    let mut cost = build_cost;
    let mut swaps = 0;

    loop {
        let mut best: Option<(F, usize, usize)> = None;
        for (slot, _) in medoids.iter().enumerate() {
            for h in (0..n).filter(|&h| !is_medoid[h]) {
                let trial = near.cost_after_swap(d, slot, h);
                if best.is_none_or(|(c, _, _)| trial < c) {
                    best = Some((trial, slot, h));
                }
            }
        }
        let Some((trial, slot, h)) = best else { break };
        // relative guard keeps float noise from cycling
        let tol = F::epsilon() * F::of(n as f64) * cost.abs().max(F::one());
        if !(trial < cost - tol) {
            break;
        }
        is_medoid[medoids[slot]] = false;
        is_medoid[h] = true;
        medoids[slot] = h;
        near = Nearest::compute(d, &medoids);
        cost = near.cost();
        swaps += 1;
    }

    let membership = assign(d, &medoids)?;
    Ok(PamFit {
        membership,
        cost,
        build_cost,
        swaps,
    })
}

fn build<F: Scalar>(d: &DistanceMatrix<F>, k: usize) -> Vec<usize> {
    let n = d.n();
    let first = (0..n)
        .map(|i| (i, d.row(i).iter().copied().sum::<F>()))
        .fold(None::<(usize, F)>, |acc, (i, s)| match acc {
            Some((_, b)) if b <= s => acc,
            _ => Some((i, s)),
        })
        .expect("n >= 1")
        .0;
    let mut medoids = vec![first];
    let mut is_medoid = vec![false; n];
    is_medoid[first] = true;
    let mut nearest: Vec<F> = d.row(first).to_vec();
    while medoids.len() < k {
        let mut best: Option<(usize, F)> = None;
        for c in (0..n).filter(|&c| !is_medoid[c]) {
            let gain: F = (0..n)
                .map(|j| (nearest[j] - d.get(j, c)).max(F::zero()))
                .sum();
            if best.is_none_or(|(_, g)| gain > g) {
                best = Some((c, gain));
            }
        }
        let (c, _) = best.expect("k <= n");
        medoids.push(c);
        is_medoid[c] = true;
        for (j, slot) in nearest.iter_mut().enumerate() {
            let v = d.get(j, c);
            if v < *slot {
                *slot = v;
            }
        }
    }
    medoids
}

/// Nearest and second-nearest medoid distance per object.
struct Nearest<F> {
    near_slot: Vec<usize>,
    near: Vec<F>,
    second: Vec<F>,
}

impl<F: Scalar> Nearest<F> {
    fn compute(d: &DistanceMatrix<F>, medoids: &[usize]) -> Self {
        let n = d.n();
        let mut near_slot = vec![0; n];
        let mut near = vec![F::infinity(); n];
        let mut second = vec![F::infinity(); n];
        for o in 0..n {
            for (slot, &m) in medoids.iter().enumerate() {
                let v = d.get(o, m);
                if v < near[o] {
                    second[o] = near[o];
                    near[o] = v;
                    near_slot[o] = slot;
                } else if v < second[o] {
                    second[o] = v;
                }
            }
        }
        Self {
            near_slot,
            near,
            second,
        }
    }

    fn cost(&self) -> F {
        self.near.iter().copied().sum()
    }

    /// Total cost if the medoid in `slot` were replaced by object `h`.
    fn cost_after_swap(&self, d: &DistanceMatrix<F>, slot: usize, h: usize) -> F {
        let row = d.row(h);
        (0..self.near.len())
            .map(|o| {
                let to_h = row[o];
                let kept = if self.near_slot[o] == slot {
                    self.second[o]
                } else {
                    self.near[o]
                };
                kept.min(to_h)
            })
            .sum()
    }
}

/// Labels every object by its nearest medoid (ties to the lower object
/// index); medoids always label themselves.
fn assign<F: Scalar>(d: &DistanceMatrix<F>, medoids: &[usize]) -> Result<Membership> {
    let mut sorted: Vec<usize> = medoids.to_vec();
    sorted.sort_unstable();
    let n = d.n();
    let raw: Vec<usize> = (0..n)
        .map(|o| {
            if let Ok(pos) = sorted.binary_search(&o) {
                return pos;
            }
            let mut best = 0;
            for (pos, &m) in sorted.iter().enumerate().skip(1) {
                if d.get(o, m) < d.get(o, sorted[best]) {
                    best = pos;
                }
            }
            best
        })
        .collect();
    let mem = Membership::new(raw, sorted.len())?.with_medoids(sorted)?;
    Ok(mem.canonical())
}

/// Total cost of a medoid set (sum of distances to the nearest medoid).
pub fn medoid_cost<F: Scalar>(d: &DistanceMatrix<F>, medoids: &[usize]) -> F {
    (0..d.n())
        .map(|o| {
            medoids
                .iter()
                .map(|&m| d.get(o, m))
                .fold(F::infinity(), F::min)
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn points_1d(xs: &[f64]) -> DistanceMatrix<f64> {
        DistanceMatrix::from_fn(xs.len(), |i, j| (xs[i] - xs[j]).abs()).unwrap()
    }

    #[test]
    fn collinear_single_medoid() {
        // costs: medoid 0 -> 11, medoid 1 -> 10, medoid 10 -> 19
        let fit = pam(&points_1d(&[0.0, 1.0, 10.0]), 1).unwrap();
        assert_eq!(fit.medoids(), &[1]);
        assert_eq!(fit.cost, 10.0);
    }

    #[test]
    fn k_equals_n() {
        let fit = pam(&points_1d(&[0.0, 3.0, 7.0, 8.0]), 4).unwrap();
        assert_eq!(fit.cost, 0.0);
        assert_eq!(fit.membership.labels(), &[0, 1, 2, 3]);
        assert_eq!(fit.medoids(), &[0, 1, 2, 3]);
    }

    #[test]
    fn medoid_i_has_label_i() {
        let fit = pam(&points_1d(&[9.0, 0.0, 0.5, 9.5, 20.0, 1.0]), 3).unwrap();
        for (c, &m) in fit.medoids().iter().enumerate() {
            assert_eq!(fit.membership.labels()[m], c);
        }
        assert!(fit.membership.is_canonical());
        assert!(fit.cost <= fit.build_cost);
        assert_eq!(
            fit.cost,
            medoid_cost(&points_1d(&[9.0, 0.0, 0.5, 9.5, 20.0, 1.0]), fit.medoids())
        );
    }

    #[test]
    fn duplicate_points_keep_medoids_in_own_cluster() {
        let fit = pam(&points_1d(&[1.0, 1.0, 1.0]), 3).unwrap();
        assert_eq!(fit.membership.k(), 3);
        assert_eq!(fit.cost, 0.0);
    }

    #[test]
    fn k_out_of_range() {
        assert!(pam(&points_1d(&[1.0]), 2).is_err());
        assert!(pam(&points_1d(&[1.0]), 0).is_err());
    }
}
