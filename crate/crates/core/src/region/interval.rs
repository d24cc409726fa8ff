//! Finite unions of intervals over ω, in canonical form.
//!
//! Used for the per-diagonal slices of a region. The runs are sorted,
//! pairwise disjoint and non-adjacent (a gap of at least one between
//! consecutive runs), so two interval sets are extensionally equal iff
//! they are structurally equal.

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// Upper endpoint of a run: finite (inclusive) or unbounded.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Upper {
    Fin(BigUint),
    Inf,
}

impl Upper {
    fn lt_point(&self, p: &BigUint) -> bool {
        match self {
            Upper::Fin(v) => v < p,
            Upper::Inf => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntervalSet {
    runs: Vec<(BigUint, Upper)>,
}

impl IntervalSet {
    pub fn empty() -> Self {
        IntervalSet { runs: Vec::new() }
    }

    pub fn full() -> Self {
        IntervalSet::ray(BigUint::zero())
    }

    pub fn point(p: BigUint) -> Self {
        IntervalSet {
            runs: vec![(p.clone(), Upper::Fin(p))],
        }
    }

    /// `[lo, ∞)`.
    pub fn ray(lo: BigUint) -> Self {
        IntervalSet {
            runs: vec![(lo, Upper::Inf)],
        }
    }

    /// `[lo, hi]`; empty when `hi < lo`.
    pub fn range(lo: BigUint, hi: Upper) -> Self {
        if hi.lt_point(&lo) {
            IntervalSet::empty()
        } else {
            IntervalSet {
                runs: vec![(lo, hi)],
            }
        }
    }

    /// Canonicalize an arbitrary list of candidate intervals.
    pub fn from_intervals(mut items: Vec<(BigUint, Upper)>) -> Self {
        items.retain(|(lo, hi)| !hi.lt_point(lo));
        items.sort();
        let mut runs: Vec<(BigUint, Upper)> = Vec::with_capacity(items.len());
        for (lo, hi) in items {
            if let Some((_, last_hi)) = runs.last_mut() {
                let adjacent = match last_hi {
                    Upper::Inf => true,
                    Upper::Fin(v) => lo <= &*v + 1u32,
                };
                if adjacent {
                    if *last_hi < hi {
                        *last_hi = hi;
                    }
                    continue;
                }
            }
            runs.push((lo, hi));
        }
        IntervalSet { runs }
    }

    pub fn runs(&self) -> &[(BigUint, Upper)] {
        &self.runs
    }

    pub fn is_empty(&self) -> bool {
        self.runs.is_empty()
    }

    pub fn contains(&self, p: &BigUint) -> bool {
        self.runs
            .iter()
            .any(|(lo, hi)| lo <= p && !hi.lt_point(p))
    }

    pub fn is_finite(&self) -> bool {
        !self.has_unbounded()
    }

    /// True iff the set contains a ray `[a, ∞)`.
    pub fn has_unbounded(&self) -> bool {
        matches!(self.runs.last(), Some((_, Upper::Inf)))
    }

    /// `None` when infinite.
    pub fn count(&self) -> Option<BigUint> {
        let mut total = BigUint::zero();
        for (lo, hi) in &self.runs {
            match hi {
                Upper::Inf => return None,
                Upper::Fin(hi) => total += hi - lo + 1u32,
            }
        }
        Some(total)
    }

    pub fn min(&self) -> Option<&BigUint> {
        self.runs.first().map(|(lo, _)| lo)
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut items = self.runs.clone();
        items.extend(other.runs.iter().cloned());
        IntervalSet::from_intervals(items)
    }

    pub fn intersect(&self, other: &Self) -> Self {
        let mut items = Vec::new();
        for (alo, ahi) in &self.runs {
            for (blo, bhi) in &other.runs {
                let lo = alo.max(blo).clone();
                let hi = ahi.min(bhi).clone();
                if !hi.lt_point(&lo) {
                    items.push((lo, hi));
                }
            }
        }
        IntervalSet::from_intervals(items)
    }

    /// Complement within ω.
    pub fn complement(&self) -> Self {
        let mut items = Vec::new();
        let mut next = BigUint::zero();
        for (lo, hi) in &self.runs {
            if *lo > next {
                items.push((next.clone(), Upper::Fin(lo - 1u32)));
            }
            match hi {
                Upper::Inf => return IntervalSet::from_intervals(items),
                Upper::Fin(hi) => next = hi + 1u32,
            }
        }
        items.push((next, Upper::Inf));
        IntervalSet::from_intervals(items)
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.intersect(&other.complement())
    }

    /// Shift every point up by `k` (injective on ω).
    pub fn shift_up(&self, k: &BigUint) -> Self {
        if k.is_zero() {
            return self.clone();
        }
        IntervalSet {
            runs: self
                .runs
                .iter()
                .map(|(lo, hi)| {
                    let hi = match hi {
                        Upper::Inf => Upper::Inf,
                        Upper::Fin(v) => Upper::Fin(v + k),
                    };
                    (lo + k, hi)
                })
                .collect(),
        }
    }

    pub fn iter_points(&self) -> impl Iterator<Item = BigUint> + '_ {
        self.runs.iter().flat_map(|(lo, hi)| {
            let mut cur = lo.clone();
            let hi = hi.clone();
            std::iter::from_fn(move || {
                if hi.lt_point(&cur) {
                    return None;
                }
                let out = cur.clone();
                cur += BigUint::one();
                Some(out)
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(items: &[(u64, Option<u64>)]) -> IntervalSet {
        IntervalSet::from_intervals(
            items
                .iter()
                .map(|(lo, hi)| {
                    (
                        BigUint::from(*lo),
                        hi.map(|h| Upper::Fin(BigUint::from(h))).unwrap_or(Upper::Inf),
                    )
                })
                .collect(),
        )
    }

    #[test]
    fn normalization_merges_adjacent_and_overlapping() {
        assert_eq!(set(&[(0, Some(2)), (3, Some(5))]), set(&[(0, Some(5))]));
        assert_eq!(set(&[(4, None), (0, Some(3))]), set(&[(0, None)]));
        assert_eq!(set(&[(5, Some(3))]), IntervalSet::empty());
        assert_ne!(set(&[(0, Some(2)), (4, Some(5))]), set(&[(0, Some(5))]));
    }

    #[test]
    fn boolean_ops_agree_with_pointwise_semantics() {
        let a = set(&[(0, Some(4)), (8, None)]);
        let b = set(&[(2, Some(9)), (15, Some(15))]);
        let u = a.union(&b);
        let i = a.intersect(&b);
        let d = a.difference(&b);
        let c = a.complement();
        for p in 0..40u64 {
            let p = BigUint::from(p);
            assert_eq!(u.contains(&p), a.contains(&p) || b.contains(&p));
            assert_eq!(i.contains(&p), a.contains(&p) && b.contains(&p));
            assert_eq!(d.contains(&p), a.contains(&p) && !b.contains(&p));
            assert_eq!(c.contains(&p), !a.contains(&p));
        }
        assert_eq!(a.complement().complement(), a);
        // [2,4] ∪ [8,9] ∪ {15}
        assert_eq!(i.count(), Some(BigUint::from(6u32)));
        assert_eq!(a.count(), None);
        assert!(a.has_unbounded());
        assert!(!b.has_unbounded());
    }
}
