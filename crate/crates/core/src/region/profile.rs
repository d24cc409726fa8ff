//! Canonical diagonal-slice decomposition of a region.
//!
//! A subset of ω² is sliced along the diagonals `d = s − t ∈ ℤ`; the
//! slice on diagonal `d` lives in the offset coordinate `m = min(s, t)`
//! and, for a finite union of cells, is a finite union of intervals.
//! Moving away from the transient zone determined by the cells'
//! constants, the slices stabilize, so the whole slice function is
//! captured by finitely many maximal constant runs plus the two limit
//! slices. Maximal runs are determined by the point set alone, which
//! makes the decomposition a true normal form: two regions are
//! extensionally equal iff their profiles (and hence their rendered
//! cell lists) are identical.

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

use super::cell::Cell;
use super::ext::Ext;
use super::interval::{IntervalSet, Upper};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Run {
    pub d_lo: BigInt,
    pub d_hi: BigInt,
    pub set: IntervalSet,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Profile {
    /// Every diagonal has the same slice.
    Uniform(IntervalSet),
    /// Slices equal `neg` for all `d ≤ lo`, `pos` for all `d ≥ hi`,
    /// with explicit maximal runs covering `lo < d < hi`. Both `lo`
    /// and `hi` are extremal (the adjacent run differs), and adjacent
    /// runs differ, so the representation is unique.
    Mixed {
        lo: BigInt,
        neg: IntervalSet,
        runs: Vec<Run>,
        hi: BigInt,
        pos: IntervalSet,
    },
}

/// One maximal segment of the slice function: `d ∈ [d_lo, d_hi]` with a
/// constant slice.
type Segment = (Ext, Ext, IntervalSet);

impl Profile {
    pub fn empty() -> Profile {
        Profile::Uniform(IntervalSet::empty())
    }

    /// Assemble a profile from a contiguous partition of ℤ into
    /// constant-slice segments; adjacent equal segments are merged, so
    /// the result is in normal form.
    fn from_segments(segs: Vec<Segment>) -> Profile {
        debug_assert!(!segs.is_empty());
        debug_assert_eq!(segs.first().unwrap().0, Ext::NegInf);
        debug_assert_eq!(segs.last().unwrap().1, Ext::PosInf);
        let mut merged: Vec<Segment> = Vec::with_capacity(segs.len());
        for (lo, hi, set) in segs {
            debug_assert!(lo <= hi);
            if let Some((_, last_hi, last_set)) = merged.last_mut() {
                if *last_set == set {
                    *last_hi = hi;
                    continue;
                }
                debug_assert_eq!(
                    last_hi.as_fin().map(|v| v + 1),
                    lo.as_fin().cloned().map(BigInt::from),
                    "segments must be contiguous"
                );
            }
            merged.push((lo, hi, set));
        }
        if merged.len() == 1 {
            return Profile::Uniform(merged.pop().unwrap().2);
        }
        let (_, neg_hi, neg) = merged.remove(0);
        let (pos_lo, _, pos) = merged.pop().unwrap();
        let lo = neg_hi.as_fin().expect("interior bound is finite").clone();
        let hi = pos_lo.as_fin().expect("interior bound is finite").clone();
        let runs = merged
            .into_iter()
            .map(|(a, b, set)| Run {
                d_lo: a.as_fin().unwrap().clone(),
                d_hi: b.as_fin().unwrap().clone(),
                set,
            })
            .collect();
        Profile::Mixed {
            lo,
            neg,
            runs,
            hi,
            pos,
        }
    }

    fn segments(&self) -> Vec<Segment> {
        match self {
            Profile::Uniform(s) => vec![(Ext::NegInf, Ext::PosInf, s.clone())],
            Profile::Mixed {
                lo,
                neg,
                runs,
                hi,
                pos,
            } => {
                let mut out = Vec::with_capacity(runs.len() + 2);
                out.push((Ext::NegInf, Ext::Fin(lo.clone()), neg.clone()));
                for r in runs {
                    out.push((
                        Ext::Fin(r.d_lo.clone()),
                        Ext::Fin(r.d_hi.clone()),
                        r.set.clone(),
                    ));
                }
                out.push((Ext::Fin(hi.clone()), Ext::PosInf, pos.clone()));
                out
            }
        }
    }

    /// Compute the profile of a finite union of cells by evaluating the
    /// slices across the transient zone `[h_lo, h_hi]` spanned by the
    /// cells' constants; outside that zone every cell's slice equals
    /// its limit. The zone width is linear in the magnitude of the
    /// constants, which is the inherent size of the normal form.
    pub fn from_cells(cells: &[Cell]) -> Profile {
        if cells.is_empty() {
            return Profile::empty();
        }
        let mut pos_items = Vec::new();
        let mut neg_items = Vec::new();
        let mut cand_lo = BigInt::zero();
        let mut cand_hi = BigInt::zero();
        let mut widen = |v: BigInt| {
            if v < cand_lo {
                cand_lo = v.clone();
            }
            if v > cand_hi {
                cand_hi = v;
            }
        };
        for c in cells {
            if *c.d_max() == Ext::PosInf {
                pos_items.push((c.t_min().clone(), c.t_max().clone()));
            }
            if *c.d_min() == Ext::NegInf {
                neg_items.push((c.s_min().clone(), c.s_max().clone()));
            }
            widen(BigInt::from(c.s_min().clone()) - BigInt::from(c.t_min().clone()));
            if let (Upper::Fin(sm), Upper::Fin(tm)) = (c.s_max(), c.t_max()) {
                widen(BigInt::from(sm.clone()) - BigInt::from(tm.clone()));
            }
            if let Ext::Fin(v) = c.d_min() {
                widen(v.clone());
            }
            if let Ext::Fin(v) = c.d_max() {
                widen(v.clone());
            }
        }
        let pos_limit = IntervalSet::from_intervals(pos_items);
        let neg_limit = IntervalSet::from_intervals(neg_items);
        let h_lo: BigInt = cand_lo - 1;
        let h_hi: BigInt = cand_hi + 1;

        let mut segs: Vec<Segment> = Vec::new();
        segs.push((Ext::NegInf, Ext::Fin(&h_lo - 1), neg_limit.clone()));
        let mut d = h_lo.clone();
        while d <= h_hi {
            let slice = IntervalSet::from_intervals(
                cells.iter().filter_map(|c| c.slice_at(&d)).collect(),
            );
            segs.push((Ext::Fin(d.clone()), Ext::Fin(d.clone()), slice));
            d += 1;
        }
        segs.push((Ext::Fin(&h_hi + 1), Ext::PosInf, pos_limit));
        debug_assert_eq!(segs[1].2, neg_limit, "slices must stabilize below h_lo");
        Profile::from_segments(segs)
    }

    /// Pointwise binary operation on slices.
    pub fn zip(&self, other: &Profile, f: impl Fn(&IntervalSet, &IntervalSet) -> IntervalSet) -> Profile {
        let a = self.segments();
        let b = other.segments();
        let (mut ia, mut ib) = (0usize, 0usize);
        let mut cur = Ext::NegInf;
        let mut out: Vec<Segment> = Vec::new();
        while ia < a.len() && ib < b.len() {
            let hi = a[ia].1.clone().min(b[ib].1.clone());
            out.push((cur.clone(), hi.clone(), f(&a[ia].2, &b[ib].2)));
            if a[ia].1 == hi {
                ia += 1;
            }
            if b[ib].1 == hi {
                ib += 1;
            }
            match &hi {
                Ext::Fin(v) => cur = Ext::Fin(v + 1),
                Ext::PosInf => break,
                Ext::NegInf => unreachable!(),
            }
        }
        Profile::from_segments(out)
    }

    /// Pointwise unary operation on slices.
    pub fn map(&self, f: impl Fn(&IntervalSet) -> IntervalSet) -> Profile {
        Profile::from_segments(
            self.segments()
                .into_iter()
                .map(|(lo, hi, s)| (lo, hi, f(&s)))
                .collect(),
        )
    }

    /// The profile of `{x⁻¹ : x ∈ R}`: the offset coordinate is
    /// invariant under the swap, diagonals negate.
    pub fn reverse(&self) -> Profile {
        match self {
            Profile::Uniform(s) => Profile::Uniform(s.clone()),
            Profile::Mixed {
                lo,
                neg,
                runs,
                hi,
                pos,
            } => Profile::Mixed {
                lo: -hi,
                neg: pos.clone(),
                runs: runs
                    .iter()
                    .rev()
                    .map(|r| Run {
                        d_lo: -&r.d_hi,
                        d_hi: -&r.d_lo,
                        set: r.set.clone(),
                    })
                    .collect(),
                hi: -lo,
                pos: neg.clone(),
            },
        }
    }

    pub fn slice_at(&self, d: &BigInt) -> &IntervalSet {
        match self {
            Profile::Uniform(s) => s,
            Profile::Mixed {
                lo,
                neg,
                runs,
                hi,
                pos,
            } => {
                if d <= lo {
                    neg
                } else if d >= hi {
                    pos
                } else {
                    &runs
                        .iter()
                        .find(|r| r.d_lo <= *d && *d <= r.d_hi)
                        .expect("runs cover the interior")
                        .set
                }
            }
        }
    }

    pub fn is_empty(&self) -> bool {
        match self {
            Profile::Uniform(s) => s.is_empty(),
            Profile::Mixed { .. } => false, // a mixed profile has at least two distinct slices
        }
    }

    pub fn is_finite(&self) -> bool {
        match self {
            Profile::Uniform(s) => s.is_empty(),
            Profile::Mixed {
                neg, runs, pos, ..
            } => {
                neg.is_empty()
                    && pos.is_empty()
                    && runs.iter().all(|r| r.set.is_finite())
            }
        }
    }

    /// `None` when infinite.
    pub fn cardinality(&self) -> Option<BigUint> {
        match self {
            Profile::Uniform(s) => {
                if s.is_empty() {
                    Some(BigUint::zero())
                } else {
                    None
                }
            }
            Profile::Mixed {
                neg, runs, pos, ..
            } => {
                if !neg.is_empty() || !pos.is_empty() {
                    return None;
                }
                let mut total = BigUint::zero();
                for r in runs {
                    let width: BigInt = &r.d_hi - &r.d_lo + 1;
                    let width = width.to_biguint().expect("run bounds are ordered");
                    total += width * r.set.count()?;
                }
                Some(total)
            }
        }
    }

    /// True iff the region contains points with arbitrarily large
    /// `min(s, t)`; since each segment's slice is constant, this means
    /// some slice contains a ray.
    pub fn has_unbounded_offset(&self) -> bool {
        self.any_segment(|s| s.has_unbounded())
    }

    fn any_segment(&self, pred: impl Fn(&IntervalSet) -> bool) -> bool {
        match self {
            Profile::Uniform(s) => pred(s),
            Profile::Mixed {
                neg, runs, pos, ..
            } => pred(neg) || pred(pos) || runs.iter().any(|r| pred(&r.set)),
        }
    }

    /// Characteristic profile of `{d : pred(slice(d))}` as full/empty
    /// diagonals.
    pub fn diagonals_where(&self, pred: impl Fn(&IntervalSet) -> bool) -> Profile {
        self.map(|s| {
            if pred(s) {
                IntervalSet::full()
            } else {
                IntervalSet::empty()
            }
        })
    }

    /// Render the canonical cell list, one cell per (segment, interval)
    /// pair. An offset ray `min(s, t) ≥ a` is the single cell
    /// `{s ≥ a, t ≥ a}`; a bounded offset interval `min(s, t) ∈ [a, b]`
    /// constrains whichever coordinate is the offset on the segment's
    /// side, so segments straddling the sign change split in two.
    pub fn render_cells(&self) -> Vec<Cell> {
        let mut out = Vec::new();
        for (d_lo, d_hi, set) in self.segments() {
            for (a, b) in set.runs() {
                let lo = Ext::from(a);
                match b {
                    Upper::Inf => {
                        out.extend(Cell::new(
                            lo.clone(),
                            Ext::PosInf,
                            lo.clone(),
                            Ext::PosInf,
                            d_lo.clone(),
                            d_hi.clone(),
                        ));
                    }
                    Upper::Fin(v) => {
                        let hi = Ext::from(v);
                        // Portion with d ≤ 0: the offset is s.
                        if d_lo <= Ext::fin(0) {
                            out.extend(Cell::new(
                                lo.clone(),
                                hi.clone(),
                                Ext::fin(0),
                                Ext::PosInf,
                                d_lo.clone(),
                                d_hi.clone().min(Ext::fin(0)),
                            ));
                        }
                        // Portion with d ≥ 1: the offset is t.
                        if d_hi >= Ext::fin(1) {
                            out.extend(Cell::new(
                                Ext::fin(0),
                                Ext::PosInf,
                                lo.clone(),
                                hi,
                                d_lo.clone().max(Ext::fin(1)),
                                d_hi.clone(),
                            ));
                        }
                    }
                }
            }
        }
        out.sort();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: u64) -> BigUint {
        BigUint::from(v)
    }

    fn quadrant(n: u64) -> Cell {
        Cell::new(
            Ext::fin(n as i64),
            Ext::PosInf,
            Ext::fin(n as i64),
            Ext::PosInf,
            Ext::NegInf,
            Ext::PosInf,
        )
        .unwrap()
    }

    #[test]
    fn quadrant_profile_is_uniform_and_round_trips() {
        let p = Profile::from_cells(&[quadrant(2)]);
        assert_eq!(p, Profile::Uniform(IntervalSet::ray(b(2))));
        let cells = p.render_cells();
        assert_eq!(cells, vec![quadrant(2)]);
    }

    #[test]
    fn split_representations_canonicalize_identically() {
        // Quadrant(1) written as two half-planes split along d.
        let upper = Cell::new(
            Ext::fin(1),
            Ext::PosInf,
            Ext::fin(1),
            Ext::PosInf,
            Ext::NegInf,
            Ext::fin(3),
        )
        .unwrap();
        let lower = Cell::new(
            Ext::fin(1),
            Ext::PosInf,
            Ext::fin(1),
            Ext::PosInf,
            Ext::fin(4),
            Ext::PosInf,
        )
        .unwrap();
        let split = Profile::from_cells(&[upper, lower]);
        let whole = Profile::from_cells(&[quadrant(1)]);
        assert_eq!(split, whole);
        assert_eq!(split.render_cells(), whole.render_cells());
    }

    #[test]
    fn zip_union_and_intersection() {
        let a = Profile::from_cells(&[quadrant(3)]);
        let tail = Cell::new(
            Ext::fin(0),
            Ext::PosInf,
            Ext::fin(0),
            Ext::PosInf,
            Ext::fin(-1),
            Ext::fin(-1),
        )
        .unwrap();
        let t = Profile::from_cells(&[tail]);
        let inter = a.zip(&t, |x, y| x.intersect(y));
        // Diagonal d = −1 clipped at offset 3: the tail {(3+k, 4+k)}.
        let d = BigInt::from(-1);
        assert_eq!(inter.slice_at(&d), &IntervalSet::ray(b(3)));
        assert!(inter.slice_at(&BigInt::from(0)).is_empty());
        let un = a.zip(&t, |x, y| x.union(y));
        assert!(un.slice_at(&d).contains(&b(0)));
        assert_eq!(un.slice_at(&BigInt::from(2)), &IntervalSet::ray(b(3)));
    }

    #[test]
    fn reverse_negates_diagonals() {
        let tail = Cell::new(
            Ext::fin(0),
            Ext::PosInf,
            Ext::fin(0),
            Ext::PosInf,
            Ext::fin(2),
            Ext::fin(5),
        )
        .unwrap();
        let p = Profile::from_cells(&[tail]);
        let r = p.reverse();
        assert_eq!(
            p.slice_at(&BigInt::from(3)),
            r.slice_at(&BigInt::from(-3))
        );
        assert_eq!(r.reverse(), p);
    }

    #[test]
    fn cardinality_of_a_box() {
        // C_2 = {s ≤ 2, t ≤ 2}: nine points.
        let c = Cell::new(
            Ext::fin(0),
            Ext::fin(2),
            Ext::fin(0),
            Ext::fin(2),
            Ext::NegInf,
            Ext::PosInf,
        )
        .unwrap();
        let p = Profile::from_cells(&[c]);
        assert_eq!(p.cardinality(), Some(b(9)));
        assert!(p.is_finite());
        assert!(!p.has_unbounded_offset());
    }
}
