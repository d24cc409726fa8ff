//! A difference-bound cell: interval constraints on `s`, `t` and
//! `d = s − t` over ω².
//!
//! `(s, t) ∈ Cell` iff `s_min ≤ s ≤ s_max`, `t_min ≤ t ≤ t_max` and
//! `d_min ≤ s − t ≤ d_max`. Construction tightens the six bounds to
//! their attained values (the shortest-path closure of the three-node
//! difference constraint system), so a cell is stored canonically and
//! emptiness is decided at construction.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

use super::ext::{Ext, NEG_SENTINEL, POS_SENTINEL};
use super::interval::Upper;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell {
    s_min: BigUint,
    s_max: Upper,
    t_min: BigUint,
    t_max: Upper,
    d_min: Ext,
    d_max: Ext,
}

/// Bounds clamped into `i128` for allocation-free comparisons; present
/// only when every finite bound fits `±i32::MAX`.
#[derive(Debug, Clone, Copy)]
pub struct CellView {
    pub s_min: i128,
    pub s_max: i128,
    pub t_min: i128,
    pub t_max: i128,
    pub d_min: i128,
    pub d_max: i128,
}

fn upper_to_ext(u: &Upper) -> Ext {
    match u {
        Upper::Fin(v) => Ext::from(v),
        Upper::Inf => Ext::PosInf,
    }
}

fn ext_to_upper(e: &Ext) -> Upper {
    match e {
        Ext::Fin(v) => Upper::Fin(v.to_biguint().expect("tightened max is non-negative")),
        Ext::PosInf => Upper::Inf,
        Ext::NegInf => unreachable!("upper bound cannot be -inf"),
    }
}

/// Shortest-path tightening of the six bounds. Returns `None` when the
/// constraints are inconsistent (empty cell). Three full rounds reach
/// the closure of a three-node system; a fourth verifies the fixpoint.
fn tighten(
    mut s_min: Ext,
    mut s_max: Ext,
    mut t_min: Ext,
    mut t_max: Ext,
    mut d_min: Ext,
    mut d_max: Ext,
) -> Option<(Ext, Ext, Ext, Ext, Ext, Ext)> {
    s_min = s_min.max(Ext::fin(0));
    t_min = t_min.max(Ext::fin(0));
    for round in 0..6 {
        let before = (
            s_min.clone(),
            s_max.clone(),
            t_min.clone(),
            t_max.clone(),
            d_min.clone(),
            d_max.clone(),
        );
        s_min = s_min.max(t_min.add(&d_min));
        s_max = s_max.min(t_max.add(&d_max));
        t_min = t_min.max(s_min.sub(&d_max));
        t_max = t_max.min(s_max.sub(&d_min));
        d_min = d_min.max(s_min.sub(&t_max));
        d_max = d_max.min(s_max.sub(&t_min));
        if s_min > s_max || t_min > t_max || d_min > d_max {
            return None;
        }
        if (s_min.clone(), s_max.clone(), t_min.clone(), t_max.clone(), d_min.clone(), d_max.clone())
            == before
        {
            return Some((s_min, s_max, t_min, t_max, d_min, d_max));
        }
        // A consistent three-node system closes within three rounds;
        // further movement means a negative cycle is draining bounds.
        if round >= 4 {
            return None;
        }
    }
    unreachable!()
}

impl Cell {
    /// Build a cell from raw bound constraints; `None` when empty.
    pub fn new(s_min: Ext, s_max: Ext, t_min: Ext, t_max: Ext, d_min: Ext, d_max: Ext) -> Option<Cell> {
        let (s_min, s_max, t_min, t_max, d_min, d_max) =
            tighten(s_min, s_max, t_min, t_max, d_min, d_max)?;
        Some(Cell {
            s_min: s_min
                .as_fin()
                .expect("tightened s_min is finite")
                .to_biguint()
                .expect("tightened s_min is non-negative"),
            s_max: ext_to_upper(&s_max),
            t_min: t_min
                .as_fin()
                .expect("tightened t_min is finite")
                .to_biguint()
                .expect("tightened t_min is non-negative"),
            t_max: ext_to_upper(&t_max),
            d_min,
            d_max,
        })
    }

    /// The singleton `{(i, j)}`.
    pub fn point(i: &BigUint, j: &BigUint) -> Cell {
        Cell::new(
            Ext::from(i),
            Ext::from(i),
            Ext::from(j),
            Ext::from(j),
            Ext::NegInf,
            Ext::PosInf,
        )
        .expect("a point is nonempty")
    }

    pub fn s_min(&self) -> &BigUint {
        &self.s_min
    }
    pub fn s_max(&self) -> &Upper {
        &self.s_max
    }
    pub fn t_min(&self) -> &BigUint {
        &self.t_min
    }
    pub fn t_max(&self) -> &Upper {
        &self.t_max
    }
    pub fn d_min(&self) -> &Ext {
        &self.d_min
    }
    pub fn d_max(&self) -> &Ext {
        &self.d_max
    }

    pub fn s_max_ext(&self) -> Ext {
        upper_to_ext(&self.s_max)
    }
    pub fn t_max_ext(&self) -> Ext {
        upper_to_ext(&self.t_max)
    }

    pub fn view(&self) -> Option<CellView> {
        Some(CellView {
            s_min: Ext::from(&self.s_min).to_clamped_i128()?,
            s_max: upper_to_ext(&self.s_max).to_clamped_i128()?,
            t_min: Ext::from(&self.t_min).to_clamped_i128()?,
            t_max: upper_to_ext(&self.t_max).to_clamped_i128()?,
            d_min: self.d_min.to_clamped_i128()?,
            d_max: self.d_max.to_clamped_i128()?,
        })
    }

    pub fn contains(&self, s: &BigUint, t: &BigUint) -> bool {
        if *s < self.s_min || self.s_max_upper_lt(s) {
            return false;
        }
        if *t < self.t_min || self.t_max_upper_lt(t) {
            return false;
        }
        let d = Ext::Fin(BigInt::from(s.clone()) - BigInt::from(t.clone()));
        self.d_min <= d && d <= self.d_max
    }

    fn s_max_upper_lt(&self, p: &BigUint) -> bool {
        matches!(&self.s_max, Upper::Fin(v) if v < p)
    }
    fn t_max_upper_lt(&self, p: &BigUint) -> bool {
        matches!(&self.t_max, Upper::Fin(v) if v < p)
    }

    /// Both coordinates unbounded; on a tightened cell this happens iff
    /// the cell contains points with arbitrarily large `min(s, t)`.
    pub fn unbounded_in_both(&self) -> bool {
        self.s_max == Upper::Inf && self.t_max == Upper::Inf
    }

    pub fn is_finite(&self) -> bool {
        !matches!(self.s_max, Upper::Inf) && !matches!(self.t_max, Upper::Inf)
    }

    /// The lexicographically least member of the (nonempty) cell.
    pub fn min_point(&self) -> (BigUint, BigUint) {
        // s = s_min is attained; the least matching t is bounded below
        // by t_min and by s − d_max.
        let s = self.s_min.clone();
        let mut t = self.t_min.clone();
        if let Ext::Fin(dmax) = &self.d_max {
            let lower = BigInt::from(s.clone()) - dmax;
            if let Some(lower) = lower.to_biguint() {
                if lower > t {
                    t = lower;
                }
            }
        }
        debug_assert!(self.contains(&s, &t));
        (s, t)
    }

    /// The slice of the cell on diagonal `d`, as one interval in the
    /// offset coordinate `m = min(s, t)`.
    pub fn slice_at(&self, d: &BigInt) -> Option<(BigUint, Upper)> {
        let dx = Ext::Fin(d.clone());
        if dx < self.d_min || dx > self.d_max {
            return None;
        }
        let (lo, hi) = if d.sign() != num_bigint::Sign::Minus {
            // s = m + d, t = m
            let lo = (BigInt::from(self.s_min.clone()) - d).max(BigInt::from(self.t_min.clone()));
            let hi = upper_to_ext(&self.s_max)
                .sub(&Ext::Fin(d.clone()))
                .min(upper_to_ext(&self.t_max));
            (lo, hi)
        } else {
            // s = m, t = m − d
            let lo = (BigInt::from(self.t_min.clone()) + d).max(BigInt::from(self.s_min.clone()));
            let hi = upper_to_ext(&self.t_max)
                .add(&Ext::Fin(d.clone()))
                .min(upper_to_ext(&self.s_max));
            (lo, hi)
        };
        let lo = lo.max(BigInt::zero());
        if Ext::Fin(lo.clone()) > hi {
            return None;
        }
        Some((
            lo.to_biguint().expect("clamped non-negative"),
            ext_to_upper(&hi),
        ))
    }

    /// Intersection of two cells (constraint conjunction), tightened.
    pub fn intersect(&self, other: &Cell) -> Option<Cell> {
        Cell::new(
            Ext::from(self.s_min.clone().max(other.s_min.clone())),
            self.s_max_ext().min(other.s_max_ext()),
            Ext::from(self.t_min.clone().max(other.t_min.clone())),
            self.t_max_ext().min(other.t_max_ext()),
            self.d_min.clone().max(other.d_min.clone()),
            self.d_max.clone().min(other.d_max.clone()),
        )
    }
}

/// Allocation-free emptiness test for the intersection of two viewed
/// cells; mirrors `tighten` in clamped `i128` arithmetic.
pub fn views_intersection_empty(a: &CellView, b: &CellView) -> bool {
    #[inline]
    fn add(a: i128, b: i128) -> i128 {
        if a >= POS_SENTINEL || b >= POS_SENTINEL {
            POS_SENTINEL
        } else if a <= NEG_SENTINEL || b <= NEG_SENTINEL {
            NEG_SENTINEL
        } else {
            a + b
        }
    }
    #[inline]
    fn sub(a: i128, b: i128) -> i128 {
        add(a, -b)
    }
    let mut s_min = a.s_min.max(b.s_min);
    let mut s_max = a.s_max.min(b.s_max);
    let mut t_min = a.t_min.max(b.t_min);
    let mut t_max = a.t_max.min(b.t_max);
    let mut d_min = a.d_min.max(b.d_min);
    let mut d_max = a.d_max.min(b.d_max);
    for _ in 0..5 {
        let before = (s_min, s_max, t_min, t_max, d_min, d_max);
        s_min = s_min.max(add(t_min, d_min));
        s_max = s_max.min(add(t_max, d_max));
        t_min = t_min.max(sub(s_min, d_max));
        t_max = t_max.min(sub(s_max, d_min));
        d_min = d_min.max(sub(s_min, t_max));
        d_max = d_max.min(sub(s_max, t_min));
        if s_min > s_max || t_min > t_max || d_min > d_max {
            return true;
        }
        if (s_min, s_max, t_min, t_max, d_min, d_max) == before {
            return false;
        }
    }
    // Still draining after five rounds: a negative cycle, hence empty.
    true
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn up(u: &Upper) -> String {
            match u {
                Upper::Fin(v) => v.to_string(),
                Upper::Inf => "inf".into(),
            }
        }
        write!(
            f,
            "[s:{}..{}, t:{}..{}, d:{}..{}]",
            self.s_min,
            up(&self.s_max),
            self.t_min,
            up(&self.t_max),
            self.d_min,
            self.d_max
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn tightening_attains_bounds() {
        // Quadrant-with-diagonal: s ≥ 2, t ≥ 5, d = 0 forces s,t ≥ 5.
        let c = Cell::new(
            Ext::fin(2),
            Ext::PosInf,
            Ext::fin(5),
            Ext::PosInf,
            Ext::fin(0),
            Ext::fin(0),
        )
        .unwrap();
        assert_eq!(c.s_min(), &b(5));
        assert_eq!(c.t_min(), &b(5));
        assert!(c.contains(&b(5), &b(5)));
        assert!(!c.contains(&b(6), &b(5)));
    }

    #[test]
    fn inconsistent_constraints_are_empty() {
        assert!(Cell::new(
            Ext::fin(0),
            Ext::fin(3),
            Ext::fin(10),
            Ext::PosInf,
            Ext::fin(0),
            Ext::PosInf,
        )
        .is_none());
        assert!(Cell::new(
            Ext::fin(0),
            Ext::PosInf,
            Ext::fin(0),
            Ext::PosInf,
            Ext::fin(5),
            Ext::fin(3),
        )
        .is_none());
    }

    #[test]
    fn slices_in_offset_coordinates() {
        // The square C_3 = {s ≤ 3, t ≤ 3}.
        let c = Cell::new(
            Ext::fin(0),
            Ext::fin(3),
            Ext::fin(0),
            Ext::fin(3),
            Ext::NegInf,
            Ext::PosInf,
        )
        .unwrap();
        assert_eq!(
            c.slice_at(&BigInt::from(0)),
            Some((b(0), Upper::Fin(b(3))))
        );
        assert_eq!(
            c.slice_at(&BigInt::from(2)),
            Some((b(0), Upper::Fin(b(1))))
        );
        assert_eq!(c.slice_at(&BigInt::from(4)), None);
        assert_eq!(
            c.slice_at(&BigInt::from(-3)),
            Some((b(0), Upper::Fin(b(0))))
        );
    }

    #[test]
    fn fast_view_matches_exact_intersection() {
        let a = Cell::new(
            Ext::fin(2),
            Ext::PosInf,
            Ext::fin(0),
            Ext::fin(9),
            Ext::fin(-4),
            Ext::fin(12),
        )
        .unwrap();
        let c = Cell::new(
            Ext::fin(0),
            Ext::fin(1),
            Ext::fin(0),
            Ext::PosInf,
            Ext::NegInf,
            Ext::PosInf,
        )
        .unwrap();
        let empty_exact = a.intersect(&c).is_none();
        let empty_fast = views_intersection_empty(&a.view().unwrap(), &c.view().unwrap());
        assert_eq!(empty_exact, empty_fast);
        assert!(empty_exact);
    }
}
