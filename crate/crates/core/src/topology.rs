//! The four neighborhood-base topologies as first-class objects.
//!
//! Each instance assigns to a point `x` and a parameter `n ∈ ω` a basic
//! neighborhood `basic(x, n)`, antitone in `n`:
//!
//! * `tau1`: `{x} ∪ {(s, t) : s, t ≥ n}`;
//! * `tau2`: `{x} ∪ {(i+n+r, j+n+r) : r ≥ 1}` for `x = (i, j)`;
//! * `tauc`: `{x} ∪ (ω² \ C_n)` with `C_n = {(s, t) : s, t ≤ n}`;
//! * `discrete`: `{x}`.
//!
//! Closure and interior quantify over all `n`; for each instance that
//! quantifier reduces to a structural predicate on the canonical form
//! of the region (see the per-instance notes below), so both operators
//! are exact.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{CheckedSub, Zero};

use crate::element::BicyclicElement;
use crate::error::TopologyError;
use crate::region::{cell_quadrant, cell_s_ray, cell_t_ray, Cell, Ext, Region};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Topology {
    Tau1,
    Tau2,
    TauC,
    Discrete,
}

impl Topology {
    pub const ALL: [Topology; 4] = [
        Topology::Tau1,
        Topology::Tau2,
        Topology::TauC,
        Topology::Discrete,
    ];

    pub const NON_DISCRETE: [Topology; 3] = [Topology::Tau1, Topology::Tau2, Topology::TauC];

    pub fn name(&self) -> &'static str {
        match self {
            Topology::Tau1 => "tau1",
            Topology::Tau2 => "tau2",
            Topology::TauC => "tauc",
            Topology::Discrete => "discrete",
        }
    }

    /// The tail of `basic(x, n)` beyond the point itself, as raw cells.
    fn tail_cells(&self, x: &BicyclicElement, n: &BigUint) -> Vec<Cell> {
        match self {
            Topology::Tau1 => vec![cell_quadrant(n)],
            Topology::Tau2 => {
                let cutoff = x.diag_offset() + n + 1u32;
                crate::region::cell_diagonal_segment(&x.diag(), &cutoff, None)
                    .into_iter()
                    .collect()
            }
            Topology::TauC => {
                let above = n + 1u32;
                vec![cell_s_ray(&above), cell_t_ray(&above)]
            }
            Topology::Discrete => Vec::new(),
        }
    }

    /// The raw cells of `basic(x, n)`: the point plus the tail.
    pub fn basic_cells(&self, x: &BicyclicElement, n: &BigUint) -> Vec<Cell> {
        let mut cells = vec![Cell::point(x.i(), x.j())];
        cells.extend(self.tail_cells(x, n));
        cells
    }

    pub fn basic(&self, x: &BicyclicElement, n: &BigUint) -> Region {
        Region::from_cells(self.basic_cells(x, n))
    }

    /// The complement of `basic(x, n)` as a small raw cell list:
    /// `comp({x} ∪ S) = comp(S) ∩ comp({x})`, with `comp(S)` expanded
    /// into at most three pieces per instance and `comp({x})` into four
    /// half-planes. Used by the verification hot paths in place of the
    /// canonical complement; extensionally identical.
    pub fn basic_complement_cells(&self, x: &BicyclicElement, n: &BigUint) -> Vec<Cell> {
        let shape_comp: Vec<Cell> = match self {
            Topology::Discrete => return crate::region::point_complement_cells(x.i(), x.j()),
            // comp(Quadrant(n)) = {s < n} ∪ {t < n}.
            Topology::Tau1 => {
                let mut out = Vec::new();
                if let Some(nm1) = n.checked_sub(&BigUint::from(1u32)) {
                    out.extend(Cell::new(
                        Ext::fin(0),
                        Ext::Fin(nm1.clone().into()),
                        Ext::fin(0),
                        Ext::PosInf,
                        Ext::NegInf,
                        Ext::PosInf,
                    ));
                    out.extend(Cell::new(
                        Ext::fin(0),
                        Ext::PosInf,
                        Ext::fin(0),
                        Ext::Fin(nm1.into()),
                        Ext::NegInf,
                        Ext::PosInf,
                    ));
                }
                out
            }
            // comp(tail) = off-diagonal ∪ the initial diagonal segment.
            Topology::Tau2 => {
                let d = x.diag();
                let cutoff = x.diag_offset() + n; // tail starts at cutoff + 1
                let mut out = vec![
                    Cell::new(
                        Ext::fin(0),
                        Ext::PosInf,
                        Ext::fin(0),
                        Ext::PosInf,
                        Ext::NegInf,
                        Ext::Fin(&d - 1),
                    ),
                    Cell::new(
                        Ext::fin(0),
                        Ext::PosInf,
                        Ext::fin(0),
                        Ext::PosInf,
                        Ext::Fin(&d + 1),
                        Ext::PosInf,
                    ),
                ]
                .into_iter()
                .flatten()
                .collect::<Vec<_>>();
                out.extend(crate::region::cell_diagonal_segment(
                    &d,
                    &BigUint::zero(),
                    Some(cutoff),
                ));
                out
            }
            // comp(ω² \ C_n) = C_n.
            Topology::TauC => vec![Cell::new(
                Ext::fin(0),
                Ext::Fin(n.clone().into()),
                Ext::fin(0),
                Ext::Fin(n.clone().into()),
                Ext::NegInf,
                Ext::PosInf,
            )
            .expect("square is nonempty")],
        };
        let point_comp = crate::region::point_complement_cells(x.i(), x.j());
        let mut out = Vec::new();
        for a in &shape_comp {
            for b in &point_comp {
                out.extend(a.intersect(b));
            }
        }
        out
    }

    /// Exact isolation test: `∃n. basic(x, n) = {x}`. The three
    /// non-discrete instances have nonempty tails for every `n` — the
    /// quadrant contains `(n, n)`, the diagonal tail its first point,
    /// and `ω² \ C_n` the point `(n+1, 0)` — so only the discrete base
    /// isolates anything.
    pub fn is_isolated(&self, _x: &BicyclicElement) -> bool {
        matches!(self, Topology::Discrete)
    }

    /// Exact closure. A point `x` lies in the closure iff every
    /// `basic(x, n)` meets `r`; since `x ∈ basic(x, n)`, all of `r` is
    /// always included, and the tail conditions reduce per instance:
    ///
    /// * `tau1`: the tails are the quadrants, independent of `x`, so
    ///   either every point is a closure point (when `r` meets every
    ///   quadrant, i.e. has unbounded offset) or none beyond `r` is.
    /// * `tau2`: the tail at `x` runs down the diagonal of `x`, so `x`
    ///   is a closure point iff `r` has infinitely many points on that
    ///   diagonal.
    /// * `tauc`: the tails are cofinite, so every point is a closure
    ///   point as soon as `r` is infinite.
    pub fn closure(&self, r: &Region) -> Region {
        match self {
            Topology::Discrete => r.clone(),
            Topology::Tau1 => {
                if r.has_unbounded_offset() {
                    Region::full()
                } else {
                    r.clone()
                }
            }
            Topology::Tau2 => r.union(&r.diagonals_with_infinite_slice()),
            Topology::TauC => {
                if r.is_finite() {
                    r.clone()
                } else {
                    Region::full()
                }
            }
        }
    }

    /// Exact interior: `{x ∈ r : ∃n. basic(x, n) ⊆ r}`. With
    /// `q = complement(r)`, the condition `basic(x, n) ∩ q = ∅`
    /// stabilizes in `n`:
    ///
    /// * `tau1`: `Quadrant(n) ∩ q = ∅` for some `n` iff `q` has bounded
    ///   offset; the threshold is one past the largest offset attained
    ///   on `q`, read off its canonical form.
    /// * `tau2`: the tail at `x` avoids `q` for some `n` iff `q` meets
    ///   the diagonal of `x` only finitely often; the threshold is the
    ///   largest offset of `q` on that diagonal.
    /// * `tauc`: `(ω² \ C_n) ∩ q = ∅` for some `n` iff `q` is finite.
    pub fn interior(&self, r: &Region) -> Region {
        self.relative_interior(r, &r.complement())
    }

    /// Interior of `r` relative to the obstruction set `q` (the points
    /// that must stay out of a witnessing neighborhood).
    fn relative_interior(&self, r: &Region, q: &Region) -> Region {
        match self {
            Topology::Discrete => r.clone(),
            Topology::Tau1 => {
                if q.has_unbounded_offset() {
                    Region::empty()
                } else {
                    r.clone()
                }
            }
            Topology::Tau2 => r.intersect(&q.diagonals_with_finite_slice()),
            Topology::TauC => {
                if q.is_finite() {
                    r.clone()
                } else {
                    Region::empty()
                }
            }
        }
    }

    pub fn is_regular_open(&self, r: &Region) -> bool {
        self.interior(&self.closure(r)) == *r
    }

    /// Relative closure `cl_Y(r) = cl(r) ∩ Y`; requires `r ⊆ Y`.
    pub fn subspace_closure(&self, y: &Region, r: &Region) -> Result<Region, TopologyError> {
        check_subspace(y, r)?;
        Ok(self.closure(r).intersect(y))
    }

    /// Relative interior `{x ∈ r : ∃n. basic(x, n) ∩ Y ⊆ r}`; requires
    /// `r ⊆ Y`. Same stabilization as `interior`, with the obstruction
    /// set `Y \ r` in place of the absolute complement.
    pub fn subspace_interior(&self, y: &Region, r: &Region) -> Result<Region, TopologyError> {
        check_subspace(y, r)?;
        Ok(self.relative_interior(r, &y.difference(r)))
    }

    /// Minimal parameters `(n_x, n_y)` with `y ∉ basic(x, n_x)` and
    /// `x ∉ basic(y, n_y)`; exists for every pair of distinct points.
    pub fn t1_separation(
        &self,
        x: &BicyclicElement,
        y: &BicyclicElement,
    ) -> (BigUint, BigUint) {
        assert!(x != y, "t1_separation requires distinct points");
        (self.t1_half(x, y), self.t1_half(y, x))
    }

    /// Minimal `n` with `other ∉ basic(base, n)`.
    fn t1_half(&self, base: &BicyclicElement, other: &BicyclicElement) -> BigUint {
        match self {
            Topology::Discrete => BigUint::zero(),
            // other = (s, t) is in the quadrant iff n ≤ min(s, t).
            Topology::Tau1 => other.diag_offset() + 1u32,
            // Tail membership needs the same diagonal and an offset
            // beyond base's offset plus n.
            Topology::Tau2 => {
                if base.diag() != other.diag() || other.diag_offset() <= base.diag_offset() {
                    BigUint::zero()
                } else {
                    other.diag_offset() - base.diag_offset()
                }
            }
            // other is excluded iff it falls inside C_n.
            Topology::TauC => other.i().max(other.j()).clone(),
        }
    }
}

fn check_subspace(y: &Region, r: &Region) -> Result<(), TopologyError> {
    if r.subset(y) {
        Ok(())
    } else {
        let witness = r
            .difference(y)
            .min_point()
            .expect("non-subset difference is nonempty");
        Err(TopologyError::NotInSubspace {
            witness: witness.to_string(),
        })
    }
}

impl fmt::Display for Topology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Topology {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "tau1" => Ok(Topology::Tau1),
            "tau2" => Ok(Topology::Tau2),
            "tauc" => Ok(Topology::TauC),
            "discrete" => Ok(Topology::Discrete),
            other => Err(format!(
                "unknown topology {other:?}; expected tau1, tau2, tauc or discrete"
            )),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(i: u64, j: u64) -> BicyclicElement {
        BicyclicElement::from_u64(i, j)
    }

    fn n(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn basic_neighborhood_shapes() {
        let u = Topology::Tau1.basic(&e(0, 0), &n(2));
        assert_eq!(u, Region::point(&e(0, 0)).union(&Region::quadrant(&n(2))));

        let o = Topology::Tau2.basic(&e(1, 0), &n(2));
        for (pt, inside) in [
            ((1u64, 0u64), true),
            ((4, 3), true),
            ((5, 4), true),
            ((3, 2), false),
            ((2, 1), false),
            ((4, 4), false),
        ] {
            assert_eq!(o.member(&e(pt.0, pt.1)), inside, "{pt:?}");
        }

        let w = Topology::TauC.basic(&e(1, 1), &n(2));
        for s in 0..=6u64 {
            for t in 0..=6u64 {
                let expect = (s, t) == (1, 1) || s >= 3 || t >= 3;
                assert_eq!(w.member_u64(s, t), expect, "({s},{t})");
            }
        }

        assert_eq!(
            Topology::Discrete.basic(&e(3, 4), &n(9)),
            Region::point(&e(3, 4))
        );
    }

    #[test]
    fn base_axioms_small_sweep() {
        for top in Topology::ALL {
            for i in 0..4u64 {
                for j in 0..4 {
                    let x = e(i, j);
                    for k in 0..5u64 {
                        let b0 = top.basic(&x, &n(k));
                        let b1 = top.basic(&x, &n(k + 1));
                        assert!(b0.member(&x));
                        assert!(b1.subset(&b0), "{top} antitone at {x}, n={k}");
                    }
                }
            }
        }
    }

    #[test]
    fn isolation_is_discrete_only() {
        for top in Topology::NON_DISCRETE {
            for i in 0..6u64 {
                for j in 0..6 {
                    assert!(!top.is_isolated(&e(i, j)));
                    // Window confirmation: no basic neighborhood up to
                    // n = 20 collapses to the point.
                    for k in (0..=20u64).step_by(5) {
                        let b = top.basic(&e(i, j), &n(k));
                        assert!(b != Region::point(&e(i, j)));
                    }
                }
            }
        }
        assert!(Topology::Discrete.is_isolated(&e(3, 3)));
    }

    #[test]
    fn closure_examples() {
        // cl_tau2 of a basic neighborhood is the whole comparability
        // class of the anchor.
        let o = Topology::Tau2.basic(&e(1, 2), &n(1));
        assert_eq!(Topology::Tau2.closure(&o), e(1, 2).updown_set());

        // cl_tau1 of a basic neighborhood is everything.
        let u = Topology::Tau1.basic(&e(0, 0), &n(3));
        assert_eq!(Topology::Tau1.closure(&u), Region::full());

        // Finite regions are tauc-closed.
        let f = e(4, 2).up_set();
        assert_eq!(Topology::TauC.closure(&f), f);
        assert_eq!(
            Topology::TauC.closure(&Region::quadrant(&n(5))),
            Region::full()
        );
    }

    #[test]
    fn interior_examples() {
        assert_eq!(Topology::Tau1.interior(&Region::full()), Region::full());
        let r = Region::point(&e(0, 0)).union(&e(2, 2).down_set());
        assert!(Topology::Tau1.interior(&r).is_empty());
        let w = Topology::TauC.basic(&e(1, 1), &n(2));
        assert_eq!(Topology::TauC.interior(&w), w);
        // tau2: a union of finitely many full diagonals is open.
        let diags = e(0, 1).updown_set().union(&e(2, 0).updown_set());
        assert_eq!(Topology::Tau2.interior(&diags), diags);
    }

    #[test]
    fn regular_open_examples() {
        assert!(!Topology::Tau1.is_regular_open(&Topology::Tau1.basic(&e(0, 0), &n(2))));
        assert!(!Topology::Tau2.is_regular_open(&Topology::Tau2.basic(&e(1, 2), &n(1))));
        for r in [
            Region::empty(),
            Region::point(&e(2, 3)),
            Region::quadrant(&n(4)),
        ] {
            assert!(Topology::Discrete.is_regular_open(&r));
        }
    }

    #[test]
    fn subspace_operators() {
        let y = e(1, 2).down_set();
        // The trace of O_1((1,2)) on the down-set.
        let trace = Topology::Tau2
            .basic(&e(1, 2), &n(1))
            .intersect(&y);
        let cl = Topology::Tau2.subspace_closure(&y, &trace).unwrap();
        assert_eq!(cl, y);

        let idems = e(0, 0).updown_set();
        let tail = Region::quadrant(&n(5)).intersect(&idems);
        let cl = Topology::Tau1.subspace_closure(&idems, &tail).unwrap();
        assert_eq!(cl, idems);

        assert_eq!(
            Topology::Tau2.subspace_closure(&y, &Region::empty()).unwrap(),
            Region::empty()
        );

        let err = Topology::Tau1.subspace_closure(&y, &Region::quadrant(&n(1)));
        assert!(err.is_err());

        // Relative interior of the trace: every deeper tail point keeps
        // a relative neighborhood inside the trace, the anchor does not.
        let int = Topology::Tau2.subspace_interior(&y, &trace).unwrap();
        assert_eq!(int, trace);
    }

    #[test]
    fn t1_separation_minimality() {
        let cases = [
            (Topology::Tau1, e(0, 0), e(5, 5)),
            (Topology::Tau2, e(1, 0), e(4, 3)),
            (Topology::Tau2, e(4, 3), e(1, 0)),
            (Topology::TauC, e(0, 0), e(1, 1)),
            (Topology::Discrete, e(2, 1), e(1, 2)),
        ];
        for (top, x, y) in cases {
            let (nx, ny) = top.t1_separation(&x, &y);
            assert!(!top.basic(&x, &nx).member(&y));
            assert!(!top.basic(&y, &ny).member(&x));
            if nx > BigUint::zero() {
                assert!(top.basic(&x, &(&nx - 1u32)).member(&y), "{top} nx not minimal");
            }
            if ny > BigUint::zero() {
                assert!(top.basic(&y, &(&ny - 1u32)).member(&x), "{top} ny not minimal");
            }
        }
        // Spec-pinned instances.
        let (nx, ny) = Topology::Tau1.t1_separation(&e(0, 0), &e(5, 5));
        assert_eq!((nx, ny), (n(6), n(1)));
        let (nx, ny) = Topology::TauC.t1_separation(&e(0, 0), &e(1, 1));
        // n_y = 0 is already enough: W_0((1,1)) misses (0,0).
        assert_eq!((nx, ny), (n(1), n(0)));
    }
}
