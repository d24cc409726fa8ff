//! The image of `Cell × Cell` under bicyclic multiplication.
//!
//! For `(k, l) ∈ A` and `(m, n) ∈ B` the product is, by the three-case
//! rule,
//!
//! * `l < m`: `(s, t) = (k + (m − l), n)`,
//! * `l = m`: `(s, t) = (k, n)`,
//! * `l > m`: `(s, t) = (k, n + (l − m))`.
//!
//! Each case is the shadow of a difference-constraint system in a
//! suitable change of variables, so its image is a single cell and the
//! full product image is a union of at most three cells:
//!
//! * `l < m`: with `c = m − l ≥ 1` and `w = m`, every constraint of
//!   the two cells becomes a difference or unary constraint over
//!   `(s, t, w, c)`: `k = s − c`, `l = w − c`, `k − l = s − w`,
//!   `m = w`, `n = t`, `m − n = w − t`.
//! * `l = m`: over `(s, t, w)` with the shared middle value `w`:
//!   `k = s`, `k − l = s − w`, `n = t`, `m − n = w − t`.
//! * `l > m`: with `c = l − m ≥ 1` and `w = l`: `k = s`,
//!   `k − l = s − w`, `m = w − c`, `n = t − c`, `m − n = w − t`.
//!
//! Difference-bound systems over the integers project exactly onto any
//! subset of their variables via shortest-path closure, so reading the
//! closed bounds on `s`, `t` and `s − t` yields the exact image.

use num_bigint::BigInt;

use super::cell::Cell;
use super::ext::Ext;

/// A small difference-bound matrix over nodes `0..n`, node 0 being the
/// constant zero. `w[a][b]` bounds `x_a − x_b` from above.
struct Dbm {
    n: usize,
    w: Vec<Ext>,
}

impl Dbm {
    fn new(n: usize) -> Dbm {
        let mut w = vec![Ext::PosInf; n * n];
        for a in 0..n {
            w[a * n + a] = Ext::fin(0);
        }
        Dbm { n, w }
    }

    /// Impose `x_a − x_b ≤ c`; `PosInf` is a no-op.
    fn le(&mut self, a: usize, b: usize, c: Ext) {
        let slot = &mut self.w[a * self.n + b];
        if c < *slot {
            *slot = c;
        }
    }

    /// Impose `lo ≤ x_a − x_b ≤ hi`.
    fn between(&mut self, a: usize, b: usize, lo: Ext, hi: Ext) {
        self.le(a, b, hi);
        match lo {
            Ext::NegInf => {}
            lo => self.le(b, a, Ext::fin(0).sub(&lo)),
        }
    }

    /// Floyd–Warshall closure; `false` on a negative cycle.
    fn close(&mut self) -> bool {
        let n = self.n;
        for k in 0..n {
            for a in 0..n {
                if self.w[a * n + k] == Ext::PosInf {
                    continue;
                }
                for b in 0..n {
                    if self.w[k * n + b] == Ext::PosInf {
                        continue;
                    }
                    let via = self.w[a * n + k].add(&self.w[k * n + b]);
                    if via < self.w[a * n + b] {
                        self.w[a * n + b] = via;
                    }
                }
            }
        }
        (0..n).all(|a| self.w[a * n + a] >= Ext::fin(0))
    }

    fn upper(&self, a: usize, b: usize) -> Ext {
        self.w[a * self.n + b].clone()
    }

    /// The projected cell on `(x_1, x_2) = (s, t)`.
    fn project_cell(&self) -> Option<Cell> {
        let neg = |e: Ext| Ext::fin(0).sub(&e);
        Cell::new(
            neg(self.upper(0, 1)),
            self.upper(1, 0),
            neg(self.upper(0, 2)),
            self.upper(2, 0),
            neg(self.upper(2, 1)),
            self.upper(1, 2),
        )
    }
}

fn big(v: &num_bigint::BigUint) -> Ext {
    Ext::Fin(BigInt::from(v.clone()))
}

/// Image of the `l < m` stratum.
fn image_lt(a: &Cell, b: &Cell) -> Option<Cell> {
    // Nodes: 0, s=1, t=2, w=3 (the middle exponent m), c=4 (m − l ≥ 1).
    let mut d = Dbm::new(5);
    d.between(1, 4, big(a.s_min()), a.s_max_ext()); // k = s − c
    d.between(3, 4, big(a.t_min()), a.t_max_ext()); // l = w − c
    d.between(1, 3, a.d_min().clone(), a.d_max().clone()); // k − l = s − w
    d.between(3, 0, big(b.s_min()), b.s_max_ext()); // m = w
    d.between(2, 0, big(b.t_min()), b.t_max_ext()); // n = t
    d.between(3, 2, b.d_min().clone(), b.d_max().clone()); // m − n = w − t
    d.between(4, 0, Ext::fin(1), Ext::PosInf); // c ≥ 1
    if !d.close() {
        return None;
    }
    d.project_cell()
}

/// Image of the `l = m` stratum.
fn image_eq(a: &Cell, b: &Cell) -> Option<Cell> {
    // Nodes: 0, s=1, t=2, w=3 (the shared value l = m).
    let mut d = Dbm::new(4);
    d.between(1, 0, big(a.s_min()), a.s_max_ext()); // k = s
    d.between(3, 0, big(a.t_min()), a.t_max_ext()); // l = w
    d.between(1, 3, a.d_min().clone(), a.d_max().clone()); // k − l = s − w
    d.between(3, 0, big(b.s_min()), b.s_max_ext()); // m = w
    d.between(2, 0, big(b.t_min()), b.t_max_ext()); // n = t
    d.between(3, 2, b.d_min().clone(), b.d_max().clone()); // m − n = w − t
    if !d.close() {
        return None;
    }
    d.project_cell()
}

/// Image of the `l > m` stratum.
fn image_gt(a: &Cell, b: &Cell) -> Option<Cell> {
    // Nodes: 0, s=1, t=2, w=3 (the middle exponent l), c=4 (l − m ≥ 1).
    let mut d = Dbm::new(5);
    d.between(1, 0, big(a.s_min()), a.s_max_ext()); // k = s
    d.between(3, 0, big(a.t_min()), a.t_max_ext()); // l = w
    d.between(1, 3, a.d_min().clone(), a.d_max().clone()); // k − l = s − w
    d.between(3, 4, big(b.s_min()), b.s_max_ext()); // m = w − c
    d.between(2, 4, big(b.t_min()), b.t_max_ext()); // n = t − c
    d.between(3, 2, b.d_min().clone(), b.d_max().clone()); // m − n = w − t
    d.between(4, 0, Ext::fin(1), Ext::PosInf); // c ≥ 1
    if !d.close() {
        return None;
    }
    d.project_cell()
}

/// `{x · y : x ∈ a, y ∈ b}` as at most three cells.
pub fn product_cells(a: &Cell, b: &Cell) -> Vec<Cell> {
    [image_lt(a, b), image_eq(a, b), image_gt(a, b)]
        .into_iter()
        .flatten()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::BicyclicElement;
    use num_bigint::BigUint;

    fn cell(
        s: (u64, Option<u64>),
        t: (u64, Option<u64>),
        d: (Option<i64>, Option<i64>),
    ) -> Cell {
        Cell::new(
            Ext::fin(s.0 as i64),
            s.1.map(|v| Ext::fin(v as i64)).unwrap_or(Ext::PosInf),
            Ext::fin(t.0 as i64),
            t.1.map(|v| Ext::fin(v as i64)).unwrap_or(Ext::PosInf),
            d.0.map(Ext::fin).unwrap_or(Ext::NegInf),
            d.1.map(Ext::fin).unwrap_or(Ext::PosInf),
        )
        .unwrap()
    }

    /// Brute-force product over a factor window, compared with the
    /// symbolic image on all points that have in-window witnesses.
    fn check_against_brute(a: &Cell, b: &Cell, factor_bound: u64) {
        let cells = product_cells(a, b);
        let mut seen = std::collections::BTreeSet::new();
        for k in 0..=factor_bound {
            for l in 0..=factor_bound {
                let ka = BigUint::from(k);
                let la = BigUint::from(l);
                if !a.contains(&ka, &la) {
                    continue;
                }
                let x = BicyclicElement::from_u64(k, l);
                for m in 0..=factor_bound {
                    for n in 0..=factor_bound {
                        let mb = BigUint::from(m);
                        let nb = BigUint::from(n);
                        if !b.contains(&mb, &nb) {
                            continue;
                        }
                        let y = BicyclicElement::from_u64(m, n);
                        let p = x.mul(&y);
                        assert!(
                            cells.iter().any(|c| c.contains(p.i(), p.j())),
                            "missing product {p} of {x} and {y}"
                        );
                        seen.insert((p.i().clone(), p.j().clone()));
                    }
                }
            }
        }
        // Exactness on a window that the factor window saturates: every
        // symbolic point with small coordinates must have been seen.
        let sat = factor_bound / 3;
        for s in 0..=sat {
            for t in 0..=sat {
                let (sb, tb) = (BigUint::from(s), BigUint::from(t));
                if cells.iter().any(|c| c.contains(&sb, &tb)) {
                    assert!(
                        seen.contains(&(sb.clone(), tb.clone())),
                        "symbolic point ({s},{t}) has no witness for {a} x {b}"
                    );
                }
            }
        }
    }

    #[test]
    fn quadrant_times_quadrant_is_quadrant() {
        let q2 = cell((2, None), (2, None), (None, None));
        let cells = product_cells(&q2, &q2);
        for s in 0..=10u64 {
            for t in 0..=10u64 {
                let inside = cells
                    .iter()
                    .any(|c| c.contains(&BigUint::from(s), &BigUint::from(t)));
                assert_eq!(inside, s >= 2 && t >= 2, "({s},{t})");
            }
        }
        check_against_brute(&q2, &q2, 18);
    }

    #[test]
    fn representative_shapes_against_brute_force() {
        let shapes = [
            cell((0, Some(0)), (0, Some(0)), (None, None)), // identity point
            cell((2, Some(3)), (1, Some(1)), (None, None)), // small box
            cell((0, None), (0, None), (Some(-1), Some(-1))), // a diagonal
            cell((3, None), (0, Some(4)), (None, None)),    // vertical strip
            cell((0, Some(5)), (2, None), (Some(-6), Some(0))), // clipped band
            cell((1, None), (1, None), (Some(0), None)),    // upper wedge
        ];
        for a in &shapes {
            for b in &shapes {
                check_against_brute(a, b, 15);
            }
        }
    }
}
