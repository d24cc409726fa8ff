//! Independent ground truth: string rewriting and bounded-window set
//! evaluation.
//!
//! Nothing here goes through the symbolic multiplication or the region
//! profile machinery. Words are reduced with the single rule `pq → ε`;
//! window bitmaps evaluate cell constraints directly. The crosscheck
//! entry points compare symbolic results against these brute-force
//! paths and report the first disagreement.

use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;

use crate::element::{solve_left, solve_right, solve_two_sided, BicyclicElement};
use crate::error::WordError;
use crate::region::{Cell, Ext, Region, Upper};
use crate::topology::Topology;

/// The square window `[0, N]²` used by every brute-force evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Window {
    pub n: u64,
}

impl Window {
    pub fn new(n: u64) -> Window {
        Window { n }
    }

    pub fn points(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        let n = self.n;
        (0..=n).flat_map(move |s| (0..=n).map(move |t| (s, t)))
    }
}

/// Reduce a word over `{p, q}` by deleting `pq` factors until none
/// remain. Deletion cannot create a `q` after a `p` that was not
/// already there, so every fully reduced word is a normal form
/// `q^i p^j`; the rule has no overlapping redexes, hence the result is
/// strategy-independent. Whitespace is ignored.
pub fn word_reduce(word: &str) -> Result<BicyclicElement, WordError> {
    let mut stack: Vec<u8> = Vec::with_capacity(word.len());
    for (pos, ch) in word.char_indices() {
        match ch {
            'q' => {
                if stack.last() == Some(&b'p') {
                    stack.pop();
                } else {
                    stack.push(b'q');
                }
            }
            'p' => stack.push(b'p'),
            c if c.is_whitespace() => {}
            c => return Err(WordError { pos, ch: c }),
        }
    }
    let qs = stack.iter().take_while(|&&c| c == b'q').count();
    debug_assert!(
        stack[qs..].iter().all(|&c| c == b'p'),
        "reduced word must be a normal form"
    );
    Ok(BicyclicElement::new(
        BigUint::from(qs),
        BigUint::from(stack.len() - qs),
    ))
}

/// Multiplication through the rewriting system: concatenate the normal
/// forms and reduce. Exponents must fit in memory as repeated symbols.
pub fn oracle_mul(a: &BicyclicElement, b: &BicyclicElement) -> BicyclicElement {
    let len = |v: &BigUint| v.to_usize().expect("oracle exponent fits a machine word");
    let mut word = String::new();
    for (sym, count) in [
        ('q', len(a.i())),
        ('p', len(a.j())),
        ('q', len(b.i())),
        ('p', len(b.j())),
    ] {
        for _ in 0..count {
            word.push(sym);
        }
    }
    word_reduce(&word).expect("constructed word has no invalid symbols")
}

/// Exact membership bitmap of a cell list over a window. Constraint
/// evaluation is deliberately separate from `Region::member`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindowSet {
    n: u64,
    bits: Vec<bool>,
}

impl WindowSet {
    pub fn new_empty(w: Window) -> WindowSet {
        let side = (w.n + 1) as usize;
        WindowSet {
            n: w.n,
            bits: vec![false; side * side],
        }
    }

    pub fn from_fn(w: Window, pred: impl Fn(u64, u64) -> bool) -> WindowSet {
        let mut out = WindowSet::new_empty(w);
        for (s, t) in w.points() {
            if pred(s, t) {
                out.set(s, t, true);
            }
        }
        out
    }

    /// Evaluate the raw cell constraints pointwise.
    pub fn from_cells(cells: &[Cell], w: Window) -> WindowSet {
        WindowSet::from_fn(w, |s, t| {
            let sb = BigUint::from(s);
            let tb = BigUint::from(t);
            let d = BigInt::from(s as i64 - t as i64);
            cells.iter().any(|c| {
                *c.s_min() <= sb
                    && match c.s_max() {
                        Upper::Fin(v) => sb <= *v,
                        Upper::Inf => true,
                    }
                    && *c.t_min() <= tb
                    && match c.t_max() {
                        Upper::Fin(v) => tb <= *v,
                        Upper::Inf => true,
                    }
                    && *c.d_min() <= Ext::Fin(d.clone())
                    && Ext::Fin(d.clone()) <= *c.d_max()
            })
        })
    }

    pub fn from_region(r: &Region, w: Window) -> WindowSet {
        WindowSet::from_cells(r.cells(), w)
    }

    fn idx(&self, s: u64, t: u64) -> usize {
        (s * (self.n + 1) + t) as usize
    }

    pub fn get(&self, s: u64, t: u64) -> bool {
        self.bits[self.idx(s, t)]
    }

    pub fn set(&mut self, s: u64, t: u64, v: bool) {
        let i = self.idx(s, t);
        self.bits[i] = v;
    }

    pub fn window(&self) -> Window {
        Window { n: self.n }
    }

    pub fn zip(&self, other: &WindowSet, f: impl Fn(bool, bool) -> bool) -> WindowSet {
        assert_eq!(self.n, other.n);
        WindowSet {
            n: self.n,
            bits: self
                .bits
                .iter()
                .zip(&other.bits)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    pub fn complement(&self) -> WindowSet {
        WindowSet {
            n: self.n,
            bits: self.bits.iter().map(|&b| !b).collect(),
        }
    }

    pub fn transpose(&self) -> WindowSet {
        WindowSet::from_fn(self.window(), |s, t| self.get(t, s))
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&b| !b)
    }

    pub fn count(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    /// Lexicographically first point where the two bitmaps differ.
    pub fn first_diff(&self, other: &WindowSet) -> Option<(u64, u64)> {
        assert_eq!(self.n, other.n);
        self.window()
            .points()
            .find(|&(s, t)| self.get(s, t) != other.get(s, t))
    }

    /// Brute-force product: multiply every member pair with the
    /// three-case rule inlined over machine integers (window members
    /// cannot overflow). Points landing outside the window are
    /// discarded.
    pub fn brute_product(&self, other: &WindowSet) -> WindowSet {
        let mut out = WindowSet::new_empty(self.window());
        let members = |ws: &WindowSet| {
            ws.window()
                .points()
                .filter(|&(s, t)| ws.get(s, t))
                .collect::<Vec<_>>()
        };
        let xs = members(self);
        let ys = members(other);
        for &(k, l) in &xs {
            for &(m, n) in &ys {
                let (s, t) = mul_u64(k, l, m, n);
                if s <= self.n && t <= self.n {
                    out.set(s, t, true);
                }
            }
        }
        out
    }
}

/// The three-case multiplication over machine integers, for window
/// sweeps.
pub fn mul_u64(k: u64, l: u64, m: u64, n: u64) -> (u64, u64) {
    use std::cmp::Ordering;
    match l.cmp(&m) {
        Ordering::Less => (k + (m - l), n),
        Ordering::Equal => (k, n),
        Ordering::Greater => (k, (l - m) + n),
    }
}

/// Membership in `basic(x, n)` straight from the definitions, without
/// going through the region machinery: the point itself, plus the
/// quadrant (τ₁), the deeper part of the diagonal (τ₂), or the
/// complement of the square (τ_c).
pub fn basic_member_u64(top: Topology, xi: u64, xj: u64, n: u64, s: u64, t: u64) -> bool {
    if (s, t) == (xi, xj) {
        return true;
    }
    match top {
        Topology::Discrete => false,
        Topology::Tau1 => s >= n && t >= n,
        Topology::Tau2 => {
            (s as i128 - t as i128) == (xi as i128 - xj as i128)
                && s.min(t) > xi.min(xj) + n
        }
        Topology::TauC => s > n || t > n,
    }
}

/// Which operation a crosscheck exercises.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CrosscheckOp {
    Union,
    Intersect,
    Complement,
    Difference,
    ProductImage,
    InverseImage,
    ClosureMembership,
    InteriorMembership,
    SolveLeft,
    SolveRight,
    SolveTwoSided,
}

/// Outcome of a crosscheck: pass, or the first disagreeing point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrosscheckResult {
    pub op: CrosscheckOp,
    pub pass: bool,
    pub first_diff: Option<(u64, u64)>,
}

impl CrosscheckResult {
    fn from_diff(op: CrosscheckOp, diff: Option<(u64, u64)>) -> CrosscheckResult {
        CrosscheckResult {
            op,
            pass: diff.is_none(),
            first_diff: diff,
        }
    }
}

/// Compare a symbolic binary set operation against the pointwise one.
pub fn crosscheck_setop(op: CrosscheckOp, a: &Region, b: &Region, w: Window) -> CrosscheckResult {
    let wa = WindowSet::from_region(a, w);
    let wb = WindowSet::from_region(b, w);
    let (symbolic, brute) = match op {
        CrosscheckOp::Union => (a.union(b), wa.zip(&wb, |x, y| x || y)),
        CrosscheckOp::Intersect => (a.intersect(b), wa.zip(&wb, |x, y| x && y)),
        CrosscheckOp::Difference => (a.difference(b), wa.zip(&wb, |x, y| x && !y)),
        _ => panic!("not a binary set operation"),
    };
    let diff = WindowSet::from_region(&symbolic, w).first_diff(&brute);
    CrosscheckResult::from_diff(op, diff)
}

pub fn crosscheck_complement(a: &Region, w: Window) -> CrosscheckResult {
    let brute = WindowSet::from_region(a, w).complement();
    let diff = WindowSet::from_region(&a.complement(), w).first_diff(&brute);
    CrosscheckResult::from_diff(CrosscheckOp::Complement, diff)
}

pub fn crosscheck_inverse_image(a: &Region, w: Window) -> CrosscheckResult {
    let brute = WindowSet::from_region(a, w).transpose();
    let diff = WindowSet::from_region(&a.inverse_image(), w).first_diff(&brute);
    CrosscheckResult::from_diff(CrosscheckOp::InverseImage, diff)
}

/// Product images are compared only on points that have witness factor
/// pairs inside the window: every such point must be claimed by the
/// symbolic image. Symbolic points without an in-window witness are
/// outside the comparison margin by construction.
pub fn crosscheck_product(a: &Region, b: &Region, w: Window) -> CrosscheckResult {
    let brute = WindowSet::from_region(a, w).brute_product(&WindowSet::from_region(b, w));
    let symbolic = a.product_image(b);
    let diff = w
        .points()
        .find(|&(s, t)| brute.get(s, t) && !symbolic.member_u64(s, t));
    CrosscheckResult::from_diff(CrosscheckOp::ProductImage, diff)
}

/// Closure membership versus bounded-`n` window evidence: `x` is
/// evidently a closure point when every `basic(x, n)` with `n ≤ depth`
/// meets `r`. Since the bases are antitone in `n`, all of them meet
/// `r` iff the deepest one does, and the probe window is enlarged so
/// that a nonempty intersection always has an in-window witness. Basic
/// neighborhoods are evaluated pointwise from their definitions, not
/// through the region machinery.
pub fn crosscheck_closure_membership(
    topology: Topology,
    r: &Region,
    w: Window,
    depth: u64,
) -> CrosscheckResult {
    let closure = topology.closure(r);
    // Exactness needs the probe depth to pass the stabilization bound:
    // a non-closure point first gets a disjoint neighborhood at a
    // parameter bounded by the region's constants.
    let depth = depth.max(stabilization_bound(r) + w.n + 2);
    let probe = probe_window(r, w, depth);
    let wr = WindowSet::from_region(r, probe);
    let diff = w.points().find(|&(xi, xj)| {
        let claimed = closure.member_u64(xi, xj);
        let evident = probe
            .points()
            .any(|(s, t)| basic_member_u64(topology, xi, xj, depth, s, t) && wr.get(s, t));
        claimed != evident
    });
    CrosscheckResult::from_diff(CrosscheckOp::ClosureMembership, diff)
}

/// A parameter past which the interior/closure tests stabilize: one
/// more than every finite constant of the canonical cells.
fn stabilization_bound(r: &Region) -> u64 {
    let mut bound = 1u64;
    for c in r.cells() {
        let mut consider = |v: Option<u64>| {
            if let Some(v) = v {
                bound = bound.max(v + 1);
            }
        };
        consider(c.s_min().to_u64());
        consider(c.t_min().to_u64());
        if let Upper::Fin(v) = c.s_max() {
            consider(v.to_u64());
        }
        if let Upper::Fin(v) = c.t_max() {
            consider(v.to_u64());
        }
    }
    bound
}

/// Interior membership versus bounded-`n` window evidence: `x ∈ r` is
/// evidently interior when some `basic(x, n)` with `n ≤ depth` avoids
/// the complement — by antitonicity, when the deepest one does. The
/// probe window makes window-emptiness conclusive.
pub fn crosscheck_interior_membership(
    topology: Topology,
    r: &Region,
    w: Window,
    depth: u64,
) -> CrosscheckResult {
    let interior = topology.interior(r);
    let comp = r.complement();
    // An interior point has a witnessing parameter bounded by the
    // complement's constants.
    let depth = depth.max(stabilization_bound(&comp) + w.n + 2);
    let probe = probe_window(&comp, w, depth);
    let wc = WindowSet::from_region(&comp, probe);
    let diff = w.points().find(|&(xi, xj)| {
        let claimed = interior.member_u64(xi, xj);
        let evident = r.member_u64(xi, xj)
            && !probe
                .points()
                .any(|(s, t)| basic_member_u64(topology, xi, xj, depth, s, t) && wc.get(s, t));
        claimed != evident
    });
    CrosscheckResult::from_diff(CrosscheckOp::InteriorMembership, diff)
}

/// A window large enough that any nonempty intersection of `r` (or its
/// complement) with a basic neighborhood of an in-window point at
/// parameter ≤ `depth` has a member inside it. The least member of a
/// nonempty canonical cell sits at its tightened minima, which are
/// bounded by the region's constants plus the neighborhood parameter.
fn probe_window(r: &Region, w: Window, depth: u64) -> Window {
    let mut bound = w.n + depth + 2;
    for c in r.cells() {
        for v in [c.s_min().to_u64(), c.t_min().to_u64()] {
            if let Some(v) = v {
                bound = bound.max(v + w.n + depth + 2);
            }
        }
    }
    Window { n: bound }
}

/// Exact solver output versus brute force over the window.
pub fn crosscheck_solve(
    op: CrosscheckOp,
    a: &BicyclicElement,
    c: Option<&BicyclicElement>,
    rhs: &BicyclicElement,
    w: Window,
) -> CrosscheckResult {
    let exact = match op {
        CrosscheckOp::SolveLeft => solve_left(a, rhs),
        CrosscheckOp::SolveRight => solve_right(a, rhs),
        CrosscheckOp::SolveTwoSided => solve_two_sided(a, c.expect("two-sided needs c"), rhs),
        _ => panic!("not a solver operation"),
    };
    let check = |x: &BicyclicElement| -> bool {
        match op {
            CrosscheckOp::SolveLeft => a.mul(x) == *rhs,
            CrosscheckOp::SolveRight => x.mul(a) == *rhs,
            CrosscheckOp::SolveTwoSided => a.mul(x).mul(c.unwrap()) == *rhs,
            _ => unreachable!(),
        }
    };
    let diff = w.points().find(|&(s, t)| {
        let x = BicyclicElement::from_u64(s, t);
        check(&x) != exact.contains(&x)
    });
    // The exact set must also lie inside the window for the comparison
    // to be complete.
    let escaped = exact.iter().find(|x| {
        x.i().to_u64().map(|v| v > w.n).unwrap_or(true)
            || x.j().to_u64().map(|v| v > w.n).unwrap_or(true)
    });
    let diff = diff.or_else(|| {
        escaped.map(|x| (x.i().to_u64().unwrap_or(u64::MAX), x.j().to_u64().unwrap_or(u64::MAX)))
    });
    CrosscheckResult::from_diff(op, diff)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(i: u64, j: u64) -> BicyclicElement {
        BicyclicElement::from_u64(i, j)
    }

    #[test]
    fn word_reduction_basics() {
        assert_eq!(word_reduce("").unwrap(), e(0, 0));
        assert_eq!(word_reduce("p q").unwrap(), e(0, 0));
        assert_eq!(word_reduce("qqpppqp").unwrap(), e(2, 3));
        assert_eq!(word_reduce("qp").unwrap(), e(1, 1));
        let err = word_reduce("qpx").unwrap_err();
        assert_eq!((err.pos, err.ch), (2, 'x'));
    }

    #[test]
    fn oracle_mul_examples() {
        assert_eq!(oracle_mul(&e(2, 3), &e(5, 1)), e(4, 1));
        assert_eq!(oracle_mul(&e(0, 0), &e(0, 0)), e(0, 0));
        assert_eq!(oracle_mul(&e(1, 4), &e(2, 0)), e(1, 2));
        // The reduction of q^2 p^3 · q p equals mul((2,3),(1,1)).
        assert_eq!(oracle_mul(&e(2, 3), &e(1, 1)), e(2, 3));
    }

    #[test]
    fn window_eval_examples() {
        let w = Window::new(4);
        assert!(WindowSet::from_region(&Region::empty(), w).is_empty());
        let full = WindowSet::from_region(&Region::full(), Window::new(2));
        assert_eq!(full.count(), 9);
        let q = WindowSet::from_region(&Region::quadrant(&BigUint::from(2u32)), Window::new(3));
        for (s, t) in Window::new(3).points() {
            assert_eq!(q.get(s, t), s >= 2 && t >= 2);
        }
    }

    #[test]
    fn crosschecks_pass_on_examples() {
        let w = Window::new(25);
        let q2 = Region::quadrant(&BigUint::from(2u32));
        assert!(crosscheck_product(&q2, &q2, w).pass);
        assert!(crosscheck_complement(&Region::full(), Window::new(10)).pass);
        let r = crosscheck_solve(
            CrosscheckOp::SolveLeft,
            &e(0, 1),
            None,
            &e(0, 0),
            Window::new(50),
        );
        assert!(r.pass);
    }
}
