//! Decidable subsets of ω² as finite unions of difference-bound cells.
//!
//! A [`Region`] is stored in canonical form (see [`profile`]), so
//! structural equality coincides with extensional equality. All set
//! operations are exact; the class is closed under union, intersection,
//! complement, coordinate swap and the image of bicyclic
//! multiplication.

mod cell;
mod ext;
mod interval;
mod product;
mod profile;

pub use cell::{Cell, CellView};
pub use ext::Ext;
pub use interval::{IntervalSet, Upper};
pub use profile::{Profile, Run};

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{CheckedSub, ToPrimitive};
use serde::de::Error as _;
use serde::ser::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::element::BicyclicElement;
use crate::error::RegionJsonError;

/// Exact cardinality of a region.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Cardinality {
    Finite(BigUint),
    Infinite,
}

impl fmt::Display for Cardinality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cardinality::Finite(n) => write!(f, "{n}"),
            Cardinality::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Region {
    cells: Vec<Cell>,
    profile: Profile,
    /// Clamped views of every cell when all bounds are small; used by
    /// the window-evaluation hot paths.
    views: Option<Vec<CellView>>,
}

impl PartialEq for Region {
    fn eq(&self, other: &Self) -> bool {
        self.cells == other.cells
    }
}

impl Eq for Region {}

impl std::hash::Hash for Region {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.cells.hash(state);
    }
}

impl Region {
    fn from_profile(profile: Profile) -> Region {
        let cells = profile.render_cells();
        let views = cells.iter().map(Cell::view).collect::<Option<Vec<_>>>();
        Region {
            cells,
            profile,
            views,
        }
    }

    /// Canonicalize an arbitrary list of cells (their union).
    pub fn from_cells(cells: Vec<Cell>) -> Region {
        Region::from_profile(Profile::from_cells(&cells))
    }

    pub fn empty() -> Region {
        Region::from_profile(Profile::empty())
    }

    pub fn full() -> Region {
        Region::from_cells(vec![cell_full()])
    }

    pub fn point(x: &BicyclicElement) -> Region {
        Region::from_cells(vec![Cell::point(x.i(), x.j())])
    }

    /// `{(s, t) : s ≥ n, t ≥ n}`.
    pub fn quadrant(n: &BigUint) -> Region {
        Region::from_cells(vec![cell_quadrant(n)])
    }

    /// The square `C_n = {(s, t) : s ≤ n, t ≤ n}`.
    pub fn square(n: &BigUint) -> Region {
        Region::from_cells(vec![Cell::new(
            Ext::fin(0),
            Ext::from(n),
            Ext::fin(0),
            Ext::from(n),
            Ext::NegInf,
            Ext::PosInf,
        )
        .expect("square is nonempty")])
    }

    /// The run `{m ∈ [m_lo, m_hi]}` of the diagonal `s − t = d`, in
    /// offset coordinates `m = min(s, t)`.
    pub fn diagonal_segment(d: &BigInt, m_lo: &BigUint, m_hi: Option<BigUint>) -> Region {
        Region::from_cells(cell_diagonal_segment(d, m_lo, m_hi).into_iter().collect())
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn member(&self, x: &BicyclicElement) -> bool {
        self.member_pair(x.i(), x.j())
    }

    pub fn member_pair(&self, s: &BigUint, t: &BigUint) -> bool {
        if let (Some(views), Some(s64), Some(t64)) = (&self.views, s.to_i128(), t.to_i128()) {
            return views.iter().any(|v| {
                s64 >= v.s_min
                    && s64 <= v.s_max
                    && t64 >= v.t_min
                    && t64 <= v.t_max
                    && (s64 - t64) >= v.d_min
                    && (s64 - t64) <= v.d_max
            });
        }
        self.cells.iter().any(|c| c.contains(s, t))
    }

    /// Fast membership for window sweeps.
    pub fn member_u64(&self, s: u64, t: u64) -> bool {
        match &self.views {
            Some(views) => {
                let (s, t) = (s as i128, t as i128);
                views.iter().any(|v| {
                    s >= v.s_min
                        && s <= v.s_max
                        && t >= v.t_min
                        && t <= v.t_max
                        && (s - t) >= v.d_min
                        && (s - t) <= v.d_max
                })
            }
            None => self.member_pair(&BigUint::from(s), &BigUint::from(t)),
        }
    }

    pub fn union(&self, other: &Region) -> Region {
        Region::from_profile(self.profile.zip(&other.profile, |a, b| a.union(b)))
    }

    pub fn intersect(&self, other: &Region) -> Region {
        Region::from_profile(self.profile.zip(&other.profile, |a, b| a.intersect(b)))
    }

    pub fn complement(&self) -> Region {
        Region::from_profile(self.profile.map(|s| s.complement()))
    }

    pub fn difference(&self, other: &Region) -> Region {
        Region::from_profile(self.profile.zip(&other.profile, |a, b| a.difference(b)))
    }

    /// `self ⊆ other`, decided as emptiness of `self ∩ complement(other)`
    /// through pairwise cell intersections.
    pub fn subset(&self, other: &Region) -> bool {
        let comp = other.complement();
        cells_disjoint(&self.cells, self.views.as_deref(), &comp.cells, comp.views.as_deref())
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.profile.is_finite()
    }

    pub fn cardinality(&self) -> Cardinality {
        match self.profile.cardinality() {
            Some(n) => Cardinality::Finite(n),
            None => Cardinality::Infinite,
        }
    }

    pub fn is_cofinite(&self) -> bool {
        self.profile.map(|s| s.complement()).is_finite()
    }

    /// `{x · y : x ∈ self, y ∈ other}` — exact, by the per-cell product
    /// table.
    pub fn product_image(&self, other: &Region) -> Region {
        Region::from_cells(self.product_cells_raw(other))
    }

    /// The raw (non-canonical) cells of the product image; exact as a
    /// union. Hot verification loops test inclusions on these directly.
    pub fn product_cells_raw(&self, other: &Region) -> Vec<Cell> {
        let mut out = Vec::new();
        for a in &self.cells {
            for b in &other.cells {
                out.extend(product::product_cells(a, b));
            }
        }
        out
    }

    /// `{x⁻¹ : x ∈ self}`.
    pub fn inverse_image(&self) -> Region {
        Region::from_profile(self.profile.reverse())
    }

    /// All members with both coordinates ≤ `bound`, lexicographically.
    pub fn enumerate(&self, bound: u64) -> Vec<BicyclicElement> {
        let mut out = Vec::new();
        for s in 0..=bound {
            for t in 0..=bound {
                if self.member_u64(s, t) {
                    out.push(BicyclicElement::from_u64(s, t));
                }
            }
        }
        out
    }

    /// The lexicographically least member.
    pub fn min_point(&self) -> Option<BicyclicElement> {
        self.cells
            .iter()
            .map(|c| c.min_point())
            .min()
            .map(|(s, t)| BicyclicElement::new(s, t))
    }

    /// True iff the region contains points with arbitrarily large
    /// `min(s, t)` — equivalently, iff it meets every quadrant.
    pub fn has_unbounded_offset(&self) -> bool {
        self.profile.has_unbounded_offset()
    }

    /// The union of the full diagonals on which the region has
    /// infinitely many points.
    pub fn diagonals_with_infinite_slice(&self) -> Region {
        Region::from_profile(self.profile.diagonals_where(|s| s.has_unbounded()))
    }

    /// The union of the full diagonals on which the region has only
    /// finitely many points (possibly none).
    pub fn diagonals_with_finite_slice(&self) -> Region {
        Region::from_profile(self.profile.diagonals_where(|s| s.is_finite()))
    }

    pub fn to_json_value(&self) -> Result<serde_json::Value, RegionJsonError> {
        Ok(serde_json::to_value(self)?)
    }

    pub fn from_json_value(v: &serde_json::Value) -> Result<Region, RegionJsonError> {
        Ok(serde_json::from_value(v.clone())?)
    }

    pub fn from_json_str(s: &str) -> Result<Region, RegionJsonError> {
        Ok(serde_json::from_str(s)?)
    }
}

/// Pairwise-emptiness of all cell intersections, with the clamped
/// integer fast path when both sides have views.
fn cells_disjoint(
    a: &[Cell],
    a_views: Option<&[CellView]>,
    b: &[Cell],
    b_views: Option<&[CellView]>,
) -> bool {
    for (ia, ca) in a.iter().enumerate() {
        let va = a_views.map(|v| &v[ia]).or_else(|| None);
        for (ib, cb) in b.iter().enumerate() {
            let empty = match (va, b_views.map(|v| &v[ib])) {
                (Some(va), Some(vb)) => cell::views_intersection_empty(va, vb),
                _ => ca.intersect(cb).is_none(),
            };
            if !empty {
                return false;
            }
        }
    }
    true
}

/// Pairwise-emptiness for raw cell slices (views computed on the fly).
pub fn raw_cells_disjoint(a: &[Cell], b: &[Cell]) -> bool {
    for ca in a {
        let va = ca.view();
        for cb in b {
            let empty = match (va.as_ref(), cb.view()) {
                (Some(va), Some(vb)) => cell::views_intersection_empty(va, &vb),
                _ => ca.intersect(cb).is_none(),
            };
            if !empty {
                return false;
            }
        }
    }
    true
}

pub(crate) fn cell_full() -> Cell {
    Cell::new(
        Ext::fin(0),
        Ext::PosInf,
        Ext::fin(0),
        Ext::PosInf,
        Ext::NegInf,
        Ext::PosInf,
    )
    .expect("full cell")
}

pub(crate) fn cell_quadrant(n: &BigUint) -> Cell {
    Cell::new(
        Ext::from(n),
        Ext::PosInf,
        Ext::from(n),
        Ext::PosInf,
        Ext::NegInf,
        Ext::PosInf,
    )
    .expect("quadrant is nonempty")
}

/// `{s ≥ v}` and `{t ≥ v}` half-planes.
pub(crate) fn cell_s_ray(v: &BigUint) -> Cell {
    Cell::new(
        Ext::from(v),
        Ext::PosInf,
        Ext::fin(0),
        Ext::PosInf,
        Ext::NegInf,
        Ext::PosInf,
    )
    .expect("half plane is nonempty")
}

pub(crate) fn cell_t_ray(v: &BigUint) -> Cell {
    Cell::new(
        Ext::fin(0),
        Ext::PosInf,
        Ext::from(v),
        Ext::PosInf,
        Ext::NegInf,
        Ext::PosInf,
    )
    .expect("half plane is nonempty")
}

/// The ≤ 4 half-plane pieces of `ω² \ {(i, j)}`.
pub(crate) fn point_complement_cells(i: &BigUint, j: &BigUint) -> Vec<Cell> {
    let mut out = Vec::with_capacity(4);
    if let Some(im1) = i.checked_sub(&BigUint::from(1u32)) {
        out.extend(Cell::new(
            Ext::fin(0),
            Ext::Fin(BigInt::from(im1)),
            Ext::fin(0),
            Ext::PosInf,
            Ext::NegInf,
            Ext::PosInf,
        ));
    }
    out.push(cell_s_ray(&(i + 1u32)));
    if let Some(jm1) = j.checked_sub(&BigUint::from(1u32)) {
        out.extend(Cell::new(
            Ext::fin(0),
            Ext::PosInf,
            Ext::fin(0),
            Ext::Fin(BigInt::from(jm1)),
            Ext::NegInf,
            Ext::PosInf,
        ));
    }
    out.push(cell_t_ray(&(j + 1u32)));
    out
}

/// Raw product of two cell lists through the per-cell product table.
pub fn product_of_cell_lists(a: &[Cell], b: &[Cell]) -> Vec<Cell> {
    let mut out = Vec::new();
    for ca in a {
        for cb in b {
            out.extend(product::product_cells(ca, cb));
        }
    }
    out
}

pub(crate) fn cell_diagonal_segment(
    d: &BigInt,
    m_lo: &BigUint,
    m_hi: Option<BigUint>,
) -> Option<Cell> {
    let hi = m_hi.map(|v| Ext::Fin(BigInt::from(v))).unwrap_or(Ext::PosInf);
    if d.sign() == num_bigint::Sign::Minus {
        Cell::new(
            Ext::from(m_lo),
            hi,
            Ext::fin(0),
            Ext::PosInf,
            Ext::Fin(d.clone()),
            Ext::Fin(d.clone()),
        )
    } else {
        Cell::new(
            Ext::fin(0),
            Ext::PosInf,
            Ext::from(m_lo),
            hi,
            Ext::Fin(d.clone()),
            Ext::Fin(d.clone()),
        )
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.cells.is_empty() {
            return write!(f, "empty");
        }
        for (i, c) in self.cells.iter().enumerate() {
            if i > 0 {
                write!(f, " u ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct AxisJson {
    #[serde(default)]
    min: Option<u64>,
    max: Option<u64>,
}

#[derive(Serialize, Deserialize)]
struct DiagJson {
    min: Option<i64>,
    max: Option<i64>,
}

#[derive(Serialize, Deserialize)]
struct CellJson {
    s: AxisJson,
    t: AxisJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    d: Option<DiagJson>,
}

#[derive(Serialize, Deserialize)]
struct RegionJson {
    cells: Vec<CellJson>,
}

fn upper_to_json(u: &Upper, what: &str) -> Result<Option<u64>, String> {
    match u {
        Upper::Inf => Ok(None),
        Upper::Fin(v) => v
            .to_u64()
            .map(Some)
            .ok_or_else(|| format!("{what} bound {v} exceeds the JSON integer range")),
    }
}

fn ext_to_json(e: &Ext, what: &str) -> Result<Option<i64>, String> {
    match e {
        Ext::NegInf | Ext::PosInf => Ok(None),
        Ext::Fin(v) => v
            .to_i64()
            .map(Some)
            .ok_or_else(|| format!("{what} bound {v} exceeds the JSON integer range")),
    }
}

impl Serialize for Region {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let cells = self
            .cells
            .iter()
            .map(|c| {
                Ok(CellJson {
                    s: AxisJson {
                        min: Some(c.s_min().to_u64().ok_or("s min")?),
                        max: upper_to_json(c.s_max(), "s max").map_err(|_| "s max")?,
                    },
                    t: AxisJson {
                        min: Some(c.t_min().to_u64().ok_or("t min")?),
                        max: upper_to_json(c.t_max(), "t max").map_err(|_| "t max")?,
                    },
                    d: Some(DiagJson {
                        min: ext_to_json(c.d_min(), "d min").map_err(|_| "d min")?,
                        max: ext_to_json(c.d_max(), "d max").map_err(|_| "d max")?,
                    }),
                })
            })
            .collect::<Result<Vec<_>, &str>>()
            .map_err(|what| S::Error::custom(format!("{what} does not fit the JSON integer range")))?;
        RegionJson { cells }.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Region {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let raw = RegionJson::deserialize(de)?;
        let mut cells = Vec::new();
        for cj in raw.cells {
            let (d_min, d_max) = match cj.d {
                None => (Ext::NegInf, Ext::PosInf),
                Some(dj) => (
                    dj.min.map(Ext::fin).unwrap_or(Ext::NegInf),
                    dj.max.map(Ext::fin).unwrap_or(Ext::PosInf),
                ),
            };
            let cell = Cell::new(
                Ext::Fin(BigInt::from(cj.s.min.unwrap_or(0))),
                cj.s.max
                    .map(|v| Ext::Fin(BigInt::from(v)))
                    .unwrap_or(Ext::PosInf),
                Ext::Fin(BigInt::from(cj.t.min.unwrap_or(0))),
                cj.t.max
                    .map(|v| Ext::Fin(BigInt::from(v)))
                    .unwrap_or(Ext::PosInf),
                d_min,
                d_max,
            );
            // Contradictory cells canonicalize to nothing.
            cells.extend(cell);
        }
        if cells.len() > 64 {
            return Err(D::Error::custom("region file has too many cells (max 64)"));
        }
        Ok(Region::from_cells(cells))
    }
}

#[cfg(test)]
mod tests;
