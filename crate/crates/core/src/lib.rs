//! Exact computation on the bicyclic monoid `C(p, q)` and the
//! neighborhood-base topologies it carries.
//!
//! The crate provides four layers:
//!
//! * [`element`] — exact arithmetic: multiplication, inversion, the
//!   natural partial order, order sets, translations and complete
//!   equation solving;
//! * [`region`] — a decidable algebra of subsets of ω² (finite unions
//!   of difference-bound cells) with a true canonical form, closed
//!   under the boolean operations, coordinate swap and multiplication
//!   images;
//! * [`topology`] — the two semigroup topologies, the compact
//!   shift-continuous topology and the discrete base, with exact
//!   closure, interior and separation;
//! * [`verify`] — one machine-checkable verifier per claim, emitting
//!   [`verify::WitnessReport`]s, cross-validated by the independent
//!   brute-force [`oracle`].

pub mod element;
pub mod error;
pub mod oracle;
pub mod region;
pub mod topology;
pub mod verify;

pub use element::{solve_left, solve_right, solve_two_sided, translate, BicyclicElement};
pub use error::{CoverError, ElementParseError, RegionJsonError, TopologyError, WordError};
pub use oracle::{oracle_mul, word_reduce, Window, WindowSet};
pub use region::{Cardinality, Cell, Region};
pub use topology::Topology;
pub use verify::{ClaimId, Verdict, WitnessReport};
