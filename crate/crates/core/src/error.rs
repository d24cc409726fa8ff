//! Error types shared across the crate.

use thiserror::Error;

/// Failure while parsing an element from its textual notation.
///
/// `pos` is a byte offset into the original input, suitable for
/// caret-style diagnostics.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{msg} at position {pos}")]
pub struct ElementParseError {
    pub pos: usize,
    pub msg: String,
}

/// Failure while decoding or encoding the JSON region schema.
#[derive(Debug, Error)]
pub enum RegionJsonError {
    #[error("invalid region JSON: {0}")]
    Schema(String),
    #[error("bound {0} does not fit the JSON integer range")]
    BoundTooLarge(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

/// Errors from topology operations with preconditions.
#[derive(Debug, Error)]
pub enum TopologyError {
    /// `subspace_closure`/`subspace_interior` require the region to lie
    /// inside the subspace; the witness is a point of `R \ Y`.
    #[error("region is not contained in the subspace; witness {witness}")]
    NotInSubspace { witness: String },
}

/// Errors from subcover extraction.
#[derive(Debug, Error)]
pub enum CoverError {
    /// The candidate family does not cover the target space; the witness
    /// is a point missed by every member.
    #[error("input family is not a cover; missed point {witness}")]
    NotACover { witness: String },
    /// A τ₂ subcover was requested for a family indexed off the target
    /// diagonal in a way that cannot reach the tail.
    #[error("no member trace contains a cofinal tail of the subspace")]
    NoCofinalMember,
}

/// Failure while reducing a word over the alphabet {p, q}.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid symbol {ch:?} at position {pos} (expected 'p', 'q' or whitespace)")]
pub struct WordError {
    pub pos: usize,
    pub ch: char,
}
