//! Rendering helpers: element/region JSON and the ASCII membership grid.

use bct_core::{BicyclicElement, Region, RegionJsonError};
use num_traits::ToPrimitive;

#[derive(Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Grid,
}

/// `{"i": .., "j": ..}`; exponents beyond u64 fall back to decimal
/// strings so nothing is truncated.
pub fn element_json(x: &BicyclicElement) -> serde_json::Value {
    let num = |v: &num_bigint::BigUint| match v.to_u64() {
        Some(v) => serde_json::Value::from(v),
        None => serde_json::Value::from(v.to_string()),
    };
    serde_json::json!({"i": num(x.i()), "j": num(x.j())})
}

pub fn region_json(r: &Region) -> Result<serde_json::Value, RegionJsonError> {
    r.to_json_value()
}

/// Membership grid over `[0, n]²`: rows are `i` (power of q, increasing
/// downward), columns are `j` (power of p, increasing rightward);
/// members are `#`, non-members `·`.
pub fn grid(r: &Region, n: u64) -> String {
    let mut out = String::with_capacity(((n + 2) * (n + 1)) as usize);
    for i in 0..=n {
        for j in 0..=n {
            out.push(if r.member_u64(i, j) { '#' } else { '·' });
        }
        out.push('\n');
    }
    out
}
