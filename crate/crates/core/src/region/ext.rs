//! Extended integers `ℤ ∪ {−∞, +∞}` for cell bounds.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;

/// A bound value. The derived order puts `NegInf < Fin(_) < PosInf`,
/// with finite values ordered as integers.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Ext {
    NegInf,
    Fin(BigInt),
    PosInf,
}

impl Ext {
    pub fn fin(v: impl Into<BigInt>) -> Self {
        Ext::Fin(v.into())
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Ext::Fin(_))
    }

    pub fn as_fin(&self) -> Option<&BigInt> {
        match self {
            Ext::Fin(v) => Some(v),
            _ => None,
        }
    }

    /// Addition with absorbing infinities. Adding opposite infinities is
    /// a logic error and panics; the bound propagation rules never mix
    /// them.
    pub fn add(&self, rhs: &Ext) -> Ext {
        match (self, rhs) {
            (Ext::Fin(a), Ext::Fin(b)) => Ext::Fin(a + b),
            (Ext::PosInf, Ext::NegInf) | (Ext::NegInf, Ext::PosInf) => {
                panic!("indeterminate sum of opposite infinities")
            }
            (Ext::PosInf, _) | (_, Ext::PosInf) => Ext::PosInf,
            (Ext::NegInf, _) | (_, Ext::NegInf) => Ext::NegInf,
        }
    }

    pub fn sub(&self, rhs: &Ext) -> Ext {
        match rhs {
            Ext::Fin(b) => match self {
                Ext::Fin(a) => Ext::Fin(a - b),
                inf => inf.clone(),
            },
            Ext::PosInf => match self {
                Ext::PosInf => panic!("indeterminate difference of infinities"),
                _ => Ext::NegInf,
            },
            Ext::NegInf => match self {
                Ext::NegInf => panic!("indeterminate difference of infinities"),
                _ => Ext::PosInf,
            },
        }
    }

    pub fn min(self, other: Ext) -> Ext {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn max(self, other: Ext) -> Ext {
        if self >= other {
            self
        } else {
            other
        }
    }

    /// Clamp as an i128 for the fast comparison path; `None` when a
    /// finite value falls outside `±i32::MAX`.
    pub fn to_clamped_i128(&self) -> Option<i128> {
        match self {
            Ext::NegInf => Some(NEG_SENTINEL),
            Ext::PosInf => Some(POS_SENTINEL),
            Ext::Fin(v) => {
                let v = v.to_i128()?;
                if v.unsigned_abs() <= i32::MAX as u128 {
                    Some(v)
                } else {
                    None
                }
            }
        }
    }
}

/// Fast-path sentinels: large enough that no clamped finite value is
/// near them, small enough that sums of a few bounds never overflow.
pub const POS_SENTINEL: i128 = i64::MAX as i128;
pub const NEG_SENTINEL: i128 = -POS_SENTINEL;

impl fmt::Display for Ext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ext::NegInf => write!(f, "-inf"),
            Ext::Fin(v) => write!(f, "{v}"),
            Ext::PosInf => write!(f, "inf"),
        }
    }
}

impl From<BigUint> for Ext {
    fn from(v: BigUint) -> Self {
        Ext::Fin(BigInt::from(v))
    }
}

impl From<&BigUint> for Ext {
    fn from(v: &BigUint) -> Self {
        Ext::Fin(BigInt::from(v.clone()))
    }
}
