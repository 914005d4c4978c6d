//! Scalar abstraction shared by every geometric type in the crate.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};
use serde::de::DeserializeOwned;
use serde::Serialize;

/// Floating point coordinate type: `f32` or `f64`.
///
/// Orientation predicates promote to `f64` (exact for both widths) before
/// evaluating, so the sign of every predicate is exact regardless of `T`.
pub trait Scalar:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + Debug
    + Display
    + Default
    + Send
    + Sync
    + Serialize
    + DeserializeOwned
    + 'static
{
    /// Converts an `f64` literal or computed constant into `Self`.
    fn lit(v: f64) -> Self;

    /// Widens to `f64` (exact for `f32` and `f64`).
    fn as_f64(self) -> f64;

    fn from_usize(n: usize) -> Self {
        Self::lit(n as f64)
    }
}

impl Scalar for f32 {
    #[inline]
    fn lit(v: f64) -> Self {
        v as f32
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self as f64
    }
}

impl Scalar for f64 {
    #[inline]
    fn lit(v: f64) -> Self {
        v
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self
    }
}
