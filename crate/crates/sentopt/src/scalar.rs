//! Scalar abstraction for the numeric core.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, NumAssignOps, ToPrimitive};
use serde::de::DeserializeOwned;
use serde::Serialize;

/// Floating-point scalar the pipeline computes in: `f32` or `f64`.
pub trait Scalar:
    Float
    + FromPrimitive
    + ToPrimitive
    + NumAssignOps
    + Sum<Self>
    + Default
    + Debug
    + Display
    + Serialize
    + DeserializeOwned
    + Send
    + Sync
    + 'static
{
    /// Lossy conversion from `f64`; exact for `f64`, rounded for `f32`.
    fn from_f64_lossy(x: f64) -> Self {
        Self::from_f64(x).expect("finite f64 converts to any Scalar")
    }

    /// Widening conversion to `f64`.
    fn as_f64(self) -> f64 {
        self.to_f64().expect("Scalar widens to f64")
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
