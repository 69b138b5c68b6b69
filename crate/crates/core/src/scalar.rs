//! Numeric traits the phonetic and similarity math is generic over.
//!
//! Cost matrices and alignment distances only need ring operations and an
//! ordering, so they accept exact rationals as well as `f32`/`f64`. Cosine
//! similarity needs a square root and is restricted to floats.

use std::fmt::Debug;

use num_traits::{Float, FromPrimitive, Num, ToPrimitive};

/// Scalar usable as an edit cost.
pub trait Scalar:
    Num + Copy + PartialOrd + FromPrimitive + ToPrimitive + Debug + Send + Sync + 'static
{
    fn from_count(n: u64) -> Self {
        Self::from_u64(n).expect("count representable in scalar type")
    }

    fn min_of(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }

    fn max_of(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    fn clamp_unit(self) -> Self {
        self.max_of(Self::zero()).min_of(Self::one())
    }
}

impl<T> Scalar for T where
    T: Num + Copy + PartialOrd + FromPrimitive + ToPrimitive + Debug + Send + Sync + 'static
{
}

/// Floating-point scalar: `f32` or `f64`.
pub trait FloatScalar: Scalar + Float {}

impl FloatScalar for f32 {}
impl FloatScalar for f64 {}
