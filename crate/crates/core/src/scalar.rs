//! Scalar traits the combinatorial code is generic over.
//!
//! Coordinates and function values live in N, so they use any primitive
//! unsigned integer ([`Natural`]). Bijection images and subset-sum instances
//! live in Z and use any primitive signed integer ([`Integer`]).

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_traits::{PrimInt, Signed, Unsigned};
use serde::de::DeserializeOwned;
use serde::Serialize;

/// Nonnegative integer scalar: `u8` through `u128`.
pub trait Natural:
    PrimInt + Unsigned + Hash + Debug + Display + Serialize + DeserializeOwned + Send + Sync + 'static
{
    /// Converts a small index (grid coordinate) into this type.
    fn from_index(i: usize) -> Option<Self> {
        Self::from(i)
    }
}

impl<T> Natural for T where
    T: PrimInt
        + Unsigned
        + Hash
        + Debug
        + Display
        + Serialize
        + DeserializeOwned
        + Send
        + Sync
        + 'static
{
}

/// Signed integer scalar: `i8` through `i128`.
pub trait Integer:
    PrimInt + Signed + Hash + Debug + Display + Serialize + DeserializeOwned + Send + Sync + 'static
{
    /// Widens to `i128`, the accumulator type used by the solvers.
    fn wide(self) -> i128 {
        self.to_i128()
            .expect("primitive signed integers fit in i128")
    }
}

impl<T> Integer for T where
    T: PrimInt
        + Signed
        + Hash
        + Debug
        + Display
        + Serialize
        + DeserializeOwned
        + Send
        + Sync
        + 'static
{
}
