//! Floating point abstraction shared by the numeric modules.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_bigint::{BigInt, BigUint};
use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Real scalar used by the eigensolver, the walk series and the multipartite
/// root finder. Implemented for `f32` and `f64`.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + ToPrimitive + Sum + Debug + Display + Send + Sync + 'static
{
    /// Smallest residual (relative to `max(1, rho)`) a solve must reach to be
    /// reported as successful.
    fn residual_floor() -> Self {
        let floor = Self::epsilon() * Self::from_f64(64.0).unwrap();
        floor.max(Self::from_f64(1e-10).unwrap())
    }

    fn of(value: f64) -> Self {
        Self::from_f64(value).expect("f64 is representable")
    }

    fn of_usize(value: usize) -> Self {
        Self::from_usize(value).expect("usize is representable")
    }

    fn of_biguint(value: &BigUint) -> Self {
        Self::of(value.to_f64().unwrap_or(f64::INFINITY))
    }

    fn of_bigint(value: &BigInt) -> Self {
        let v = value.to_f64().unwrap_or(match value.sign() {
            num_bigint::Sign::Minus => f64::NEG_INFINITY,
            _ => f64::INFINITY,
        });
        Self::of(v)
    }

    fn as_f64(self) -> f64 {
        self.to_f64().expect("finite scalar")
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
