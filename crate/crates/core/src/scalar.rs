//! Count scalars.
//!
//! Every counter and closed-form evaluator is generic over the integer type
//! that carries the result. [`crate::Count`] (a `BigUint`) is exact for any
//! input; fixed-width types such as `u64` and `u128` are accepted where the
//! caller knows the values fit and report [`Error::Overflow`] otherwise.

use std::fmt::{Debug, Display};

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedMul, FromPrimitive, ToPrimitive};

use crate::error::{Error, Result};

/// Unsigned-or-signed integer type able to carry an exact count.
pub trait CountScalar:
    Integer
    + Clone
    + CheckedAdd
    + CheckedMul
    + FromPrimitive
    + ToPrimitive
    + Display
    + Debug
    + Send
    + Sync
    + 'static
{
}

impl<T> CountScalar for T where
    T: Integer
        + Clone
        + CheckedAdd
        + CheckedMul
        + FromPrimitive
        + ToPrimitive
        + Display
        + Debug
        + Send
        + Sync
        + 'static
{
}

/// Lossless conversion of a machine count into `C`.
pub fn from_u64<C: CountScalar>(value: u64) -> Result<C> {
    C::from_u64(value).ok_or(Error::Overflow)
}

pub fn from_usize<C: CountScalar>(value: usize) -> Result<C> {
    C::from_usize(value).ok_or(Error::Overflow)
}

/// `k!` with overflow detection.
pub fn factorial<C: CountScalar>(k: usize) -> Result<C> {
    let mut acc = C::one();
    for i in 2..=k {
        acc = acc.checked_mul(&from_usize(i)?).ok_or(Error::Overflow)?;
    }
    Ok(acc)
}

pub(crate) fn checked_add<C: CountScalar>(a: &C, b: &C) -> Result<C> {
    a.checked_add(b).ok_or(Error::Overflow)
}

pub(crate) fn checked_mul<C: CountScalar>(a: &C, b: &C) -> Result<C> {
    a.checked_mul(b).ok_or(Error::Overflow)
}

/// Collapses an exact rational that must be a whole number.
pub(crate) fn into_integer<C: CountScalar>(value: Ratio<C>) -> Result<C> {
    if value.is_integer() {
        Ok(value.to_integer())
    } else {
        Err(Error::NonIntegral(value.to_string()))
    }
}
