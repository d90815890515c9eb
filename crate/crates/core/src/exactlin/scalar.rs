use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

/// Arithmetic overflow in a fixed-width fast path. Callers retry with `BigInt`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Overflow;

/// Integer type usable as a matrix entry.
///
/// Every operation that can leave the representable range is checked, so a
/// fixed-width instantiation either returns the exact answer or `Overflow`.
pub trait Scalar: Clone + Eq + Ord + Hash + Debug + Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn add(&self, rhs: &Self) -> Result<Self, Overflow>;
    fn sub(&self, rhs: &Self) -> Result<Self, Overflow>;
    fn mul(&self, rhs: &Self) -> Result<Self, Overflow>;
    fn neg(&self) -> Result<Self, Overflow>;
    /// Floor division; `rhs` must be nonzero.
    fn div_floor(&self, rhs: &Self) -> Self;
    /// Euclidean remainder is zero.
    fn divisible_by(&self, rhs: &Self) -> bool;
    fn to_bigint(&self) -> BigInt;

    fn abs(&self) -> Result<Self, Overflow> {
        if self.is_negative() {
            self.neg()
        } else {
            Ok(self.clone())
        }
    }

    /// `self - q * rhs`
    fn sub_mul(&self, q: &Self, rhs: &Self) -> Result<Self, Overflow> {
        self.sub(&q.mul(rhs)?)
    }
}

impl Scalar for i64 {
    fn zero() -> Self {
        0
    }
    fn from_i64(v: i64) -> Self {
        v
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn add(&self, rhs: &Self) -> Result<Self, Overflow> {
        self.checked_add(*rhs).ok_or(Overflow)
    }
    fn sub(&self, rhs: &Self) -> Result<Self, Overflow> {
        self.checked_sub(*rhs).ok_or(Overflow)
    }
    fn mul(&self, rhs: &Self) -> Result<Self, Overflow> {
        self.checked_mul(*rhs).ok_or(Overflow)
    }
    fn neg(&self) -> Result<Self, Overflow> {
        self.checked_neg().ok_or(Overflow)
    }
    fn div_floor(&self, rhs: &Self) -> Self {
        Integer::div_floor(self, rhs)
    }
    fn divisible_by(&self, rhs: &Self) -> bool {
        self.checked_rem(*rhs).is_none_or(|r| r == 0)
    }
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Scalar for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn add(&self, rhs: &Self) -> Result<Self, Overflow> {
        Ok(self + rhs)
    }
    fn sub(&self, rhs: &Self) -> Result<Self, Overflow> {
        Ok(self - rhs)
    }
    fn mul(&self, rhs: &Self) -> Result<Self, Overflow> {
        Ok(self * rhs)
    }
    fn neg(&self) -> Result<Self, Overflow> {
        Ok(-self)
    }
    fn div_floor(&self, rhs: &Self) -> Self {
        Integer::div_floor(self, rhs)
    }
    fn divisible_by(&self, rhs: &Self) -> bool {
        Zero::is_zero(&Integer::mod_floor(self, rhs))
    }
    fn to_bigint(&self) -> BigInt {
        self.clone()
    }
}

/// Narrow a `BigInt` to `i64` when it fits.
pub fn narrow(v: &BigInt) -> Option<i64> {
    v.to_i64()
}
