use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Real field used underneath [`ComplexScalar`](super::ComplexScalar).
///
/// Two implementations exist: `f64` (53-bit significand) and [`Mp`], an
/// MPFR float whose significand width is fixed when a value is created.
/// Every value produced by arithmetic keeps the precision of its left operand.
pub trait Real:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialOrd
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> Div<&'a Self, Output = Self>
{
    fn from_f64(x: f64, bits: u32) -> Self;
    fn bits(&self) -> u32;
    fn to_f64(&self) -> f64;
    fn pi(bits: u32) -> Self;

    fn abs(&self) -> Self;
    fn sqrt(&self) -> Self;
    fn exp(&self) -> Self;
    fn ln(&self) -> Self;
    fn sin_cos(&self) -> (Self, Self);
    fn atan2(&self, x: &Self) -> Self;
    fn erf(&self) -> Self;
    fn erfc(&self) -> Self;
    fn floor(&self) -> Self;

    fn is_zero(&self) -> bool;
    fn is_finite(&self) -> bool;

    /// Value with the same precision as `self`.
    fn like(&self, x: f64) -> Self {
        Self::from_f64(x, self.bits())
    }

    fn hypot(&self, other: &Self) -> Self {
        let a = self.abs();
        let b = other.abs();
        let (big, small) = if a >= b { (a, b) } else { (b, a) };
        if big.is_zero() {
            return big;
        }
        let r = small / &big;
        let one = big.like(1.0);
        big * (one + r.clone() * r).sqrt()
    }
}

impl Real for f64 {
    fn from_f64(x: f64, _bits: u32) -> Self {
        x
    }
    fn bits(&self) -> u32 {
        53
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn pi(_bits: u32) -> Self {
        std::f64::consts::PI
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
    fn sqrt(&self) -> Self {
        f64::sqrt(*self)
    }
    fn exp(&self) -> Self {
        f64::exp(*self)
    }
    fn ln(&self) -> Self {
        f64::ln(*self)
    }
    fn sin_cos(&self) -> (Self, Self) {
        f64::sin_cos(*self)
    }
    fn atan2(&self, x: &Self) -> Self {
        f64::atan2(*self, *x)
    }
    fn erf(&self) -> Self {
        libm::erf(*self)
    }
    fn erfc(&self) -> Self {
        libm::erfc(*self)
    }
    fn floor(&self) -> Self {
        f64::floor(*self)
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn is_finite(&self) -> bool {
        f64::is_finite(*self)
    }
    fn hypot(&self, other: &Self) -> Self {
        f64::hypot(*self, *other)
    }
}
