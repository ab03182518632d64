use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::Real;
use crate::error::{Error, Result};

/// Complex number over a [`Real`] backend.
///
/// There is deliberately no `Div` operator: division goes through
/// [`ComplexScalar::try_div`] so that a zero divisor surfaces as an error
/// instead of an infinity or NaN.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexScalar<R: Real> {
    pub re: R,
    pub im: R,
}

pub type Complex64 = ComplexScalar<f64>;

impl<R: Real> ComplexScalar<R> {
    pub fn new(re: R, im: R) -> Self {
        ComplexScalar { re, im }
    }

    pub fn from_f64(re: f64, im: f64, bits: u32) -> Self {
        ComplexScalar::new(R::from_f64(re, bits), R::from_f64(im, bits))
    }

    pub fn from_real(re: R) -> Self {
        let im = re.like(0.0);
        ComplexScalar { re, im }
    }

    pub fn zero(bits: u32) -> Self {
        Self::from_f64(0.0, 0.0, bits)
    }

    pub fn one(bits: u32) -> Self {
        Self::from_f64(1.0, 0.0, bits)
    }

    pub fn i(bits: u32) -> Self {
        Self::from_f64(0.0, 1.0, bits)
    }

    /// Constant at the precision of `self`.
    pub fn like(&self, re: f64, im: f64) -> Self {
        Self::from_f64(re, im, self.bits())
    }

    pub fn bits(&self) -> u32 {
        self.re.bits()
    }

    pub fn to_c64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    pub fn abs(&self) -> R {
        self.re.hypot(&self.im)
    }

    /// `|z|` in double precision; exact only to f64 rounding.
    pub fn abs_f64(&self) -> f64 {
        let (re, im) = (self.re.to_f64(), self.im.to_f64());
        let a = re.hypot(im);
        if a.is_finite() && (a > 0.0 || (self.re.is_zero() && self.im.is_zero())) {
            a
        } else {
            self.abs().to_f64()
        }
    }

    pub fn norm_sqr(&self) -> R {
        self.re.clone() * &self.re + self.im.clone() * &self.im
    }

    pub fn conj(&self) -> Self {
        ComplexScalar::new(self.re.clone(), -self.im.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn scale(&self, s: &R) -> Self {
        ComplexScalar::new(self.re.clone() * s, self.im.clone() * s)
    }

    pub fn scale_f64(&self, s: f64) -> Self {
        self.scale(&self.re.like(s))
    }

    /// Multiply by i.
    pub fn mul_i(&self) -> Self {
        ComplexScalar::new(-self.im.clone(), self.re.clone())
    }

    pub fn square(&self) -> Self {
        self.clone() * self
    }

    /// `1 / self`; errors on an exact zero.
    pub fn recip(&self) -> Result<Self> {
        self.one_like().try_div(self, "reciprocal")
    }

    fn one_like(&self) -> Self {
        self.like(1.0, 0.0)
    }

    /// `self / rhs`; `what` names the division site in the error.
    pub fn try_div(&self, rhs: &Self, what: &'static str) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero(what));
        }
        // Smith's algorithm keeps the intermediate products in range.
        let (c, d) = (&rhs.re, &rhs.im);
        let (a, b) = (&self.re, &self.im);
        let out = if c.abs() >= d.abs() {
            let r = d.clone() / c;
            let den = c.clone() + r.clone() * d;
            ComplexScalar::new(
                (a.clone() + b.clone() * &r) / &den,
                (b.clone() - a.clone() * &r) / &den,
            )
        } else {
            let r = c.clone() / d;
            let den = d.clone() + r.clone() * c;
            ComplexScalar::new((a.clone() * &r + b) / &den, (b.clone() * &r - a) / &den)
        };
        if !out.is_finite() {
            return Err(Error::DivisionByZero(what));
        }
        Ok(out)
    }

    pub fn exp(&self) -> Self {
        let m = self.re.exp();
        let (s, c) = self.im.sin_cos();
        ComplexScalar::new(m.clone() * c, m * s)
    }

    /// Principal logarithm.
    pub fn ln(&self) -> Self {
        ComplexScalar::new(self.abs().ln(), self.im.atan2(&self.re))
    }

    /// Principal square root (branch cut on the negative real axis).
    pub fn sqrt(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let r = self.abs();
        let half = r.like(0.5);
        let t = ((r + self.re.abs()) * &half).sqrt();
        let zero = self.re.like(0.0);
        if self.re >= zero {
            let im = self.im.clone() / (t.clone() + &t);
            ComplexScalar::new(t, im)
        } else {
            let re = self.im.abs() / (t.clone() + &t);
            let im = if self.im >= zero { t } else { -t };
            ComplexScalar::new(re, im)
        }
    }

    /// Integer power by repeated squaring; negative exponents need a nonzero base.
    pub fn powi(&self, n: i64) -> Result<Self> {
        let base = if n < 0 { self.recip()? } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = self.one_like();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = sq.square();
            }
        }
        Ok(acc)
    }
}

impl<R: Real> fmt::Display for ComplexScalar<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.re, self.im)
    }
}

impl<R: Real> Add for ComplexScalar<R> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        ComplexScalar::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl<'a, R: Real> Add<&'a ComplexScalar<R>> for ComplexScalar<R> {
    type Output = Self;
    fn add(self, rhs: &'a Self) -> Self {
        ComplexScalar::new(self.re + &rhs.re, self.im + &rhs.im)
    }
}

impl<R: Real> Sub for ComplexScalar<R> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        ComplexScalar::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl<'a, R: Real> Sub<&'a ComplexScalar<R>> for ComplexScalar<R> {
    type Output = Self;
    fn sub(self, rhs: &'a Self) -> Self {
        ComplexScalar::new(self.re - &rhs.re, self.im - &rhs.im)
    }
}

impl<'a, R: Real> Mul<&'a ComplexScalar<R>> for ComplexScalar<R> {
    type Output = Self;
    fn mul(self, rhs: &'a Self) -> Self {
        let re = self.re.clone() * &rhs.re - self.im.clone() * &rhs.im;
        let im = self.re * &rhs.im + self.im * &rhs.re;
        ComplexScalar::new(re, im)
    }
}

impl<R: Real> Mul for ComplexScalar<R> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self * &rhs
    }
}

impl<R: Real> Neg for ComplexScalar<R> {
    type Output = Self;
    fn neg(self) -> Self {
        ComplexScalar::new(-self.re, -self.im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Mp;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::from_f64(re, im, 53)
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let err = c(1.0, 2.0).try_div(&c(0.0, 0.0), "test").unwrap_err();
        assert_eq!(err, Error::DivisionByZero("test"));
        assert!(c(0.0, 0.0).recip().is_err());
    }

    #[test]
    fn smith_division_matches_conjugate_formula() {
        let a = c(0.3, -1.7);
        let b = c(-2.5, 0.4);
        let q = a.try_div(&b, "t").unwrap();
        let back = q * &b;
        assert!((back - a).abs_f64() < 1e-15);
    }

    #[test]
    fn sqrt_is_principal() {
        let z = c(-4.0, 0.0);
        let r = z.sqrt();
        assert!((r.re - 0.0).abs() < 1e-15 && (r.im - 2.0).abs() < 1e-15);
        let w = c(-4.0, -1e-300).sqrt();
        assert!(w.im < 0.0);
        let u = c(3.0, -4.0).sqrt();
        assert!((u.square() - c(3.0, -4.0)).abs_f64() < 1e-14);
        assert!(u.re > 0.0);
    }

    #[test]
    fn exp_ln_round_trip() {
        let z = c(0.4, -2.9);
        assert!((z.ln().exp() - z).abs_f64() < 1e-15);
    }

    #[test]
    fn powi_handles_negative_exponents() {
        let z = c(0.6, 0.8);
        let p = z.powi(-3).unwrap() * &z.powi(3).unwrap();
        assert!((p - c(1.0, 0.0)).abs_f64() < 1e-14);
        assert_eq!(z.powi(0).unwrap(), c(1.0, 0.0));
    }

    #[test]
    fn extended_precision_keeps_bits() {
        let z = ComplexScalar::<Mp>::from_f64(1.0, 1.0, 128);
        let w = z.exp().try_div(&z, "t").unwrap();
        assert_eq!(w.bits(), 128);
        let two = ComplexScalar::<Mp>::from_f64(2.0, 0.0, 256);
        let r = two.sqrt();
        let err = (r.square() - two).abs();
        assert!(err.to_f64() < 1e-70);
    }
}
