use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::scalar::Real;

/// Ring of polynomial coefficients.
pub trait Coeff:
    Clone
    + PartialEq
    + Debug
    + Send
    + Sync
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
{
}

impl<T> Coeff for T where
    T: Clone
        + PartialEq
        + Debug
        + Send
        + Sync
        + Zero
        + One
        + Neg<Output = Self>
        + Add<Output = Self>
        + Sub<Output = Self>
        + Mul<Output = Self>
{
}

/// Coefficients that can be divided (needed for negative powers under substitution).
pub trait FieldCoeff: Coeff + Div<Output = Self> {}

impl<T: Coeff + Div<Output = T>> FieldCoeff for T {}

/// Exact rational coefficient.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Embedding of exact coefficients into a numeric field.
pub trait ToComplex<R: Real> {
    fn to_complex(&self) -> Complex<R>;
}

impl<R: Real> ToComplex<R> for Rational {
    fn to_complex(&self) -> Complex<R> {
        Complex::new(R::from_rational(self), R::zero())
    }
}

impl<R: Real> ToComplex<R> for Complex<R> {
    fn to_complex(&self) -> Complex<R> {
        *self
    }
}

/// `x^e` for signed `e` by binary powering.
pub fn pow_i32<C: FieldCoeff>(x: &C, e: i32) -> C {
    let mut base = if e < 0 { C::one() / x.clone() } else { x.clone() };
    let mut n = e.unsigned_abs();
    let mut acc = C::one();
    while n > 0 {
        if n & 1 == 1 {
            acc = acc * base.clone();
        }
        n >>= 1;
        if n > 0 {
            base = base.clone() * base;
        }
    }
    acc
}
