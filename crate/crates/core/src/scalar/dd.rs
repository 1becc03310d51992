//! Double-double real built on [`TwoFloat`].
//!
//! `TwoFloat`'s own division computes its correction term without a fused
//! multiply-add and returns quotients with an empty low word (e.g. `1/3`).
//! This wrapper keeps the exact addition and multiplication kernels and
//! replaces division, reciprocal and integer powers with a three-step long
//! division whose remainders are formed in double-double arithmetic.

use std::cmp::Ordering;
use std::fmt;
use std::num::FpCategory;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Rem, RemAssign, Sub, SubAssign};

use num_traits::{Float, FloatConst, Num, NumCast, One, ToPrimitive, Zero};
use twofloat::TwoFloat;

#[derive(Clone, Copy, Default, PartialEq)]
pub struct DoubleDouble(pub TwoFloat);

impl DoubleDouble {
    pub fn hi(self) -> f64 {
        self.0.hi()
    }

    pub fn lo(self) -> f64 {
        self.0.lo()
    }

    fn div_dd(a: TwoFloat, b: TwoFloat) -> TwoFloat {
        let bh = b.hi();
        if bh == 0.0 || !bh.is_finite() || !a.hi().is_finite() {
            return <TwoFloat as From<f64>>::from(a.hi() / bh);
        }
        let q1 = a.hi() / bh;
        let r = a - b * q1;
        let q2 = r.hi() / bh;
        let r = r - b * q2;
        let q3 = r.hi() / bh;
        TwoFloat::new_add(q1, q2) + q3
    }
}

impl fmt::Debug for DoubleDouble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DoubleDouble({:e} + {:e})", self.0.hi(), self.0.lo())
    }
}

impl fmt::Display for DoubleDouble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl PartialOrd for DoubleDouble {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.0.partial_cmp(&other.0)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $atr:ident, $am:ident, |$a:ident, $b:ident| $e:expr) => {
        impl $tr for DoubleDouble {
            type Output = DoubleDouble;
            fn $m(self, rhs: Self) -> Self {
                let ($a, $b) = (self.0, rhs.0);
                DoubleDouble($e)
            }
        }
        impl $atr for DoubleDouble {
            fn $am(&mut self, rhs: Self) {
                *self = $tr::$m(*self, rhs);
            }
        }
    };
}

binop!(Add, add, AddAssign, add_assign, |a, b| a + b);
binop!(Sub, sub, SubAssign, sub_assign, |a, b| a - b);
binop!(Mul, mul, MulAssign, mul_assign, |a, b| a * b);
binop!(Div, div, DivAssign, div_assign, |a, b| DoubleDouble::div_dd(a, b));
binop!(Rem, rem, RemAssign, rem_assign, |a, b| {
    let q = DoubleDouble::div_dd(a, b).trunc();
    a - q * b
});

impl Neg for DoubleDouble {
    type Output = DoubleDouble;
    fn neg(self) -> Self {
        DoubleDouble(-self.0)
    }
}

impl Zero for DoubleDouble {
    fn zero() -> Self {
        DoubleDouble(<TwoFloat as From<f64>>::from(0.0))
    }
    fn is_zero(&self) -> bool {
        self.0.hi() == 0.0 && self.0.lo() == 0.0
    }
}

impl One for DoubleDouble {
    fn one() -> Self {
        DoubleDouble(<TwoFloat as From<f64>>::from(1.0))
    }
}

impl Num for DoubleDouble {
    type FromStrRadixErr = <TwoFloat as Num>::FromStrRadixErr;
    fn from_str_radix(s: &str, radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        TwoFloat::from_str_radix(s, radix).map(DoubleDouble)
    }
}

impl ToPrimitive for DoubleDouble {
    fn to_i64(&self) -> Option<i64> {
        self.0.to_i64()
    }
    fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }
    fn to_f64(&self) -> Option<f64> {
        Some(self.0.hi() + self.0.lo())
    }
}

impl NumCast for DoubleDouble {
    fn from<T: ToPrimitive>(n: T) -> Option<Self> {
        <TwoFloat as NumCast>::from(n).map(DoubleDouble)
    }
}

macro_rules! delegate {
    ($($name:ident),* $(,)?) => {
        $(fn $name(self) -> Self { DoubleDouble(Float::$name(self.0)) })*
    };
}

macro_rules! delegate_const {
    ($($name:ident),* $(,)?) => {
        $(fn $name() -> Self { DoubleDouble(<TwoFloat as Float>::$name()) })*
    };
}

macro_rules! delegate_pred {
    ($($name:ident),* $(,)?) => {
        $(fn $name(self) -> bool { Float::$name(self.0) })*
    };
}

impl Float for DoubleDouble {
    delegate_const!(nan, infinity, neg_infinity, neg_zero, min_value, min_positive_value, max_value, epsilon);
    delegate_pred!(is_nan, is_infinite, is_finite, is_normal, is_sign_positive, is_sign_negative);
    delegate!(
        floor, ceil, round, trunc, fract, abs, signum, sqrt, exp, exp2, ln, log2, log10, cbrt,
        sin, cos, tan, asin, acos, atan, exp_m1, ln_1p, sinh, cosh, tanh, asinh, acosh, atanh,
    );

    fn classify(self) -> FpCategory {
        Float::classify(self.0)
    }

    fn mul_add(self, a: Self, b: Self) -> Self {
        self * a + b
    }

    fn recip(self) -> Self {
        Self::one() / self
    }

    fn powi(self, n: i32) -> Self {
        let mut base = if n < 0 { self.recip() } else { self };
        let mut k = n.unsigned_abs();
        let mut acc = Self::one();
        while k > 0 {
            if k & 1 == 1 {
                acc *= base;
            }
            k >>= 1;
            if k > 0 {
                base *= base;
            }
        }
        acc
    }

    fn powf(self, n: Self) -> Self {
        (self.ln() * n).exp()
    }

    fn log(self, base: Self) -> Self {
        self.ln() / base.ln()
    }

    fn max(self, other: Self) -> Self {
        if self >= other || other.is_nan() { self } else { other }
    }

    fn min(self, other: Self) -> Self {
        if self <= other || other.is_nan() { self } else { other }
    }

    fn abs_sub(self, other: Self) -> Self {
        if self > other { self - other } else { Self::zero() }
    }

    fn hypot(self, other: Self) -> Self {
        let (a, b) = (self.abs(), other.abs());
        let (big, small) = if a >= b { (a, b) } else { (b, a) };
        if big.is_zero() {
            return big;
        }
        let r = small / big;
        big * (Self::one() + r * r).sqrt()
    }

    fn atan2(self, other: Self) -> Self {
        DoubleDouble(Float::atan2(self.0, other.0))
    }

    fn sin_cos(self) -> (Self, Self) {
        (self.sin(), self.cos())
    }

    fn integer_decode(self) -> (u64, i16, i8) {
        Float::integer_decode(self.0)
    }
}

macro_rules! delegate_fc {
    ($($name:ident),* $(,)?) => {
        $(fn $name() -> Self { DoubleDouble(<TwoFloat as FloatConst>::$name()) })*
    };
}

impl FloatConst for DoubleDouble {
    delegate_fc!(
        E, FRAC_1_PI, FRAC_1_SQRT_2, FRAC_2_PI, FRAC_2_SQRT_PI, FRAC_PI_2, FRAC_PI_3, FRAC_PI_4,
        FRAC_PI_6, FRAC_PI_8, LN_10, LN_2, LOG10_E, LOG2_E, PI, SQRT_2,
    );
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dd(x: f64) -> DoubleDouble {
        DoubleDouble(<TwoFloat as From<f64>>::from(x))
    }

    #[test]
    fn division_keeps_the_low_word() {
        let third = dd(1.0) / dd(3.0);
        assert!(third.lo() != 0.0);
        let err = third * dd(3.0) - dd(1.0);
        assert!(err.abs().hi() < 1e-31);
        let x = dd(7.0) / dd(3.0);
        let y = x / third;
        assert!((y - dd(7.0)).abs().hi() < 1e-30);
    }

    #[test]
    fn powers_and_hypot() {
        let x = dd(1.1);
        let back = x.powi(-7) * x.powi(7);
        assert!((back - dd(1.0)).abs().hi() < 1e-30);
        assert!((dd(3.0).hypot(dd(4.0)) - dd(5.0)).abs().hi() < 1e-30);
        assert!((dd(2.0).sqrt() * dd(2.0).sqrt() - dd(2.0)).abs().hi() < 1e-30);
    }
}
