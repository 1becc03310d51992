//! Dense univariate Laurent polynomials in `t` and rational functions over them.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;
use num_traits::{One, Zero};

use super::laurent::CPoly;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// `Σ coeffs[k] · t^(low + k)`, trimmed so the outer coefficients are nonzero.
#[derive(Clone, Debug, PartialEq)]
pub struct TPoly<R> {
    low: i32,
    coeffs: Vec<Complex<R>>,
}

impl<R: Real> TPoly<R> {
    pub fn new(low: i32, coeffs: Vec<Complex<R>>) -> Self {
        let mut p = TPoly { low, coeffs };
        p.trim();
        p
    }

    pub fn zero() -> Self {
        TPoly { low: 0, coeffs: vec![] }
    }

    pub fn constant(c: Complex<R>) -> Self {
        Self::new(0, vec![c])
    }

    pub fn monomial(k: i32, c: Complex<R>) -> Self {
        Self::new(k, vec![c])
    }

    /// `t - t0`.
    pub fn linear(t0: Complex<R>) -> Self {
        Self::new(0, vec![-t0, Complex::one()])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i32;
        }
        if self.coeffs.is_empty() {
            self.low = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> i32 {
        self.low
    }

    /// Highest exponent with a nonzero coefficient.
    pub fn degree(&self) -> i32 {
        self.low + self.coeffs.len() as i32 - 1
    }

    pub fn coeffs(&self) -> &[Complex<R>] {
        &self.coeffs
    }

    pub fn coeff(&self, k: i32) -> Complex<R> {
        let i = k - self.low;
        if i < 0 {
            return Complex::zero();
        }
        self.coeffs.get(i as usize).copied().unwrap_or_else(Complex::zero)
    }

    pub fn lowest_coeff(&self) -> Complex<R> {
        self.coeffs.first().copied().unwrap_or_else(Complex::zero)
    }

    pub fn shift(&self, k: i32) -> Self {
        TPoly { low: self.low + k, coeffs: self.coeffs.clone() }
    }

    pub fn scale(&self, s: Complex<R>) -> Self {
        Self::new(self.low, self.coeffs.iter().map(|c| *c * s).collect())
    }

    /// Returns `(p(t), p'(t))`.
    pub fn eval_with_derivative(&self, t: Complex<R>) -> (Complex<R>, Complex<R>) {
        if self.is_zero() {
            return (Complex::zero(), Complex::zero());
        }
        let (p, dp) = super::roots::horner(&self.coeffs, t);
        if self.low == 0 {
            return (p, dp);
        }
        // d/dt (t^low · q) = low · t^(low-1) · q + t^low · q'
        let tl = t.powi(self.low);
        let tl1 = t.powi(self.low - 1);
        (tl * p, tl1 * p * R::from_f64(self.low as f64) + tl * dp)
    }

    pub fn eval(&self, t: Complex<R>) -> Complex<R> {
        self.eval_with_derivative(t).0
    }

    /// `Σ |c_k| |t|^k`.
    pub fn abs_scale(&self, t: Complex<R>) -> f64 {
        let r = t.norm();
        let s = super::roots::abs_scale(&self.coeffs, t);
        (s * r.powi(self.low)).to_f64()
    }

    pub fn max_coeff_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm().to_f64()).fold(0.0, f64::max)
    }

    /// Synthetic division by `t - t0`; returns quotient and remainder.
    pub fn div_linear(&self, t0: Complex<R>) -> (Self, Complex<R>) {
        if self.is_zero() {
            return (Self::zero(), Complex::zero());
        }
        let n = self.coeffs.len();
        let mut q = vec![Complex::zero(); n.saturating_sub(1)];
        let mut acc = Complex::zero();
        for k in (0..n).rev() {
            acc = acc * t0 + self.coeffs[k];
            if k > 0 {
                q[k - 1] = acc;
            }
        }
        (Self::new(self.low, q), acc * t0.powi(self.low))
    }

    pub fn from_laurent(p: &CPoly<R>) -> Result<Self> {
        let used = p.used_vars();
        if used.len() > 1 {
            return Err(Error::Structural("expected a polynomial in one variable".into()));
        }
        if p.is_zero() {
            return Ok(Self::zero());
        }
        let v = used.first().copied().unwrap_or(0);
        let (lo, hi) = p.degree_range(v).unwrap();
        let mut c = vec![Complex::zero(); (hi - lo + 1) as usize];
        for (e, x) in p.terms() {
            c[(e[v] - lo) as usize] = *x;
        }
        Ok(Self::new(lo, c))
    }

    pub fn to_laurent(&self, var: &str) -> CPoly<R> {
        let mut p = CPoly::zero(&[var]);
        for (k, c) in self.coeffs.iter().enumerate() {
            p.add_term(vec![self.low + k as i32], *c);
        }
        p
    }
}

impl<R: Real> Add for &TPoly<R> {
    type Output = TPoly<R>;
    fn add(self, rhs: Self) -> TPoly<R> {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let low = self.low.min(rhs.low);
        let high = self.degree().max(rhs.degree());
        TPoly::new(low, (low..=high).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<R: Real> Neg for &TPoly<R> {
    type Output = TPoly<R>;
    fn neg(self) -> TPoly<R> {
        TPoly { low: self.low, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl<R: Real> Sub for &TPoly<R> {
    type Output = TPoly<R>;
    fn sub(self, rhs: Self) -> TPoly<R> {
        self + &(-rhs)
    }
}

impl<R: Real> Mul for &TPoly<R> {
    type Output = TPoly<R>;
    fn mul(self, rhs: Self) -> TPoly<R> {
        if self.is_zero() || rhs.is_zero() {
            return TPoly::zero();
        }
        let mut c = vec![Complex::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                c[i + j] = c[i + j] + *a * *b;
            }
        }
        TPoly::new(self.low + rhs.low, c)
    }
}

/// Quotient of two polynomials in `t`.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalFunctionT<R> {
    num: TPoly<R>,
    den: TPoly<R>,
}

/// How a rational function was brought to canonical form: `canonical = sign · t^power · original`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Normalization {
    pub sign: i32,
    pub power: i32,
}

impl<R: Real> RationalFunctionT<R> {
    /// Builds `num / den`, cancelling the common monomial factor so the denominator has valuation zero.
    pub fn new(num: TPoly<R>, den: TPoly<R>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Domain("zero denominator".into()));
        }
        let k = den.valuation();
        Ok(RationalFunctionT { num: num.shift(-k), den: den.shift(-k) })
    }

    pub fn numerator(&self) -> &TPoly<R> {
        &self.num
    }

    pub fn denominator(&self) -> &TPoly<R> {
        &self.den
    }

    fn check_pole(&self, t0: Complex<R>) -> Result<Complex<R>> {
        let d = self.den.eval(t0);
        let tol = 64.0 * R::unit_roundoff().to_f64() * self.den.abs_scale(t0);
        if d.norm().to_f64() <= tol {
            return Err(Error::Pole(format!("{}{:+}i", t0.re.to_f64(), t0.im.to_f64())));
        }
        Ok(d)
    }

    pub fn eval(&self, t0: Complex<R>) -> Result<Complex<R>> {
        let d = self.check_pole(t0)?;
        Ok(self.num.eval(t0) / d)
    }

    /// Value and first derivative at `t0` by the quotient rule.
    pub fn eval_and_derivative(&self, t0: Complex<R>) -> Result<(Complex<R>, Complex<R>)> {
        self.check_pole(t0)?;
        let (n, dn) = self.num.eval_with_derivative(t0);
        let (d, dd) = self.den.eval_with_derivative(t0);
        Ok((n / d, (dn * d - n * dd) / (d * d)))
    }

    /// Divide numerator and denominator by `t - t0` while both vanish there
    /// (relative to `tol`); returns the reduced function and the number of factors removed.
    pub fn cancel_root(&self, t0: Complex<R>, tol: f64) -> (Self, usize) {
        let mut num = self.num.clone();
        let mut den = self.den.clone();
        let mut count = 0;
        loop {
            let nv = num.eval(t0).norm().to_f64();
            let dv = den.eval(t0).norm().to_f64();
            if num.is_zero() || den.is_zero() {
                break;
            }
            if nv > tol * num.abs_scale(t0) || dv > tol * den.abs_scale(t0) {
                break;
            }
            num = num.div_linear(t0).0;
            den = den.div_linear(t0).0;
            count += 1;
        }
        let k = den.valuation();
        (RationalFunctionT { num: num.shift(-k), den: den.shift(-k) }, count)
    }

    /// Canonical representative of the class modulo `±t^n`: the denominator's
    /// lowest coefficient is made 1, the numerator gets valuation zero, and its
    /// lowest coefficient gets argument in `[0, π)`.
    pub fn normalized(&self) -> (Self, Normalization) {
        let c = self.den.lowest_coeff();
        let den = self.den.scale(Complex::<R>::one() / c);
        let mut num = self.num.scale(Complex::<R>::one() / c);
        let power = -num.valuation();
        num = num.shift(power);
        let lead = num.lowest_coeff();
        let arg = lead.im.to_f64().atan2(lead.re.to_f64());
        let sign = if (0.0..std::f64::consts::PI).contains(&arg) { 1 } else { -1 };
        if sign < 0 {
            num = -&num;
        }
        (RationalFunctionT { num, den }, Normalization { sign, power })
    }

    /// Apply `sign · t^power`.
    pub fn times_monomial(&self, sign: i32, power: i32) -> Self {
        let n = self.num.shift(power);
        let num = if sign < 0 { -&n } else { n };
        RationalFunctionT { num, den: self.den.clone() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cplx;

    fn t(low: i32, c: &[f64]) -> TPoly<f64> {
        TPoly::new(low, c.iter().map(|&x| cplx(x, 0.0)).collect())
    }

    #[test]
    fn direct_differentiation() {
        // (t - 1) / t^2 at 1
        let r = RationalFunctionT::new(t(0, &[-1.0, 1.0]), t(2, &[1.0])).unwrap();
        let (v, d) = r.eval_and_derivative(cplx(1.0, 0.0)).unwrap();
        assert!(v.norm() < 1e-15);
        assert!((d - cplx(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn constant_has_zero_derivative() {
        let c = cplx(2.5, -1.0);
        let r = RationalFunctionT::new(TPoly::constant(c), t(0, &[1.0])).unwrap();
        let (v, d) = r.eval_and_derivative(cplx(0.3, 0.7)).unwrap();
        assert_eq!(v, c);
        assert_eq!(d, cplx(0.0, 0.0));
    }

    #[test]
    fn pole_is_reported() {
        let r = RationalFunctionT::new(t(0, &[1.0]), t(0, &[-1.0, 1.0])).unwrap();
        assert!(matches!(r.eval(cplx(1.0, 0.0)), Err(Error::Pole(_))));
        assert!(RationalFunctionT::new(t(0, &[1.0]), TPoly::zero()).is_err());
    }

    #[test]
    fn monomial_factors_cancel() {
        let r = RationalFunctionT::new(t(3, &[1.0, 2.0]), t(2, &[4.0])).unwrap();
        assert_eq!(r.denominator().valuation(), 0);
        assert_eq!(r.numerator().valuation(), 1);
    }

    #[test]
    fn cancel_root_and_division() {
        // (t-1)^2 (t+2) / ((t-1) t)
        let a = &(&t(0, &[-1.0, 1.0]) * &t(0, &[-1.0, 1.0])) * &t(0, &[2.0, 1.0]);
        let b = &t(0, &[-1.0, 1.0]) * &t(1, &[1.0]);
        let r = RationalFunctionT::new(a, b).unwrap();
        let (s, k) = r.cancel_root(cplx(1.0, 0.0), 1e-12);
        assert_eq!(k, 1);
        let v = s.eval(cplx(2.0, 0.0)).unwrap();
        assert!((v - cplx(2.0, 0.0)).norm() < 1e-14);
        let (q, rem) = t(0, &[2.0, -3.0, 1.0]).div_linear(cplx(2.0, 0.0));
        assert!(rem.norm() < 1e-15);
        assert_eq!(q, t(0, &[-1.0, 1.0]));
    }

    #[test]
    fn normalization_is_canonical_modulo_signed_monomials() {
        let r = RationalFunctionT::new(t(-1, &[1.0, -3.0, 0.5]), t(0, &[2.0, 1.0])).unwrap();
        let (a, _) = r.normalized();
        let (b, _) = r.times_monomial(-1, 5).normalized();
        assert_eq!(a, b);
        assert_eq!(a.numerator().valuation(), 0);
        let laurent = a.numerator().to_laurent("t");
        assert_eq!(TPoly::from_laurent(&laurent).unwrap(), *a.numerator());
    }
}
