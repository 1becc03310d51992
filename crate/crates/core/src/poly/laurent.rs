//! Sparse multivariate Laurent polynomials.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_complex::Complex;
use num_traits::{One, Zero};

use super::coeff::{pow_i32, Coeff, FieldCoeff, Rational, ToComplex};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Exponent vector, one entry per variable.
pub type Exponent = Vec<i32>;

/// Multivariate Laurent polynomial over an ordered list of named variables.
///
/// Terms with zero coefficient are never stored, so structural equality is
/// equality of polynomials.
#[derive(Clone, PartialEq)]
pub struct LaurentPoly<C> {
    vars: Arc<Vec<String>>,
    terms: BTreeMap<Exponent, C>,
}

/// Laurent polynomial with exact rational coefficients.
pub type QPoly = LaurentPoly<Rational>;

/// Laurent polynomial with working-precision complex coefficients.
pub type CPoly<R> = LaurentPoly<Complex<R>>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

impl<C: Coeff> LaurentPoly<C> {
    pub fn zero<S: AsRef<str>>(vars: &[S]) -> Self {
        LaurentPoly {
            vars: Arc::new(vars.iter().map(|s| s.as_ref().to_string()).collect()),
            terms: BTreeMap::new(),
        }
    }

    pub fn zero_like(&self) -> Self {
        LaurentPoly { vars: self.vars.clone(), terms: BTreeMap::new() }
    }

    pub fn constant_like(&self, c: C) -> Self {
        self.monomial_like(vec![0; self.nvars()], c)
    }

    pub fn one_like(&self) -> Self {
        self.constant_like(C::one())
    }

    pub fn monomial_like(&self, exps: Exponent, c: C) -> Self {
        let mut p = self.zero_like();
        p.add_term(exps, c);
        p
    }

    pub fn constant<S: AsRef<str>>(vars: &[S], c: C) -> Self {
        Self::zero(vars).constant_like(c)
    }

    pub fn monomial<S: AsRef<str>>(vars: &[S], exps: Exponent, c: C) -> Self {
        assert_eq!(exps.len(), vars.len(), "exponent length must match variable count");
        Self::zero(vars).monomial_like(exps, c)
    }

    /// The polynomial consisting of a single variable.
    pub fn var<S: AsRef<str>>(vars: &[S], name: &str) -> Result<Self> {
        let p = Self::zero(vars);
        let i = p.var_index(name)?;
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        Ok(p.monomial_like(e, C::one()))
    }

    /// Build from `(exponent, coefficient)` pairs, summing duplicates.
    pub fn from_terms<S: AsRef<str>>(
        vars: &[S],
        terms: impl IntoIterator<Item = (Exponent, C)>,
    ) -> Result<Self> {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            if e.len() != p.nvars() {
                return Err(Error::Structural(format!(
                    "exponent {e:?} has length {}, expected {}",
                    e.len(),
                    p.nvars()
                )));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        self.vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::Structural(format!("unknown variable `{name}` in {:?}", self.vars)))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &C)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn coeff(&self, exps: &[i32]) -> C {
        self.terms.get(exps).cloned().unwrap_or_else(C::zero)
    }

    pub fn constant_term(&self) -> C {
        self.coeff(&vec![0; self.nvars()])
    }

    /// Leading term in lexicographic exponent order.
    pub fn leading_term(&self) -> Option<(&Exponent, &C)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, exps: Exponent, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().clone() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn same_vars(&self, other: &Self) -> Result<()> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(Error::Structural(format!(
                "variable lists differ: {:?} vs {:?}",
                self.vars, other.vars
            )))
        }
    }

    pub fn arith(&self, other: &Self, op: ArithOp) -> Result<Self> {
        self.same_vars(other)?;
        Ok(match op {
            ArithOp::Add => {
                let mut out = self.clone();
                for (e, c) in &other.terms {
                    out.add_term(e.clone(), c.clone());
                }
                out
            }
            ArithOp::Sub => {
                let mut out = self.clone();
                for (e, c) in &other.terms {
                    out.add_term(e.clone(), -c.clone());
                }
                out
            }
            ArithOp::Mul => {
                let mut out = self.zero_like();
                for (ea, ca) in &self.terms {
                    for (eb, cb) in &other.terms {
                        let e: Exponent = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                        out.add_term(e, ca.clone() * cb.clone());
                    }
                }
                out
            }
        })
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.arith(other, ArithOp::Add)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.arith(other, ArithOp::Sub)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.arith(other, ArithOp::Mul)
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = self.zero_like();
        for (e, a) in &self.terms {
            out.add_term(e.clone(), a.clone() * c.clone());
        }
        out
    }

    pub fn mul_monomial(&self, exps: &[i32]) -> Self {
        let mut out = self.zero_like();
        for (e, c) in &self.terms {
            let e2: Exponent = e.iter().zip(exps).map(|(a, b)| a + b).collect();
            out.terms.insert(e2, c.clone());
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = self.one_like();
        let mut base = self.clone();
        let mut k = n;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `(min, max)` exponent of a variable over all terms.
    pub fn degree_range(&self, var: usize) -> Option<(i32, i32)> {
        let mut it = self.terms.keys().map(|e| e[var]);
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), x| (lo.min(x), hi.max(x))))
    }

    pub fn min_exponents(&self) -> Option<Exponent> {
        let mut it = self.terms.keys();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, e| acc.iter().zip(e).map(|(a, b)| *a.min(b)).collect()))
    }

    pub fn max_exponents(&self) -> Option<Exponent> {
        let mut it = self.terms.keys();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, e| acc.iter().zip(e).map(|(a, b)| *a.max(b)).collect()))
    }

    /// Coefficients as a polynomial in `var`; the returned pieces keep the
    /// full variable list with the exponent of `var` set to zero.
    pub fn coefficients_in(&self, var: usize) -> BTreeMap<i32, Self> {
        let mut out: BTreeMap<i32, Self> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let k = std::mem::replace(&mut e2[var], 0);
            out.entry(k).or_insert_with(|| self.zero_like()).add_term(e2, c.clone());
        }
        out
    }

    /// Inverse of [`coefficients_in`](Self::coefficients_in).
    pub fn from_coefficients_in(like: &Self, var: usize, coeffs: &BTreeMap<i32, Self>) -> Self {
        let mut out = like.zero_like();
        for (k, p) in coeffs {
            for (e, c) in &p.terms {
                let mut e2 = e.clone();
                e2[var] += *k;
                out.add_term(e2, c.clone());
            }
        }
        out
    }

    pub fn derivative(&self, var: usize) -> Self {
        let mut out = self.zero_like();
        for (e, c) in &self.terms {
            let k = e[var];
            if k == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[var] -= 1;
            out.add_term(e2, c.clone() * int_coeff::<C>(k as i64));
        }
        out
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> LaurentPoly<D> {
        let mut out = LaurentPoly { vars: self.vars.clone(), terms: BTreeMap::new() };
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c));
        }
        out
    }

    /// Re-express over a new variable list containing all variables in use.
    pub fn with_vars<S: AsRef<str>>(&self, vars: &[S]) -> Result<Self> {
        let target = Self::zero(vars);
        let map: Vec<Option<usize>> = self
            .vars
            .iter()
            .map(|v| target.vars.iter().position(|w| w == v))
            .collect();
        let mut out = target;
        for (e, c) in &self.terms {
            let mut e2 = vec![0; out.nvars()];
            for (i, &k) in e.iter().enumerate() {
                match map[i] {
                    Some(j) => e2[j] = k,
                    None if k == 0 => {}
                    None => {
                        return Err(Error::Structural(format!(
                            "variable `{}` is used but absent from {:?}",
                            self.vars[i],
                            out.vars
                        )))
                    }
                }
            }
            out.add_term(e2, c.clone());
        }
        Ok(out)
    }

    /// Variables with a nonzero exponent in some term.
    pub fn used_vars(&self) -> Vec<usize> {
        (0..self.nvars())
            .filter(|&i| self.terms.keys().any(|e| e[i] != 0))
            .collect()
    }

    /// Multiply by the minimal monomial in `var` making its exponents nonnegative.
    /// Returns the cleared polynomial and the applied power of `var`.
    pub fn clear_var(&self, var: usize) -> (Self, i32) {
        match self.degree_range(var) {
            Some((lo, _)) if lo < 0 => {
                let mut e = vec![0; self.nvars()];
                e[var] = -lo;
                (self.mul_monomial(&e), -lo)
            }
            _ => (self.clone(), 0),
        }
    }

    /// Multiply by the minimal monomial making every exponent nonnegative.
    pub fn clear_all(&self) -> (Self, Exponent) {
        match self.min_exponents() {
            Some(lo) => {
                let shift: Exponent = lo.iter().map(|&x| (-x).max(0)).collect();
                (self.mul_monomial(&shift), shift)
            }
            None => (self.clone(), vec![0; self.nvars()]),
        }
    }

    /// Divide out the largest monomial factor (the result has a term with
    /// zero exponent in every variable's minimum).
    pub fn strip_monomial(&self) -> (Self, Exponent) {
        match self.min_exponents() {
            Some(lo) => {
                let neg: Exponent = lo.iter().map(|&x| -x).collect();
                (self.mul_monomial(&neg), lo)
            }
            None => (self.clone(), vec![0; self.nvars()]),
        }
    }
}

impl<C: FieldCoeff> LaurentPoly<C> {
    /// Evaluate at a point given in variable order.
    pub fn eval(&self, point: &[C]) -> C {
        assert_eq!(point.len(), self.nvars(), "point dimension mismatch");
        let mut cache: Vec<BTreeMap<i32, C>> = vec![BTreeMap::new(); self.nvars()];
        let mut acc = C::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let pw = cache[i].entry(k).or_insert_with(|| pow_i32(&point[i], k)).clone();
                t = t * pw;
            }
            acc = acc + t;
        }
        acc
    }

    /// Substitute a value for one variable; the variable stays in the list with exponent zero.
    pub fn substitute(&self, var: usize, value: &C) -> Self {
        let mut out = self.zero_like();
        let mut cache: BTreeMap<i32, C> = BTreeMap::new();
        for (e, c) in &self.terms {
            let k = e[var];
            let pw = cache.entry(k).or_insert_with(|| pow_i32(value, k)).clone();
            let mut e2 = e.clone();
            e2[var] = 0;
            out.add_term(e2, c.clone() * pw);
        }
        out
    }
}

impl QPoly {
    /// Numeric image with working-precision complex coefficients.
    pub fn to_complex<R: Real>(&self) -> CPoly<R> {
        self.map_coeffs(|c| <Rational as ToComplex<R>>::to_complex(c))
    }

    /// Substitute complex values for some variables, keeping the rest symbolic.
    pub fn eval_partial<R: Real>(&self, assignments: &[(usize, Complex<R>)]) -> CPoly<R> {
        let mut p = self.to_complex::<R>();
        for (i, v) in assignments {
            p = p.substitute(*i, v);
        }
        p
    }
}

impl<R: Real> CPoly<R> {
    /// Largest coefficient magnitude.
    pub fn max_coeff_abs(&self) -> f64 {
        self.terms.values().map(|c| c.norm().to_f64()).fold(0.0, f64::max)
    }

    /// Sum of `|c| * |point^e|`, the natural scale for residual tests.
    pub fn eval_scale(&self, point: &[Complex<R>]) -> f64 {
        let abs_point: Vec<Complex<R>> =
            point.iter().map(|z| Complex::new(z.norm(), R::zero())).collect();
        self.map_coeffs(|c| Complex::new(c.norm(), R::zero())).eval(&abs_point).re.to_f64()
    }
}

pub(crate) fn int_coeff<C: Coeff>(k: i64) -> C {
    // binary accumulation keeps this cheap for large k
    let mut acc = C::zero();
    let mut unit = C::one();
    let mut n = k.unsigned_abs();
    while n > 0 {
        if n & 1 == 1 {
            acc = acc + unit.clone();
        }
        n >>= 1;
        if n > 0 {
            unit = unit.clone() + unit;
        }
    }
    if k < 0 {
        -acc
    } else {
        acc
    }
}

impl<C: Coeff> Add for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn add(self, rhs: Self) -> LaurentPoly<C> {
        self.checked_add(rhs).expect("variable lists must match")
    }
}

impl<C: Coeff> Sub for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn sub(self, rhs: Self) -> LaurentPoly<C> {
        self.checked_sub(rhs).expect("variable lists must match")
    }
}

impl<C: Coeff> Mul for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn mul(self, rhs: Self) -> LaurentPoly<C> {
        self.checked_mul(rhs).expect("variable lists must match")
    }
}

impl<C: Coeff> Add for LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn add(self, rhs: Self) -> LaurentPoly<C> {
        &self + &rhs
    }
}

impl<C: Coeff> Sub for LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn sub(self, rhs: Self) -> LaurentPoly<C> {
        &self - &rhs
    }
}

impl<C: Coeff> Mul for LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn mul(self, rhs: Self) -> LaurentPoly<C> {
        &self * &rhs
    }
}

impl<C: Coeff> Neg for LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn neg(self) -> LaurentPoly<C> {
        self.scale(&-C::one())
    }
}

impl<C: Coeff> Neg for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn neg(self) -> LaurentPoly<C> {
        self.scale(&-C::one())
    }
}

fn fmt_monomial(vars: &[String], e: &[i32]) -> String {
    let mut parts = Vec::new();
    for (v, &k) in vars.iter().zip(e) {
        match k {
            0 => {}
            1 => parts.push(v.clone()),
            _ => parts.push(format!("{v}^{k}")),
        }
    }
    parts.join("*")
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let mono = fmt_monomial(&self.vars, e);
            let neg = c < &Rational::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            let sign = match (first, neg) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            let body = if mono.is_empty() {
                format!("{mag}")
            } else if mag.is_one() {
                mono
            } else {
                format!("{mag}*{mono}")
            };
            write!(f, "{sign}{body}")?;
            first = false;
        }
        Ok(())
    }
}

impl<C: fmt::Debug> fmt::Debug for LaurentPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        write!(f, "LaurentPoly[")?;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "({c:?})")?;
            let mono = fmt_monomial(&self.vars, e);
            if !mono.is_empty() {
                write!(f, "*{mono}")?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, "; vars={:?}]", self.vars)
    }
}
