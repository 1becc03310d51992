//! Sylvester resultants and exact division for rational Laurent polynomials.

use std::collections::BTreeMap;

use num_complex::Complex;
use num_traits::{One, Zero};

use super::laurent::{CPoly, QPoly};
use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::scalar::Real;

/// Result of eliminating one variable.
#[derive(Debug, Clone)]
pub struct Resultant {
    /// The resultant; the eliminated variable stays in the variable list with exponent zero.
    pub poly: QPoly,
    /// Powers of the eliminated variable multiplied into `f` and `g` to clear negative exponents.
    pub cleared: [i32; 2],
    pub warnings: Vec<String>,
}

/// Exact quotient `a / b`, failing if `b` does not divide `a`.
pub fn exact_div(a: &QPoly, b: &QPoly) -> Result<QPoly> {
    if b.is_zero() {
        return Err(Error::Domain("division by the zero polynomial".into()));
    }
    if a.is_zero() {
        return Ok(a.zero_like());
    }
    let (lb_exp, lb_coef) = b.leading_term().map(|(e, c)| (e.clone(), c.clone())).expect("nonzero");
    if b.is_monomial() {
        let neg: Vec<i32> = lb_exp.iter().map(|k| -k).collect();
        return Ok(a.mul_monomial(&neg).scale(&lb_coef.recip()));
    }
    // Any exact quotient has its exponents in this box; leaving it proves non-divisibility
    // and bounds the lexicographic descent.
    let (amin, amax) = (a.min_exponents().unwrap(), a.max_exponents().unwrap());
    let (bmin, bmax) = (b.min_exponents().unwrap(), b.max_exponents().unwrap());
    let lo: Vec<i32> = amin.iter().zip(&bmax).map(|(x, y)| x - y).collect();
    let hi: Vec<i32> = amax.iter().zip(&bmin).map(|(x, y)| x - y).collect();
    let mut rem = a.clone();
    let mut quot = a.zero_like();
    while let Some((re, rc)) = rem.leading_term().map(|(e, c)| (e.clone(), c.clone())) {
        let qe: Vec<i32> = re.iter().zip(&lb_exp).map(|(x, y)| x - y).collect();
        if qe.iter().zip(lo.iter().zip(&hi)).any(|(k, (l, h))| k < l || k > h) {
            return Err(Error::Domain("polynomial division is not exact".into()));
        }
        let qc = rc / lb_coef.clone();
        let t = b.mul_monomial(&qe).scale(&qc);
        rem = &rem - &t;
        quot.add_term(qe, qc);
    }
    Ok(quot)
}

/// Pseudo-remainder of `a` by `b` in variable `var` (both cleared of negative powers there).
///
/// When the leading coefficient of `b` is constant the remainder is the true
/// remainder; otherwise it is `lc(b)^k · a mod b`.
pub fn pseudo_remainder(a: &QPoly, b: &QPoly, var: usize) -> Result<QPoly> {
    let bc = b.coefficients_in(var);
    let (&db, lc) = bc.iter().next_back().ok_or_else(|| Error::Domain("remainder by zero".into()))?;
    if bc.keys().next().copied().unwrap_or(0) < 0 {
        return Err(Error::Domain("divisor has negative powers of the variable".into()));
    }
    let lc = lc.clone();
    let lc_const = lc.is_constant();
    let mut r = a.clone();
    loop {
        let rc = r.coefficients_in(var);
        let Some((&dr, top)) = rc.iter().next_back() else { return Ok(r) };
        if dr < db {
            return Ok(r);
        }
        let mut shift = vec![0; r.nvars()];
        shift[var] = dr - db;
        if lc_const {
            let c = lc.constant_term().recip();
            r = &r - &b.mul_monomial(&shift).checked_mul(&top.scale(&c))?;
        } else {
            r = &r.checked_mul(&lc)? - &b.mul_monomial(&shift).checked_mul(top)?;
        }
    }
}

/// Sylvester resultant of `f` and `g` with respect to `var`.
pub fn resultant(f: &QPoly, g: &QPoly, var: &str) -> Result<Resultant> {
    let v = f.var_index(var)?;
    if f.vars() != g.vars() {
        return Err(Error::Structural("resultant operands have different variable lists".into()));
    }
    let (fc, kf) = f.clear_var(v);
    let (gc, kg) = g.clear_var(v);
    let df = fc.degree_range(v).map_or(0, |r| r.1);
    let dg = gc.degree_range(v).map_or(0, |r| r.1);
    if f.is_zero() || g.is_zero() {
        return Ok(Resultant { poly: f.zero_like(), cleared: [kf, kg], warnings: vec![] });
    }
    if df == 0 && dg == 0 {
        return Err(Error::Domain(format!("both polynomials are constant in `{var}`")));
    }
    let mut warnings = Vec::new();
    let a = fc.coefficients_in(v);
    let b = gc.coefficients_in(v);
    for (name, c, d) in [("first", &a, df), ("second", &b, dg)] {
        if d > 0 && !c[&d].is_monomial() {
            warnings.push(format!(
                "leading coefficient in `{var}` of the {name} polynomial depends on the parameters; \
                 the resultant also vanishes where it does"
            ));
        }
    }
    if df == 0 {
        return Ok(Resultant { poly: a[&0].pow(dg as u32), cleared: [kf, kg], warnings });
    }
    if dg == 0 {
        return Ok(Resultant { poly: b[&0].pow(df as u32), cleared: [kf, kg], warnings });
    }
    let m = sylvester(&a, &b, df as usize, dg as usize, &fc.zero_like());
    Ok(Resultant { poly: bareiss_det(m)?, cleared: [kf, kg], warnings })
}

fn sylvester<P: Clone>(
    a: &BTreeMap<i32, P>,
    b: &BTreeMap<i32, P>,
    df: usize,
    dg: usize,
    zero: &P,
) -> Vec<Vec<P>> {
    let n = df + dg;
    let mut m = vec![vec![zero.clone(); n]; n];
    for row in 0..dg {
        for (&k, c) in a {
            m[row][row + df - k as usize] = c.clone();
        }
    }
    for row in 0..df {
        for (&k, c) in b {
            m[dg + row][row + dg - k as usize] = c.clone();
        }
    }
    m
}

/// Fraction-free determinant.
pub fn bareiss_det(mut m: Vec<Vec<QPoly>>) -> Result<QPoly> {
    let n = m.len();
    if n == 0 {
        return Err(Error::Structural("determinant of an empty matrix".into()));
    }
    let zero = m[0][0].zero_like();
    let mut prev = zero.one_like();
    let mut negate = false;
    for k in 0..n {
        if m[k][k].is_zero() {
            // prefer the sparsest available pivot to keep intermediate swell down
            let pick = (k + 1..n)
                .filter(|&i| !m[i][k].is_zero())
                .min_by_key(|&i| m[i][k].num_terms());
            match pick {
                Some(i) => {
                    m.swap(i, k);
                    negate = !negate;
                }
                None => return Ok(zero),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = exact_div(&num, &prev)?;
            }
            m[i][k] = zero.clone();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    Ok(if negate { -det } else { det })
}

/// Determinant of the numeric Sylvester matrix of `f`, `g` in `var` after
/// substituting `point` (values for every other variable, in list order; the
/// entry for `var` is ignored).
pub fn sylvester_det_at<R: Real>(
    f: &QPoly,
    g: &QPoly,
    var: &str,
    point: &[Complex<R>],
) -> Result<Complex<R>> {
    let v = f.var_index(var)?;
    let numeric = |p: &QPoly| -> BTreeMap<i32, Complex<R>> {
        let (pc, _) = p.clear_var(v);
        let mut pt = point.to_vec();
        pt[v] = Complex::one();
        pc.coefficients_in(v)
            .into_iter()
            .map(|(k, c)| (k, c.to_complex::<R>().eval(&pt)))
            .collect()
    };
    let a = numeric(f);
    let b = numeric(g);
    let df = a.keys().next_back().copied().unwrap_or(0) as usize;
    let dg = b.keys().next_back().copied().unwrap_or(0) as usize;
    let rows = sylvester(&a, &b, df, dg, &Complex::zero());
    Ok(CMatrix::from_rows(&rows).det())
}

/// Substitute numeric values into every variable but `keep`, returning a univariate polynomial.
pub fn specialize<R: Real>(p: &QPoly, keep: usize, values: &[Complex<R>]) -> CPoly<R> {
    let mut out = p.to_complex::<R>();
    for (i, v) in values.iter().enumerate() {
        if i != keep && out.degree_range(i).is_some_and(|r| r != (0, 0)) {
            out = out.substitute(i, v);
        }
    }
    out
}
