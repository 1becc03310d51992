//! SL₂(ℂ) representations, the adjoint action on 𝔰𝔩₂ and the twisted map Φ.
//!
//! 𝔰𝔩₂ carries the ordered basis `h = [[1,0],[0,-1]]`, `e = [[0,1],[0,0]]`,
//! `f = [[0,0],[1,0]]`, so `X = [[x11, x12], [x21, -x11]]` has coordinates
//! `(x11, x12, x21)`.

use std::collections::BTreeMap;
use std::ops::Mul;
use std::sync::Arc;

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::fox::{GroupRingElement, Presentation, Word};
use crate::linalg::CMatrix;
use crate::poly::{QPoly, TPoly};
use crate::scalar::Real;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat2<R> {
    pub a: Complex<R>,
    pub b: Complex<R>,
    pub c: Complex<R>,
    pub d: Complex<R>,
}

impl<R: Real> Mat2<R> {
    pub fn new(a: Complex<R>, b: Complex<R>, c: Complex<R>, d: Complex<R>) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn identity() -> Self {
        Mat2::new(Complex::one(), Complex::zero(), Complex::zero(), Complex::one())
    }

    pub fn det(&self) -> Complex<R> {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> Complex<R> {
        self.a + self.d
    }

    pub fn max_abs(&self) -> f64 {
        [self.a, self.b, self.c, self.d].iter().map(|z| z.norm().to_f64()).fold(0.0, f64::max)
    }

    pub fn inverse(&self) -> Self {
        let det = self.det();
        Mat2::new(self.d / det, -self.b / det, -self.c / det, self.a / det)
    }

    /// `‖self − other‖_max`.
    pub fn distance(&self, other: &Self) -> f64 {
        [self.a - other.a, self.b - other.b, self.c - other.c, self.d - other.d]
            .iter()
            .map(|z| z.norm().to_f64())
            .fold(0.0, f64::max)
    }

    /// Check `det = 1` to `1e-12 · scale`.
    pub fn check_sl2(&self) -> Result<()> {
        let scale = 1.0f64.max(self.max_abs().powi(2));
        let err = (self.det() - Complex::one()).norm().to_f64();
        if err > 1e-12 * scale {
            return Err(Error::Domain(format!("matrix is not unimodular (|det - 1| = {err:e})")));
        }
        Ok(())
    }

    pub fn to_matrix(&self) -> CMatrix<R> {
        CMatrix::from_rows(&[vec![self.a, self.b], vec![self.c, self.d]])
    }

    /// The two eigenvalues, from trace and determinant.
    pub fn eigenvalues(&self) -> (Complex<R>, Complex<R>) {
        let tr = self.trace();
        let half = R::from_f64(0.5);
        let disc = (tr * tr - self.det() * R::from_f64(4.0)).sqrt();
        ((tr + disc) * half, (tr - disc) * half)
    }
}

impl<R: Real> Mul for Mat2<R> {
    type Output = Mat2<R>;
    fn mul(self, o: Self) -> Self {
        Mat2::new(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )
    }
}

/// Matrix of `X ↦ a X a⁻¹` on 𝔰𝔩₂ in the basis `(h, e, f)`.
pub fn adjoint<R: Real>(m: &Mat2<R>) -> Result<CMatrix<R>> {
    m.check_sl2()?;
    Ok(adjoint_unchecked(m))
}

fn adjoint_unchecked<R: Real>(m: &Mat2<R>) -> CMatrix<R> {
    let Mat2 { a, b, c, d } = *m;
    let det = m.det();
    let two = R::from_f64(2.0);
    let rows = vec![
        vec![(a * d + b * c) / det, -a * c / det, b * d / det],
        vec![-a * b * two / det, a * a / det, -b * b / det],
        vec![c * d * two / det, -c * c / det, d * d / det],
    ];
    CMatrix::from_rows(&rows)
}

/// Matrix with entries in `ℂ[t, t⁻¹]`.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMatrix<R> {
    rows: usize,
    cols: usize,
    entries: Vec<TPoly<R>>,
}

/// 3×3 matrix over `ℂ[t, t⁻¹]`, the target of Φ.
pub type Mat3T<R> = PolyMatrix<R>;

impl<R: Real> PolyMatrix<R> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        PolyMatrix { rows, cols, entries: vec![TPoly::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = TPoly::constant(Complex::one());
        }
        m
    }

    /// `t^k · m`.
    pub fn from_constant(m: &CMatrix<R>, k: i32) -> Self {
        let mut out = Self::zeros(m.rows(), m.cols());
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                out.entries[i * m.cols() + j] = TPoly::monomial(k, m[(i, j)]);
            }
        }
        out
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> &TPoly<R> {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: TPoly<R>) {
        self.entries[i * self.cols + j] = p;
    }

    pub fn set_block(&mut self, r: usize, c: usize, block: &Self) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r + i, c + j, block.entry(i, j).clone());
            }
        }
    }

    pub fn eval(&self, t: Complex<R>) -> CMatrix<R> {
        CMatrix::from_fn(self.rows, self.cols, |i, j| self.entry(i, j).eval(t))
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&o.entries).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows);
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for j in 0..o.cols {
                let mut acc = TPoly::zero();
                for k in 0..self.cols {
                    acc = &acc + &(self.entry(i, k) * o.entry(k, j));
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    /// Per-row `(min, max)` exponent over all entries, `None` for zero rows.
    pub fn row_degree_bounds(&self) -> Vec<Option<(i32, i32)>> {
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self.entry(i, j))
                    .filter(|p| !p.is_zero())
                    .map(|p| (p.valuation(), p.degree()))
                    .reduce(|a, b| (a.0.min(b.0), a.1.max(b.1)))
            })
            .collect()
    }

    /// Largest entry-wise difference of coefficients.
    pub fn max_coeff_diff(&self, o: &Self) -> f64 {
        self.entries
            .iter()
            .zip(&o.entries)
            .map(|(a, b)| (a - b).max_coeff_abs())
            .fold(0.0, f64::max)
    }

    pub fn max_coeff_abs(&self) -> f64 {
        self.entries.iter().map(TPoly::max_coeff_abs).fold(0.0, f64::max)
    }
}

/// A representation of a finitely presented group, given by generator images.
#[derive(Clone, Debug)]
pub struct RepPoint<R> {
    presentation: Arc<Presentation>,
    images: Vec<Mat2<R>>,
    inverses: Vec<Mat2<R>>,
}

impl<R: Real> RepPoint<R> {
    pub fn new(presentation: Arc<Presentation>, images: Vec<Mat2<R>>) -> Result<Self> {
        if images.len() != presentation.generator_count() as usize {
            return Err(Error::Structural(format!(
                "{} generator images for {} generators",
                images.len(),
                presentation.generator_count()
            )));
        }
        for m in &images {
            m.check_sl2()?;
        }
        let inverses = images.iter().map(Mat2::inverse).collect();
        Ok(RepPoint { presentation, images, inverses })
    }

    /// The two-bridge representation `g1 ↦ [[m,1],[0,1/m]]`, `g2 ↦ [[m,0],[y,1/m]]`.
    pub fn two_bridge(presentation: Arc<Presentation>, y: Complex<R>, m: Complex<R>) -> Result<Self> {
        if m.is_zero() || y.is_zero() {
            return Err(Error::Domain("two-bridge parameters must lie in the torus".into()));
        }
        let mi = Complex::<R>::one() / m;
        let g1 = Mat2::new(m, Complex::one(), Complex::zero(), mi);
        let g2 = Mat2::new(m, Complex::zero(), y, mi);
        Self::new(presentation, vec![g1, g2])
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn images(&self) -> &[Mat2<R>] {
        &self.images
    }

    pub fn eval_word(&self, w: &Word) -> Mat2<R> {
        w.letters().iter().fold(Mat2::identity(), |acc, &x| {
            let i = x.unsigned_abs() as usize - 1;
            acc * if x > 0 { self.images[i] } else { self.inverses[i] }
        })
    }

    /// Largest `‖ρ(r) − I‖` over the relators, relative to the size of the generator images.
    pub fn relator_residual(&self) -> f64 {
        let scale = self.images.iter().map(Mat2::max_abs).fold(1.0, f64::max);
        self.presentation
            .relators()
            .iter()
            .map(|r| self.eval_word(r).distance(&Mat2::identity()))
            .fold(0.0, f64::max)
            / scale
    }

    /// Conjugate every generator image by `p`: `g ↦ p g p⁻¹`.
    pub fn conjugate(&self, p: &Mat2<R>) -> Result<Self> {
        let pi = p.inverse();
        let images = self.images.iter().map(|g| *p * *g * pi).collect();
        Self::new(self.presentation.clone(), images)
    }

    /// Eigenvalue of `ρ(w)` on the eigenvector of `ρ(g_1)` for eigenvalue `m`.
    ///
    /// For a peripheral element commuting with the meridian `g_1` this is the
    /// eigenvalue paired with `m`, read without assuming upper-triangular form.
    pub fn peripheral_eigenvalue(&self, w: &Word, m: Complex<R>) -> Result<Complex<R>> {
        let g = self.images[0];
        let v1 = [g.b, m - g.a];
        let v2 = [m - g.d, g.c];
        let n1 = v1[0].norm_sqr() + v1[1].norm_sqr();
        let n2 = v2[0].norm_sqr() + v2[1].norm_sqr();
        let v = if n1 >= n2 { v1 } else { v2 };
        let nv = v[0].norm_sqr() + v[1].norm_sqr();
        if nv.is_zero() {
            return Err(Error::RepresentationDegenerate("meridian image is scalar".into()));
        }
        let a = self.eval_word(w);
        let av = [a.a * v[0] + a.b * v[1], a.c * v[0] + a.d * v[1]];
        Ok((av[0] * v[0].conj() + av[1] * v[1].conj()) / nv)
    }

    /// `Φ(Σ n_w w) = Σ n_w t^{α(w)} Ad(ρ(w))`.
    pub fn phi(&self, e: &GroupRingElement) -> Result<Mat3T<R>> {
        let mut by_power: BTreeMap<i64, CMatrix<R>> = BTreeMap::new();
        for (w, n) in e.terms() {
            let k = self.presentation.abelianization_weight(w);
            let ad = adjoint_unchecked(&self.eval_word(w)).scale(Complex::new(R::from_i64(n), R::zero()));
            let acc = by_power.entry(k).or_insert_with(|| CMatrix::zeros(3, 3));
            for i in 0..3 {
                for j in 0..3 {
                    acc[(i, j)] = acc[(i, j)] + ad[(i, j)];
                }
            }
        }
        let mut out = PolyMatrix::zeros(3, 3);
        for (k, m) in by_power {
            out = out.add(&PolyMatrix::from_constant(&m, k as i32));
        }
        Ok(out)
    }

    pub fn phi_word(&self, w: &Word) -> Result<Mat3T<R>> {
        self.phi(&GroupRingElement::from_word(w.clone()))
    }
}

/// A family of representations over the zero set of a Riley polynomial.
#[derive(Clone, Debug)]
pub struct ParametricRep {
    pub presentation: Arc<Presentation>,
    /// Riley polynomial in `(y, m)`.
    pub riley: QPoly,
    /// Closed-form longitude eigenvalue `l(y, m)`.
    pub longitude: QPoly,
    pub longitude_word: Word,
    /// Sign relating `longitude` to the eigenvalue of `ρ(longitude_word)`.
    pub longitude_sign: i32,
}

impl ParametricRep {
    /// Evaluate at `(y, m)`, requiring the Riley residual to be at most `tol` relative.
    pub fn at<R: Real>(&self, y: Complex<R>, m: Complex<R>, tol: f64) -> Result<RepPoint<R>> {
        let f = self.riley.to_complex::<R>();
        let res = f.eval(&[y, m]).norm().to_f64();
        let scale = f.eval_scale(&[y, m]).max(1.0);
        if res > tol * scale {
            return Err(Error::Domain(format!(
                "(y, m) is not on the character variety: Riley residual {:e}",
                res / scale
            )));
        }
        RepPoint::two_bridge(self.presentation.clone(), y, m)
    }

    /// The longitude eigenvalue from the closed form.
    pub fn longitude_value<R: Real>(&self, y: Complex<R>, m: Complex<R>) -> Complex<R> {
        self.longitude.to_complex::<R>().eval(&[y, m])
    }

    /// The longitude eigenvalue read from `ρ(λ)`, with the preset's sign applied.
    pub fn longitude_from_word<R: Real>(&self, rep: &RepPoint<R>, m: Complex<R>) -> Result<Complex<R>> {
        let l = rep.peripheral_eigenvalue(&self.longitude_word, m)?;
        Ok(if self.longitude_sign < 0 { -l } else { l })
    }
}
