//! Small dense complex matrices at working precision.

use std::ops::{Index, IndexMut, Mul, Sub};

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix<R> {
    rows: usize,
    cols: usize,
    data: Vec<Complex<R>>,
}

impl<R: Real> CMatrix<R> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrix { rows, cols, data: vec![Complex::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Complex<R>>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged matrix");
            for (j, x) in row.iter().enumerate() {
                m[(i, j)] = *x;
            }
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Complex<R>) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Complex<R>] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Complex<R>> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    /// Submatrix on the given row and column index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self[(rows[i], cols[j])])
    }

    /// Place `block` with its top-left corner at `(r, c)`.
    pub fn set_block(&mut self, r: usize, c: usize, block: &Self) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(r + i, c + j)] = block[(i, j)];
            }
        }
    }

    pub fn scale(&self, s: Complex<R>) -> Self {
        CMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| *x * s).collect() }
    }

    pub fn mul_vec(&self, v: &[Complex<R>]) -> Vec<Complex<R>> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).fold(Complex::zero(), |acc, (a, b)| acc + *a * *b))
            .collect()
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|x| x.norm().to_f64()).fold(0.0, f64::max)
    }

    /// Determinant by LU with partial pivoting.
    pub fn det(&self) -> Complex<R> {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut det = Complex::<R>::one();
        for k in 0..n {
            let p = (k..n)
                .max_by(|&i, &j| a[(i, k)].norm().partial_cmp(&a[(j, k)].norm()).unwrap())
                .unwrap();
            if a[(p, k)].is_zero() {
                return Complex::zero();
            }
            if p != k {
                a.swap_rows(p, k);
                det = -det;
            }
            let piv = a[(k, k)];
            det = det * piv;
            for i in k + 1..n {
                let f = a[(i, k)] / piv;
                if f.is_zero() {
                    continue;
                }
                for j in k + 1..n {
                    let t = a[(k, j)];
                    a[(i, j)] = a[(i, j)] - f * t;
                }
            }
        }
        det
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Numerical rank with full pivoting; entries below `tol · max_abs` count as zero.
    /// Returns the rank and the pivot columns in elimination order.
    pub fn rank(&self, tol: f64) -> (usize, Vec<usize>) {
        let mut a = self.clone();
        let thresh = tol * self.max_abs();
        let mut cols: Vec<usize> = (0..self.cols).collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        while r < a.rows.min(a.cols) {
            let mut best = (r, r, -1.0);
            for i in r..a.rows {
                for j in r..a.cols {
                    let v = a[(i, j)].norm().to_f64();
                    if v > best.2 {
                        best = (i, j, v);
                    }
                }
            }
            if best.2 <= thresh || best.2 == 0.0 {
                break;
            }
            a.swap_rows(best.0, r);
            if best.1 != r {
                for i in 0..a.rows {
                    a.data.swap(i * a.cols + best.1, i * a.cols + r);
                }
                cols.swap(best.1, r);
            }
            pivots.push(cols[r]);
            let piv = a[(r, r)];
            for i in r + 1..a.rows {
                let f = a[(i, r)] / piv;
                for j in r..a.cols {
                    let t = a[(r, j)];
                    a[(i, j)] = a[(i, j)] - f * t;
                }
            }
            r += 1;
        }
        (r, pivots)
    }

    /// Solve `self · x = b` for square `self`.
    pub fn solve(&self, b: &[Complex<R>]) -> Result<Vec<Complex<R>>> {
        if !self.is_square() || b.len() != self.rows {
            return Err(Error::Structural(format!(
                "cannot solve a {}x{} system with a right-hand side of length {}",
                self.rows,
                self.cols,
                b.len()
            )));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut x = b.to_vec();
        for k in 0..n {
            let p = (k..n)
                .max_by(|&i, &j| a[(i, k)].norm().partial_cmp(&a[(j, k)].norm()).unwrap())
                .unwrap();
            if a[(p, k)].is_zero() {
                return Err(Error::Domain("singular matrix".into()));
            }
            a.swap_rows(p, k);
            x.swap(p, k);
            let piv = a[(k, k)];
            for i in k + 1..n {
                let f = a[(i, k)] / piv;
                for j in k..n {
                    let t = a[(k, j)];
                    a[(i, j)] = a[(i, j)] - f * t;
                }
                let t = x[k];
                x[i] = x[i] - f * t;
            }
        }
        for k in (0..n).rev() {
            let mut s = x[k];
            for j in k + 1..n {
                s = s - a[(k, j)] * x[j];
            }
            x[k] = s / a[(k, k)];
        }
        Ok(x)
    }
}

impl<R> Index<(usize, usize)> for CMatrix<R> {
    type Output = Complex<R>;
    fn index(&self, (i, j): (usize, usize)) -> &Complex<R> {
        &self.data[i * self.cols + j]
    }
}

impl<R> IndexMut<(usize, usize)> for CMatrix<R> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<R> {
        &mut self.data[i * self.cols + j]
    }
}

impl<R: Real> Mul for &CMatrix<R> {
    type Output = CMatrix<R>;
    fn mul(self, rhs: Self) -> CMatrix<R> {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let mut out = CMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] = out[(i, j)] + a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl<R: Real> Sub for &CMatrix<R> {
    type Output = CMatrix<R>;
    fn sub(self, rhs: Self) -> CMatrix<R> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| *a - *b).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cplx;

    fn m(rows: &[&[(f64, f64)]]) -> CMatrix<f64> {
        CMatrix::from_rows(
            &rows.iter().map(|r| r.iter().map(|&(a, b)| cplx(a, b)).collect()).collect::<Vec<_>>(),
        )
    }

    #[test]
    fn determinant_and_solve() {
        let a = m(&[&[(2.0, 0.0), (1.0, 1.0)], &[(0.0, -1.0), (3.0, 0.0)]]);
        // 6 - (1+i)(-i) = 6 + i - 1 = 5 + i
        assert!((a.det() - cplx(5.0, 1.0)).norm() < 1e-14);
        let x = a.solve(&[cplx(1.0, 0.0), cplx(0.0, 2.0)]).unwrap();
        let back = a.mul_vec(&x);
        assert!((back[0] - cplx(1.0, 0.0)).norm() < 1e-14);
        assert!((back[1] - cplx(0.0, 2.0)).norm() < 1e-14);
    }

    #[test]
    fn rank_detects_dependence() {
        let a = m(&[
            &[(1.0, 0.0), (2.0, 0.0), (3.0, 0.0)],
            &[(2.0, 0.0), (4.0, 0.0), (6.0, 0.0)],
            &[(0.0, 1.0), (0.0, 0.0), (1.0, 0.0)],
        ]);
        let (r, piv) = a.rank(1e-12);
        assert_eq!(r, 2);
        assert_eq!(piv.len(), 2);
        assert!(a.det().norm() < 1e-12);
        assert!(m(&[&[(0.0, 0.0)]]).solve(&[cplx(1.0, 0.0)]).is_err());
    }

    #[test]
    fn product_with_identity() {
        let a = m(&[&[(1.0, 2.0), (3.0, 0.0)], &[(0.0, 0.0), (-1.0, 1.0)]]);
        assert_eq!(&a * &CMatrix::identity(2), a);
        assert_eq!(a.transpose().transpose(), a);
    }
}
