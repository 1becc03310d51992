use num_complex::Complex;
use num_traits::{One, Zero};

use super::complex::BasedChainComplex;
use super::TorsionValue;
use crate::adjoint::{Mat3T, PolyMatrix, RepPoint};
use crate::error::{Error, Result};
use crate::fox::{GroupRingElement, Word};
use crate::linalg::CMatrix;
use crate::poly::{Normalization, RationalFunctionT, TPoly};
use crate::scalar::Real;

/// `det ∂_{2;ĵ} / det Φ(g_j − 1)` with its canonical `±tⁿ` representative.
#[derive(Clone, Debug)]
pub struct TorsionPolynomial<R> {
    /// Deleted generator, 1-based.
    pub j: u32,
    /// The quotient exactly as assembled (sign `ε = +1`).
    pub raw: RationalFunctionT<R>,
    /// `raw` with the denominator's roots cancelled where the numerator shares them.
    pub reduced: RationalFunctionT<R>,
    /// `reduced` times `sign · t^power`.
    pub normalized: RationalFunctionT<R>,
    pub normalization: Normalization,
}

/// Fox data evaluated through Φ: the blocks `Φ(g_j − 1)` and `Φ(∂r_i/∂g_j)`.
#[derive(Clone, Debug)]
pub struct FoxBlocks<R> {
    pub generator_blocks: Vec<Mat3T<R>>,
    pub relator_blocks: Vec<Vec<Mat3T<R>>>,
}

impl<R: Real> FoxBlocks<R> {
    pub fn new(rep: &RepPoint<R>) -> Result<Self> {
        let pres = rep.presentation();
        let n = pres.generator_count();
        let generator_blocks = (1..=n)
            .map(|j| {
                let e = GroupRingElement::from_terms([(Word::generator(j), 1), (Word::identity(), -1)]);
                rep.phi(&e)
            })
            .collect::<Result<Vec<_>>>()?;
        let relator_blocks = pres
            .fox_jacobian()
            .iter()
            .map(|row| row.iter().map(|e| rep.phi(e)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(FoxBlocks { generator_blocks, relator_blocks })
    }

    pub fn generator_count(&self) -> usize {
        self.generator_blocks.len()
    }

    /// `∂_2` with the `j`-th generator block removed: a square `3(n−1)` matrix whose
    /// block `(i, k)` is `Φ(∂r_i/∂g_k)`, `k ≠ j`.
    pub fn deleted(&self, j: u32) -> Mat3T<R> {
        let n = self.generator_count();
        let size = 3 * (n - 1);
        let mut m = PolyMatrix::zeros(size, size);
        for (i, row) in self.relator_blocks.iter().enumerate() {
            for (c, k) in (0..n).filter(|&k| k != j as usize - 1).enumerate() {
                m.set_block(3 * i, 3 * c, &row[k]);
            }
        }
        m
    }
}

/// Determinant of a square polynomial matrix by evaluation at roots of unity and interpolation.
pub fn poly_det<R: Real>(m: &PolyMatrix<R>) -> TPoly<R> {
    assert_eq!(m.rows(), m.cols(), "determinant of a non-square matrix");
    if m.rows() == 0 {
        return TPoly::constant(Complex::one());
    }
    let bounds = m.row_degree_bounds();
    if bounds.iter().any(Option::is_none) {
        return TPoly::zero();
    }
    let lo: i32 = bounds.iter().map(|b| b.unwrap().0).sum();
    let hi: i32 = bounds.iter().map(|b| b.unwrap().1).sum();
    let n = (hi - lo + 1) as usize;
    let nodes = roots_of_unity::<R>(n);
    let values: Vec<Complex<R>> = nodes.iter().map(|&w| m.eval(w).det() * w.powi(-lo)).collect();
    let inv_n = R::one() / R::from_i64(n as i64);
    let mut coeffs: Vec<Complex<R>> = (0..n)
        .map(|d| {
            let mut acc = Complex::zero();
            for (k, v) in values.iter().enumerate() {
                // ω_k^{-d} = conj(ω_{(k·d) mod n})
                acc = acc + *v * nodes[(k * d) % n].conj();
            }
            acc * inv_n
        })
        .collect();
    // interpolation noise on the structurally zero outer coefficients
    let max = coeffs.iter().map(|c| c.norm().to_f64()).fold(0.0, f64::max);
    let floor = 64.0 * n as f64 * R::unit_roundoff().to_f64() * max;
    while coeffs.last().is_some_and(|c| c.norm().to_f64() <= floor) {
        coeffs.pop();
    }
    let lead = coeffs.iter().take_while(|c| c.norm().to_f64() <= floor).count();
    coeffs.drain(..lead);
    TPoly::new(lo + lead as i32, coeffs)
}

fn roots_of_unity<R: Real>(n: usize) -> Vec<Complex<R>> {
    let two_pi = R::PI() * R::from_f64(2.0);
    (0..n)
        .map(|k| {
            let (s, c) = (two_pi * R::from_i64(k as i64) / R::from_i64(n as i64)).sin_cos();
            Complex::new(c, s)
        })
        .collect()
}

/// The torsion polynomial, deleting generator `j` or the first valid one.
pub fn torsion_polynomial<R: Real>(rep: &RepPoint<R>, j: Option<u32>) -> Result<TorsionPolynomial<R>> {
    let blocks = FoxBlocks::new(rep)?;
    torsion_polynomial_from(&blocks, j)
}

pub fn torsion_polynomial_from<R: Real>(blocks: &FoxBlocks<R>, j: Option<u32>) -> Result<TorsionPolynomial<R>> {
    let n = blocks.generator_count() as u32;
    let candidates: Vec<u32> = match j {
        Some(j) if j == 0 || j > n => {
            return Err(Error::Structural(format!("generator index {j} out of range 1..={n}")));
        }
        Some(j) => vec![j],
        None => (1..=n).collect(),
    };
    for j in candidates {
        let gen = &blocks.generator_blocks[j as usize - 1];
        let den = poly_det(gen);
        let scale = gen.max_coeff_abs().max(1.0).powi(3);
        if den.is_zero() || den.max_coeff_abs() <= 1e3 * R::unit_roundoff().to_f64() * scale {
            continue;
        }
        let num = poly_det(&blocks.deleted(j));
        let raw = RationalFunctionT::new(num, den)?;
        let reduced = cancel_denominator_roots(&raw);
        let (normalized, normalization) = reduced.normalized();
        return Ok(TorsionPolynomial { j, raw, reduced, normalized, normalization });
    }
    Err(Error::RepresentationDegenerate("det Φ(g_j − 1) vanishes identically for every j".into()))
}

fn cancel_denominator_roots<R: Real>(r: &RationalFunctionT<R>) -> RationalFunctionT<R> {
    let den = r.denominator();
    let coeffs: Vec<Complex<R>> = (den.valuation()..=den.degree()).map(|k| den.coeff(k)).collect();
    let Ok(roots) = crate::poly::roots_of(&coeffs) else {
        return r.clone();
    };
    let tol = 1e-8 * crate::scalar::precision_scale::<R>();
    roots.distinct().into_iter().fold(r.clone(), |acc, t0| acc.cancel_root(t0, tol).0)
}

/// `Tor(M; 𝔤_ρ, λ) = −d/dt|_{t=1}` of the torsion polynomial, after checking the simple zero.
pub fn torsion_at_longitude<R: Real>(rep: &RepPoint<R>) -> Result<TorsionValue<R>> {
    let tp = torsion_polynomial(rep, None)?;
    longitude_torsion_from(&tp)
}

pub fn longitude_torsion_from<R: Real>(tp: &TorsionPolynomial<R>) -> Result<TorsionValue<R>> {
    let one = Complex::<R>::one();
    // the same bound as the vanishing check below: the numerator's zero at 1 is only as
    // accurate as the determinant's cancellation allows, whatever the working precision
    let tol = 1e-8;
    let (r, _) = tp.raw.cancel_root(one, tol);
    let (v, d) = r.eval_and_derivative(one)?;
    let scale = r.numerator().abs_scale(one) / r.denominator().eval(one).norm().to_f64();
    if v.norm().to_f64() > 1e-8 * scale {
        return Err(Error::NonRegular(format!(
            "torsion polynomial does not vanish at t = 1 (|T(1)| = {:.3e}, scale {scale:.3e})",
            v.norm().to_f64()
        )));
    }
    if d.norm().to_f64() < 1e-6 * scale {
        return Err(Error::NonRegular(format!(
            "torsion polynomial has a multiple zero at t = 1 (|T'(1)| = {:.3e}, scale {scale:.3e})",
            d.norm().to_f64()
        )));
    }
    Ok(TorsionValue { value: -d, sign_fixed: true, t_power_ambiguity: None, warnings: Vec::new() })
}

/// The presentation complex twisted by Φ at `t0`, ordered so that its torsion is the
/// Fox quotient: `ℂ³ → ℂ^{3n} → ℂ^{3(n−1)}` with maps `Φ(g_j − 1)` and `Φ(∂r_i/∂g_j)`.
pub fn presentation_complex_at<R: Real>(blocks: &FoxBlocks<R>, t0: Complex<R>) -> Result<BasedChainComplex<R>> {
    let n = blocks.generator_count();
    let mut top = CMatrix::zeros(3 * n, 3);
    for (j, g) in blocks.generator_blocks.iter().enumerate() {
        top.set_block(3 * j, 0, &g.eval(t0));
    }
    let mut mid = CMatrix::zeros(3 * (n - 1), 3 * n);
    for (i, row) in blocks.relator_blocks.iter().enumerate() {
        for (k, b) in row.iter().enumerate() {
            mid.set_block(3 * i, 3 * k, &b.eval(t0));
        }
    }
    BasedChainComplex::acyclic(vec![mid, top])
}
