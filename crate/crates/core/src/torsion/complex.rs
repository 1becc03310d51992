use num_complex::Complex;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::TorsionValue;
use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::scalar::Real;

/// `0 → C_n → ⋯ → C_0 → 0` with the standard coordinate basis on each `C_i`.
///
/// `boundaries[i - 1]` is `∂_i : C_i → C_{i-1}` as a `dim C_{i-1} × dim C_i`
/// matrix acting on column vectors; `homology[i]` lists cycle representatives
/// `h̃_i` in coordinates of `C_i`.
#[derive(Clone, Debug)]
pub struct BasedChainComplex<R> {
    dims: Vec<usize>,
    boundaries: Vec<CMatrix<R>>,
    homology: Vec<Vec<Vec<Complex<R>>>>,
}

/// How the auxiliary vectors `b_i` (and representatives `h̃_i`) are chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BChoice {
    /// Coordinate vectors at pivot columns of `∂_i`.
    Pivot,
    /// Random vectors drawn from a seeded generator; homology representatives
    /// are shifted by random boundaries.
    Random(u64),
}

const COMPOSITION_TOL: f64 = 1e-10;
const RANK_TOL: f64 = 1e-10;
const CONDITIONING_WARN: f64 = 1e-8;

impl<R: Real> BasedChainComplex<R> {
    pub fn new(boundaries: Vec<CMatrix<R>>, homology: Vec<Vec<Vec<Complex<R>>>>) -> Result<Self> {
        if boundaries.is_empty() {
            return Err(Error::Structural("a chain complex needs at least one boundary map".into()));
        }
        let mut dims = vec![boundaries[0].rows()];
        for (i, d) in boundaries.iter().enumerate() {
            if d.rows() != dims[i] {
                return Err(Error::Structural(format!(
                    "boundary {} has {} rows, expected dim C_{} = {}",
                    i + 1,
                    d.rows(),
                    i,
                    dims[i]
                )));
            }
            dims.push(d.cols());
        }
        for i in 1..boundaries.len() {
            let prod = &boundaries[i - 1] * &boundaries[i];
            let scale = boundaries[i - 1].max_abs() * boundaries[i].max_abs() * dims[i] as f64;
            if prod.max_abs() > COMPOSITION_TOL * scale.max(1.0) {
                return Err(Error::Structural(format!("∂_{} ∘ ∂_{} is not zero", i, i + 1)));
            }
        }
        if homology.len() > dims.len() {
            return Err(Error::Structural("homology listed in degrees beyond the complex".into()));
        }
        let mut homology = homology;
        homology.resize(dims.len(), Vec::new());
        let cx = BasedChainComplex { dims, boundaries, homology };
        for (i, hs) in cx.homology.iter().enumerate() {
            for h in hs {
                if h.len() != cx.dims[i] {
                    return Err(Error::Structural(format!("homology vector in degree {i} has wrong length")));
                }
                if let Some(d) = cx.boundary(i) {
                    let img = d.mul_vec(h);
                    let norm = h.iter().map(|x| x.norm().to_f64()).fold(0.0, f64::max);
                    let size = img.iter().map(|x| x.norm().to_f64()).fold(0.0, f64::max);
                    if size > COMPOSITION_TOL * (d.max_abs() * norm * d.cols() as f64).max(1.0) {
                        return Err(Error::Structural(format!("homology representative in degree {i} is not a cycle")));
                    }
                }
            }
        }
        Ok(cx)
    }

    /// An acyclic complex.
    pub fn acyclic(boundaries: Vec<CMatrix<R>>) -> Result<Self> {
        Self::new(boundaries, Vec::new())
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn top_degree(&self) -> usize {
        self.dims.len() - 1
    }

    /// `∂_i`, or `None` for `i = 0` and `i > n`.
    pub fn boundary(&self, i: usize) -> Option<&CMatrix<R>> {
        if i == 0 {
            None
        } else {
            self.boundaries.get(i - 1)
        }
    }

    pub fn homology(&self, i: usize) -> &[Vec<Complex<R>>] {
        &self.homology[i]
    }

    /// `|C_*| = Σ_i (Σ_{j≤i} dim C_j)(Σ_{j≤i} dim H_j)`.
    pub fn sign_exponent(&self) -> usize {
        let mut c = 0;
        let mut h = 0;
        let mut total = 0;
        for i in 0..self.dims.len() {
            c += self.dims[i];
            h += self.homology[i].len();
            total += c * h;
        }
        total
    }
}

/// Sign-refined torsion with pivot choices of `b_i`.
pub fn chain_torsion<R: Real>(cx: &BasedChainComplex<R>) -> Result<TorsionValue<R>> {
    chain_torsion_with(cx, BChoice::Pivot)
}

/// `(−1)^{|C_*|} ∏_i [∂_{i+1} b_{i+1} ⊔ h̃_i ⊔ b_i / c_i]^{(−1)^i}`.
pub fn chain_torsion_with<R: Real>(cx: &BasedChainComplex<R>, choice: BChoice) -> Result<TorsionValue<R>> {
    let n = cx.top_degree();
    let mut rng = match choice {
        BChoice::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        BChoice::Pivot => None,
    };

    // b[i] ⊂ C_i, with b[0] empty
    let mut b: Vec<Vec<Vec<Complex<R>>>> = vec![Vec::new(); n + 2];
    for (i, bi) in b.iter_mut().enumerate().take(n + 1).skip(1) {
        let d = cx.boundary(i).unwrap();
        let (rank, pivots) = d.rank(RANK_TOL);
        *bi = match rng.as_mut() {
            None => pivots.iter().map(|&k| unit(d.cols(), k)).collect(),
            Some(rng) => random_preimages(d, rank, rng)?,
        };
    }

    let mut value = Complex::<R>::one();
    let mut warnings = Vec::new();
    for i in 0..=n {
        let mut cols: Vec<Vec<Complex<R>>> = Vec::with_capacity(cx.dims[i]);
        if let Some(d) = cx.boundary(i + 1) {
            cols.extend(b[i + 1].iter().map(|v| d.mul_vec(v)));
        }
        for h in cx.homology(i) {
            let mut h = h.clone();
            if let (Some(rng), Some(d)) = (rng.as_mut(), cx.boundary(i + 1)) {
                let shift = d.mul_vec(&random_vec(d.cols(), rng));
                for (x, s) in h.iter_mut().zip(shift) {
                    *x = *x + s;
                }
            }
            cols.push(h);
        }
        cols.extend(b[i].iter().cloned());
        if cols.len() != cx.dims[i] {
            return Err(Error::Structural(format!(
                "ranks are inconsistent in degree {i}: {} vectors for dim C_{i} = {}",
                cols.len(),
                cx.dims[i]
            )));
        }
        if cols.is_empty() {
            continue;
        }
        let m = CMatrix::from_fn(cx.dims[i], cols.len(), |r, c| cols[c][r]);
        let det = m.det();
        let hadamard: f64 = cols
            .iter()
            .map(|v| v.iter().map(|x| x.norm_sqr().to_f64()).sum::<f64>().sqrt())
            .product();
        let ratio = det.norm().to_f64() / hadamard;
        if det.is_zero() || ratio == 0.0 {
            return Err(Error::Structural(format!("transition matrix in degree {i} is singular")));
        }
        if ratio < CONDITIONING_WARN {
            warnings.push(format!("degree {i}: transition matrix is ill-conditioned (ratio {ratio:.2e})"));
        }
        value = if i % 2 == 0 { value * det } else { value / det };
    }
    if cx.sign_exponent() % 2 == 1 {
        value = -value;
    }
    Ok(TorsionValue { value, sign_fixed: true, t_power_ambiguity: None, warnings })
}

fn unit<R: Real>(n: usize, k: usize) -> Vec<Complex<R>> {
    let mut v = vec![Complex::zero(); n];
    v[k] = Complex::one();
    v
}

fn random_vec<R: Real>(n: usize, rng: &mut ChaCha8Rng) -> Vec<Complex<R>> {
    (0..n)
        .map(|_| Complex::new(R::from_f64(rng.gen_range(-1.0..1.0)), R::from_f64(rng.gen_range(-1.0..1.0))))
        .collect()
}

/// `rank` random vectors whose images under `d` are independent.
fn random_preimages<R: Real>(d: &CMatrix<R>, rank: usize, rng: &mut ChaCha8Rng) -> Result<Vec<Vec<Complex<R>>>> {
    for _ in 0..8 {
        let vs: Vec<_> = (0..rank).map(|_| random_vec(d.cols(), rng)).collect();
        let images = CMatrix::from_fn(d.rows(), rank, |r, c| d.mul_vec(&vs[c])[r]);
        if images.rank(RANK_TOL).0 == rank {
            return Ok(vs);
        }
    }
    Err(Error::Structural("could not draw independent preimages".into()))
}
