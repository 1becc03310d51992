use num_complex::Complex;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{resultant, univariate_roots, CPoly, QPoly};
use crate::scalar::{precision_scale, Real};

const SIMPLE_TOL: f64 = 1e-8;

/// `det ∂f/∂z` at `point` and the matching magnitude scale (sum of absolute expansion terms).
pub fn jacobian<R: Real>(fs: &[CPoly<R>], point: &[Complex<R>]) -> Result<(Complex<R>, f64)> {
    let n = fs.len();
    if fs.iter().any(|f| f.nvars() != n) || point.len() != n {
        return Err(Error::UnsupportedDimension(n.max(point.len())));
    }
    let d: Vec<Vec<(Complex<R>, f64)>> = fs
        .iter()
        .map(|f| {
            (0..n)
                .map(|j| {
                    let df = f.derivative(j);
                    (df.eval(point), df.eval_scale(point))
                })
                .collect()
        })
        .collect();
    match n {
        1 => Ok(d[0][0]),
        2 => Ok((
            d[0][0].0 * d[1][1].0 - d[0][1].0 * d[1][0].0,
            d[0][0].1 * d[1][1].1 + d[0][1].1 * d[1][0].1,
        )),
        _ => Err(Error::UnsupportedDimension(n)),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SimplicityReport {
    pub simple: bool,
    /// Smallest `|Jac| / scale` over the zeros.
    pub min_normalized_jacobian: f64,
}

/// All zeros simple: `|Jac| ≥ 1e−8·scale` at every zero.
pub fn jacobian_simplicity<R: Real>(fs: &[CPoly<R>], zeros: &[Vec<Complex<R>>]) -> Result<SimplicityReport> {
    let mut min = f64::INFINITY;
    for z in zeros {
        let (j, s) = jacobian(fs, z)?;
        min = min.min(j.norm().to_f64() / s.max(f64::MIN_POSITIVE));
    }
    Ok(SimplicityReport { simple: min >= SIMPLE_TOL, min_normalized_jacobian: min })
}

/// `Σ_a h(a) / (a₁⋯aₙ · Jac_f(a))` with its individual terms.
#[derive(Clone, Debug, PartialEq)]
pub struct ResidueSum<R> {
    pub value: Complex<R>,
    pub terms: Vec<Complex<R>>,
}

impl<R: Real> ResidueSum<R> {
    pub fn mean_term_magnitude(&self) -> f64 {
        if self.terms.is_empty() {
            return 0.0;
        }
        self.terms.iter().map(|t| t.norm().to_f64()).sum::<f64>() / self.terms.len() as f64
    }

    /// `|sum| / mean |term|`.
    pub fn normalized(&self) -> f64 {
        let m = self.mean_term_magnitude();
        if m == 0.0 {
            0.0
        } else {
            self.value.norm().to_f64() / m
        }
    }
}

/// The global residue sum over the given (complete, simple) zero set.
pub fn residue_sum<R: Real>(fs: &[CPoly<R>], h: &CPoly<R>, zeros: &[Vec<Complex<R>>]) -> Result<ResidueSum<R>> {
    if h.nvars() != fs.len() {
        return Err(Error::Structural("h must use the system's variables".into()));
    }
    let mut terms = Vec::with_capacity(zeros.len());
    for z in zeros {
        let (j, s) = jacobian(fs, z)?;
        if j.norm().to_f64() < SIMPLE_TOL * s {
            return Err(Error::NonRegular(format!(
                "degenerate zero: |Jac| / scale = {:.3e}",
                j.norm().to_f64() / s.max(f64::MIN_POSITIVE)
            )));
        }
        let prod = z.iter().fold(Complex::<R>::one(), |acc, a| acc * a);
        terms.push(h.eval(z) / (prod * j));
    }
    let value = terms.iter().fold(Complex::zero(), |acc, t| acc + t);
    Ok(ResidueSum { value, terms })
}

fn relative_residual<R: Real>(fs: &[CPoly<R>; 2], z: &[Complex<R>]) -> f64 {
    fs.iter()
        .map(|f| f.eval(z).norm().to_f64() / f.eval_scale(z).max(f64::MIN_POSITIVE))
        .fold(0.0, f64::max)
}

fn newton2<R: Real>(fs: &[CPoly<R>; 2], d: &[[CPoly<R>; 2]; 2], mut z: [Complex<R>; 2]) -> [Complex<R>; 2] {
    let stop = 1e-14 * precision_scale::<R>();
    for _ in 0..100 {
        let v = [fs[0].eval(&z), fs[1].eval(&z)];
        let j = [[d[0][0].eval(&z), d[0][1].eval(&z)], [d[1][0].eval(&z), d[1][1].eval(&z)]];
        let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
        if det.is_zero() {
            break;
        }
        let step = [(v[0] * j[1][1] - v[1] * j[0][1]) / det, (j[0][0] * v[1] - j[1][0] * v[0]) / det];
        let old = relative_residual(fs, &z);
        let mut lambda = R::one();
        let mut moved = false;
        for _ in 0..30 {
            let cand = [z[0] - step[0] * lambda, z[1] - step[1] * lambda];
            if old == 0.0 || relative_residual(fs, &cand) <= old {
                z = cand;
                moved = true;
                break;
            }
            lambda = lambda / R::from_f64(2.0);
        }
        let size = 1.0 + z[0].norm().to_f64().max(z[1].norm().to_f64());
        let len = (step[0].norm() * lambda).to_f64().max((step[1].norm() * lambda).to_f64());
        if !moved || len < stop * size {
            break;
        }
    }
    z
}

/// Isolated zeros in `(ℂ^×)²` of `f₁, f₂`, whose first two variables are the unknowns and
/// whose remaining variables are fixed by `params` (`(index, value)` pairs).
///
/// Eliminates the second unknown by an exact resultant, then back-substitutes and refines.
pub fn torus_zeros<R: Real>(
    f1: &QPoly,
    f2: &QPoly,
    params: &[(usize, Complex<R>)],
) -> Result<Vec<[Complex<R>; 2]>> {
    if f1.vars() != f2.vars() || f1.nvars() < 2 {
        return Err(Error::Structural("torus_zeros needs two polynomials over the same variables".into()));
    }
    let other = f1.vars()[1].clone();
    let res = resultant(f1, f2, &other)?.poly;
    let in_z0 = res.eval_partial(params);
    if in_z0.is_zero() || in_z0.used_vars().is_empty() {
        return Err(Error::NonGeneric("the eliminant vanishes identically or has no zeros".into()));
    }
    let n = f1.nvars();
    let reduce = |p: &QPoly| -> Result<CPoly<R>> {
        let c = p.eval_partial(params);
        let names = &p.vars()[..2];
        let mut out = CPoly::zero(names);
        for (e, v) in c.terms() {
            if e[2..n].iter().any(|&k| k != 0) {
                return Err(Error::Structural("parameter left unassigned".into()));
            }
            out.add_term(e[..2].to_vec(), *v);
        }
        Ok(out)
    };
    let fs = [reduce(f1)?, reduce(f2)?];
    let d = [
        [fs[0].derivative(0), fs[0].derivative(1)],
        [fs[1].derivative(0), fs[1].derivative(1)],
    ];
    let tol = 1e-10 * precision_scale::<R>();
    let mut out: Vec<[Complex<R>; 2]> = Vec::new();
    for a in univariate_roots(&in_z0)?.distinct() {
        let back = if fs[0].degree_range(1).is_some_and(|r| r.0 != r.1) { &fs[0] } else { &fs[1] };
        let slice = back.substitute(0, &a);
        if slice.is_zero() || slice.used_vars().is_empty() {
            continue;
        }
        for b in univariate_roots(&slice)?.distinct() {
            if relative_residual(&fs, &[a, b]) > 1e-5 {
                continue;
            }
            let z = newton2(&fs, &d, [a, b]);
            if relative_residual(&fs, &z) > tol {
                continue;
            }
            let size = 1.0 + z[0].norm().to_f64().max(z[1].norm().to_f64());
            if out.iter().any(|w| (w[0] - z[0]).norm().to_f64().max((w[1] - z[1]).norm().to_f64()) < 1e-8 * size) {
                continue;
            }
            out.push(z);
        }
    }
    out.sort_by(|u, v| {
        let k = |z: &[Complex<R>; 2]| [z[0].re.to_f64(), z[0].im.to_f64(), z[1].re.to_f64(), z[1].im.to_f64()];
        let (a, b) = (k(u), k(v));
        a.iter().zip(&b).map(|(x, y)| x.total_cmp(y)).find(|o| o.is_ne()).unwrap_or(std::cmp::Ordering::Equal)
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;
    use crate::scalar::cplx;

    #[test]
    fn one_variable_residues() {
        let f = parse_poly("z^2 - 3*z + 2", &["z"]).unwrap().to_complex::<f64>();
        let h = parse_poly("z", &["z"]).unwrap().to_complex::<f64>();
        let zeros = vec![vec![cplx(1.0, 0.0)], vec![cplx(2.0, 0.0)]];
        let s = residue_sum(&[f], &h, &zeros).unwrap();
        assert!(s.value.norm() < 1e-15);
        assert!((s.terms[0] - cplx(-1.0, 0.0)).norm() < 1e-15);
        // Δ(h) = {0} touches the boundary of [0, 1]: the sum is h(c)/c
        let c = cplx(0.5, 2.0);
        let g = parse_poly("z", &["z"]).unwrap().to_complex::<f64>() - CPoly::constant(&["z"], c);
        let one = CPoly::constant(&["z"], cplx(1.0, 0.0));
        let s = residue_sum(&[g], &one, &[vec![c]]).unwrap();
        assert!((s.value - c.inv()).norm() < 1e-15);
    }

    #[test]
    fn linear_jacobian_is_the_coefficient() {
        let f = parse_poly("3*z - 7", &["z"]).unwrap().to_complex::<f64>();
        let (j, _) = jacobian(&[f], &[cplx(7.0 / 3.0, 0.0)]).unwrap();
        assert_eq!(j, cplx(3.0, 0.0));
    }

    #[test]
    fn solves_a_small_system() {
        let v = ["a", "b", "t"];
        let f1 = parse_poly("a*b - 2", &v).unwrap();
        let f2 = parse_poly("a + b - t", &v).unwrap();
        let zeros = torus_zeros::<f64>(&f1, &f2, &[(2, cplx(3.0, 0.0))]).unwrap();
        assert_eq!(zeros.len(), 2);
        assert!((zeros[0][0] - cplx(1.0, 0.0)).norm() < 1e-13);
        assert!((zeros[1][1] - cplx(1.0, 0.0)).norm() < 1e-13);
    }
}
