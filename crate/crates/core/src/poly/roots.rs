//! Simultaneous root finding (Aberth–Ehrlich) with Newton polish and
//! multiplicity detection.

use num_complex::Complex;
use num_traits::{One, Zero};

use super::laurent::CPoly;
use crate::error::{Error, Result};
use crate::scalar::{precision_scale, Real};

/// A group of computed roots judged to approximate a single root.
#[derive(Debug, Clone, PartialEq)]
pub struct RootCluster<R> {
    pub center: Complex<R>,
    pub multiplicity: usize,
}

#[derive(Debug, Clone)]
pub struct RootSet<R> {
    /// All roots, repeated according to multiplicity (length = degree).
    pub roots: Vec<Complex<R>>,
    /// Distinct roots; multiple roots are represented by the centroid of their cluster.
    pub clusters: Vec<RootCluster<R>>,
    /// Largest backward error `|p(r)| / Σ|a_k||r|^k` over the roots.
    pub worst_residual: f64,
}

impl<R: Real> RootSet<R> {
    pub fn distinct(&self) -> Vec<Complex<R>> {
        self.clusters.iter().map(|c| c.center).collect()
    }

    pub fn has_multiple_roots(&self) -> bool {
        self.clusters.iter().any(|c| c.multiplicity > 1)
    }
}

const MAX_ITER: usize = 600;

/// Horner evaluation of `p` and `p'` for ascending coefficients.
pub fn horner<R: Real>(coeffs: &[Complex<R>], z: Complex<R>) -> (Complex<R>, Complex<R>) {
    let mut p = Complex::zero();
    let mut dp = Complex::zero();
    for c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + *c;
    }
    (p, dp)
}

/// `Σ |a_k| |z|^k`, the natural scale of `p(z)`.
pub fn abs_scale<R: Real>(coeffs: &[Complex<R>], z: Complex<R>) -> R {
    let r = z.norm();
    coeffs.iter().rev().fold(R::zero(), |acc, c| acc * r + c.norm())
}

/// Roots of a univariate Laurent polynomial in its single used variable.
///
/// Negative powers are cleared and the root at zero (if any) is discarded,
/// since the ambient space is the torus.
pub fn univariate_roots<R: Real>(p: &CPoly<R>) -> Result<RootSet<R>> {
    let used = p.used_vars();
    if used.len() > 1 {
        return Err(Error::Structural(format!(
            "expected a univariate polynomial, found variables {:?}",
            used.iter().map(|&i| &p.vars()[i]).collect::<Vec<_>>()
        )));
    }
    if p.is_zero() {
        return Err(Error::Domain("roots of the zero polynomial".into()));
    }
    let v = used.first().copied().unwrap_or(0);
    let (lo, hi) = p.degree_range(v).unwrap_or((0, 0));
    let mut coeffs = vec![Complex::zero(); (hi - lo + 1) as usize];
    for (e, c) in p.terms() {
        coeffs[(e[v] - lo) as usize] = *c;
    }
    roots_of(&coeffs)
}

/// Roots of the polynomial with ascending coefficients `coeffs`, excluding zero.
pub fn roots_of<R: Real>(coeffs: &[Complex<R>]) -> Result<RootSet<R>> {
    let start = coeffs.iter().position(|c| !c.is_zero());
    let end = coeffs.iter().rposition(|c| !c.is_zero());
    let (Some(start), Some(end)) = (start, end) else {
        return Err(Error::Domain("roots of the zero polynomial".into()));
    };
    let lead = coeffs[end];
    let a: Vec<Complex<R>> = coeffs[start..=end].iter().map(|c| *c / lead).collect();
    let n = a.len() - 1;
    if n == 0 {
        return Ok(RootSet { roots: vec![], clusters: vec![], worst_residual: 0.0 });
    }
    let mut z = initial_guesses(&a);
    aberth(&a, &mut z)?;
    polish(&a, &mut z);
    let worst_residual = z
        .iter()
        .map(|&r| {
            let s = abs_scale(&a, r);
            (horner(&a, r).0.norm() / s).to_f64()
        })
        .fold(0.0, f64::max);
    let clusters = find_clusters(&a, &z);
    Ok(RootSet { roots: z, clusters, worst_residual })
}

/// Initial approximations on circles from the Newton polygon of `log|a_k|`.
fn initial_guesses<R: Real>(a: &[Complex<R>]) -> Vec<Complex<R>> {
    let n = a.len() - 1;
    let logs: Vec<f64> = a
        .iter()
        .map(|c| if c.is_zero() { f64::NEG_INFINITY } else { c.norm().to_f64().ln() })
        .collect();
    let mut hull: Vec<usize> = Vec::new();
    for k in 0..=n {
        if logs[k].is_infinite() {
            continue;
        }
        while hull.len() >= 2 {
            let (i, j) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (j as f64 - i as f64) * (logs[k] - logs[i])
                - (k as f64 - i as f64) * (logs[j] - logs[i]);
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(k);
    }
    let mut z = Vec::with_capacity(n);
    let sigma = 0.7;
    for w in hull.windows(2) {
        let (i, j) = (w[0], w[1]);
        let count = j - i;
        let radius = ((logs[i] - logs[j]) / count as f64).exp();
        for k in 0..count {
            let theta = std::f64::consts::TAU * (k as f64) / (count as f64)
                + std::f64::consts::TAU * (i as f64) / (n as f64 + 1.0)
                + sigma;
            z.push(Complex::new(R::from_f64(radius * theta.cos()), R::from_f64(radius * theta.sin())));
        }
    }
    z
}

fn aberth<R: Real>(a: &[Complex<R>], z: &mut [Complex<R>]) -> Result<()> {
    let n = z.len();
    let eps = R::unit_roundoff() * R::from_f64(8.0 * n as f64);
    let mut done = vec![false; n];
    for _ in 0..MAX_ITER {
        let mut all = true;
        for i in 0..n {
            if done[i] {
                continue;
            }
            let (p, dp) = horner(a, z[i]);
            if p.norm() <= eps * abs_scale(a, z[i]) {
                done[i] = true;
                continue;
            }
            all = false;
            let ratio = p / dp;
            let mut s = Complex::<R>::zero();
            for j in 0..n {
                if j != i {
                    let d = z[i] - z[j];
                    if !d.is_zero() {
                        s = s + Complex::<R>::one() / d;
                    }
                }
            }
            let w = ratio / (Complex::<R>::one() - ratio * s);
            if !(w.re.is_finite() && w.im.is_finite()) {
                // derivative underflow: nudge the iterate instead of diverging
                z[i] = z[i] * Complex::new(R::one(), R::from_f64(1e-3));
                continue;
            }
            z[i] = z[i] - w;
            if w.norm() <= R::unit_roundoff() * z[i].norm() {
                done[i] = true;
            }
        }
        if all {
            return Ok(());
        }
    }
    let worst = z
        .iter()
        .map(|&r| (horner(a, r).0.norm() / abs_scale(a, r)).to_f64())
        .fold(0.0, f64::max);
    // stagnation at roundoff level around multiple roots is acceptable
    if worst <= 1e3 * (n as f64) * R::unit_roundoff().to_f64() {
        Ok(())
    } else {
        Err(Error::Solver {
            message: format!("Aberth iteration did not converge for degree {n}"),
            worst_residual: worst,
        })
    }
}

/// A few Newton steps per root, kept only when they reduce the residual.
fn polish<R: Real>(a: &[Complex<R>], z: &mut [Complex<R>]) {
    for r in z.iter_mut() {
        for _ in 0..3 {
            let (p, dp) = horner(a, *r);
            if dp.is_zero() || p.is_zero() {
                break;
            }
            let cand = *r - p / dp;
            if horner(a, cand).0.norm() < p.norm() {
                *r = cand;
            } else {
                break;
            }
        }
    }
}

/// `p^{(j)}(z) / j!` coefficients for ascending `a`.
fn taylor_coeffs<R: Real>(a: &[Complex<R>], j: usize) -> Vec<Complex<R>> {
    (j..a.len())
        .map(|k| a[k] * R::from_f64(binomial(k, j)))
        .collect()
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Group roots by single linkage within a loose radius, then accept a group
/// as a multiple root only if its centroid annihilates the Taylor
/// coefficients of order below the group size. Rejected groups are split
/// back into simple roots.
fn find_clusters<R: Real>(a: &[Complex<R>], z: &[Complex<R>]) -> Vec<RootCluster<R>> {
    let n = z.len();
    let ps = precision_scale::<R>();
    let loose = 1e-3 * ps.cbrt();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while p[r] != r {
            r = p[r];
        }
        p[i] = r;
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            let d = (z[i] - z[j]).norm().to_f64();
            let s = 1.0 + z[i].norm().to_f64().max(z[j].norm().to_f64());
            if d < loose * s {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                parent[ri] = rj;
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..n {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }
    let tight = 1e-11 * ps;
    let mut out = Vec::new();
    for (_, members) in groups {
        let k = members.len();
        let mut center = members.iter().fold(Complex::<R>::zero(), |acc, &i| acc + z[i])
            / R::from_f64(k as f64);
        if k > 1 {
            // a k-fold root is a simple root of the (k-1)-th derivative
            let d = taylor_coeffs(a, k - 1);
            for _ in 0..30 {
                let (v, dv) = horner(&d, center);
                if dv.is_zero() {
                    break;
                }
                let step = v / dv;
                center = center - step;
                if step.norm() <= R::unit_roundoff() * (R::one() + center.norm()) {
                    break;
                }
            }
        }
        let accepted = k == 1
            || (0..k).all(|j| {
                let t = taylor_coeffs(a, j);
                horner(&t, center).0.norm().to_f64() <= tight * abs_scale(&t, center).to_f64()
            });
        if accepted {
            out.push(RootCluster { center, multiplicity: k });
        } else {
            out.extend(members.iter().map(|&i| RootCluster { center: z[i], multiplicity: 1 }));
        }
    }
    out
}
