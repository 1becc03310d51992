use num_complex::Complex;
use serde::Serialize;

use super::polytope::{newton_polytope, primitive};
use crate::error::{Error, Result};
use crate::poly::{abs_scale, horner, roots_of, CPoly};
use crate::scalar::Real;

/// Truncation of a system to the faces minimizing `⟨·, β⟩`.
#[derive(Clone, Debug)]
pub struct FaceSystem<R> {
    pub beta: [i64; 2],
    pub truncations: Vec<CPoly<R>>,
}

/// `f^β`: the terms of `f` whose exponents minimize `⟨·, β⟩`.
pub fn truncate<R: Real>(f: &CPoly<R>, beta: &[i64; 2]) -> CPoly<R> {
    let dot = |e: &[i32]| e[0] as i64 * beta[0] + e[1] as i64 * beta[1];
    let lo = f.terms().map(|(e, _)| dot(e)).min().unwrap_or(0);
    let mut out = f.zero_like();
    for (e, c) in f.terms().filter(|(e, _)| dot(e) == lo) {
        out.add_term(e.clone(), *c);
    }
    out
}

fn check_square<R: Real>(fs: &[CPoly<R>]) -> Result<()> {
    if fs.len() != 2 || fs.iter().any(|f| f.nvars() != 2) {
        let n = fs.iter().map(|f| f.nvars()).max().unwrap_or(0).max(fs.len());
        return Err(Error::UnsupportedDimension(n));
    }
    Ok(())
}

/// One truncated system per ray of the common refinement of the normal fans.
///
/// Inside a two-dimensional cone every truncation is a monomial and has no torus
/// zeros, so the rays are the only directions that need checking.
pub fn face_systems<R: Real>(fs: &[CPoly<R>]) -> Result<Vec<FaceSystem<R>>> {
    check_square(fs)?;
    let mut rays: Vec<[i64; 2]> = Vec::new();
    for f in fs {
        for n in newton_polytope(f)?.inner_normals() {
            if !rays.contains(&n) {
                rays.push(n);
            }
        }
    }
    rays.sort_by(|a, b| (a[1] as f64).atan2(a[0] as f64).total_cmp(&(b[1] as f64).atan2(b[0] as f64)));
    Ok(rays
        .into_iter()
        .map(|beta| FaceSystem { beta, truncations: fs.iter().map(|f| truncate(f, &beta)).collect() })
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Indeterminate,
}

impl Verdict {
    pub fn combine(self, other: Verdict) -> Verdict {
        use Verdict::*;
        match (self, other) {
            (Fail, _) | (_, Fail) => Fail,
            (Indeterminate, _) | (_, Indeterminate) => Indeterminate,
            _ => Pass,
        }
    }
}

/// Shape of a face system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FaceKind {
    /// Some truncation is a single term: no zeros in the torus.
    Monomial,
    /// Both truncations are binomials.
    Binomial,
    General,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FaceCheck {
    pub beta: [i64; 2],
    pub kind: FaceKind,
    pub verdict: Verdict,
    /// `min |g(u)| / scale` over the roots `u` of the other truncation; `None` for monomial faces.
    pub separation: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NondegeneracyReport {
    pub verdict: Verdict,
    pub faces: Vec<FaceCheck>,
}

const PASS_SEPARATION: f64 = 1e-8;
const FAIL_SEPARATION: f64 = 1e-10;

/// Both truncations of a ray face live on parallel lines orthogonal to `β`, so each is a
/// monomial times a polynomial in `u = z^v`, `v ⊥ β` primitive. The face system then has
/// torus zeros (whole orbits, never isolated) exactly when those polynomials share a root.
fn along_ray<R: Real>(f: &CPoly<R>, beta: &[i64; 2]) -> Vec<Complex<R>> {
    let v = primitive([-beta[1], beta[0]]);
    let vv = v[0] * v[0] + v[1] * v[1];
    let ks: Vec<(i64, Complex<R>)> = f
        .terms()
        .map(|(e, c)| ((e[0] as i64 * v[0] + e[1] as i64 * v[1]) / vv, *c))
        .collect();
    let lo = ks.iter().map(|(k, _)| *k).min().unwrap_or(0);
    let hi = ks.iter().map(|(k, _)| *k).max().unwrap_or(0);
    let mut coeffs = vec![Complex::new(R::zero(), R::zero()); (hi - lo + 1) as usize];
    for (k, c) in ks {
        coeffs[(k - lo) as usize] = c;
    }
    coeffs
}

fn separation<R: Real>(p: &[Complex<R>], q: &[Complex<R>]) -> Result<f64> {
    let roots = roots_of(p)?;
    Ok(roots
        .distinct()
        .into_iter()
        .map(|u| {
            let (v, _) = horner(q, u);
            let s = abs_scale(q, u).to_f64();
            v.norm().to_f64() / s.max(f64::MIN_POSITIVE)
        })
        .fold(f64::INFINITY, f64::min))
}

/// Khovanskii non-degeneracy: every face system `f^β`, `β ≠ 0`, has only simple torus zeros.
pub fn check_nondegenerate<R: Real>(fs: &[CPoly<R>]) -> Result<NondegeneracyReport> {
    let mut faces = Vec::new();
    for face in face_systems(fs)? {
        let sizes: Vec<usize> = face.truncations.iter().map(|t| t.num_terms()).collect();
        let kind = if sizes.contains(&1) {
            FaceKind::Monomial
        } else if sizes.iter().all(|&s| s == 2) {
            FaceKind::Binomial
        } else {
            FaceKind::General
        };
        let (verdict, sep) = if kind == FaceKind::Monomial {
            (Verdict::Pass, None)
        } else {
            let p = along_ray(&face.truncations[0], &face.beta);
            let q = along_ray(&face.truncations[1], &face.beta);
            let s = separation(&p, &q)?.min(separation(&q, &p)?);
            let v = if s >= PASS_SEPARATION {
                Verdict::Pass
            } else if s < FAIL_SEPARATION {
                Verdict::Fail
            } else {
                Verdict::Indeterminate
            };
            (v, Some(s))
        };
        faces.push(FaceCheck { beta: face.beta, kind, verdict, separation: sep });
    }
    let verdict = faces.iter().fold(Verdict::Pass, |acc, f| acc.combine(f.verdict));
    Ok(NondegeneracyReport { verdict, faces })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn cp(s: &str) -> CPoly<f64> {
        parse_poly(s, &["m", "l"]).unwrap().to_complex()
    }

    #[test]
    fn truncations_attain_the_minimum() {
        let f = cp("1 + 2*m + 3*l + 4*m*l");
        let faces = face_systems(&[f.clone(), cp("m - 5*l + 7")]).unwrap();
        for face in &faces {
            for t in &face.truncations {
                let vals: Vec<i64> =
                    t.terms().map(|(e, _)| e[0] as i64 * face.beta[0] + e[1] as i64 * face.beta[1]).collect();
                assert!(vals.windows(2).all(|w| w[0] == w[1]));
            }
        }
        assert!(faces.iter().any(|fs| fs.beta == [1, 0]));
        assert!(faces.iter().all(|fs| fs.truncations.iter().all(|t| t.num_terms() <= 2)));
    }

    #[test]
    fn dilation_dilates_truncations() {
        let f = cp("1 + 2*m + 3*l");
        let f2 = cp("1 + 2*m^2 + 3*l^2");
        let beta = [-1, -1];
        let t: Vec<_> = truncate(&f, &beta).terms().map(|(e, _)| e.clone()).collect();
        let t2: Vec<_> = truncate(&f2, &beta).terms().map(|(e, _)| e.clone()).collect();
        assert_eq!(t.iter().map(|e| vec![2 * e[0], 2 * e[1]]).collect::<Vec<_>>(), t2);
    }

    #[test]
    fn shared_face_factor_is_degenerate() {
        let r = check_nondegenerate(&[cp("m - 1"), cp("(m - 1)*l + 3*m*l^2")]).unwrap();
        assert_eq!(r.verdict, Verdict::Fail);
        let bad = r.faces.iter().find(|f| f.verdict == Verdict::Fail).unwrap();
        assert!(bad.separation.unwrap() < 1e-12);
        let ok = check_nondegenerate(&[cp("m - 2"), cp("(m - 1)*l + 3*m*l^2")]).unwrap();
        assert_eq!(ok.verdict, Verdict::Pass);
    }

    #[test]
    fn monomials_are_vacuous() {
        let r = check_nondegenerate(&[cp("3*m*l"), cp("m^-1")]).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        assert!(matches!(
            check_nondegenerate(&[cp("m")]),
            Err(Error::UnsupportedDimension(_))
        ));
    }
}
