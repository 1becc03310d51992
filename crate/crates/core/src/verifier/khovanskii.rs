use num_complex::Complex;
use num_traits::{One, Zero};

use super::report::{C64, ContainmentReport, KhovanskiiReport};
use super::vanishing::{fiber_systems, fiber_torsions};
use crate::charvar::KnotPreset;
use crate::error::{Error, Result};
use crate::poly::{parse_poly, rat, CPoly, QPoly};
use crate::residue::{
    check_nondegenerate, jacobian, jacobian_simplicity, minkowski_sum, newton_polytope, residue_sum, strict_containment,
    torus_zeros, Verdict,
};
use crate::scalar::{Precision, Real};
use crate::with_precision;

const ML: [&str; 2] = ["m", "l"];
const MLX: [&str; 3] = ["m", "l", "x"];

/// PASS threshold for `|Σ| / mean |term|`.
pub const RESIDUE_TOL: f64 = 1e-7;
/// PASS threshold for the closed-form Jacobian and the torsion/residue cross-check.
pub const CROSS_TOL: f64 = 1e-8;

/// `B = m^p l^q − x` over `(m, l, x)`.
fn slope_binomial(p: i64, q: i64) -> QPoly {
    let mut b = QPoly::zero(&MLX);
    b.add_term(vec![p as i32, q as i32, 0], rat(1));
    b.add_term(vec![0, 0, 1], rat(-1));
    b
}

/// `−(x/(m l))·[p(l − l⁻¹) + 2q(2m² − 1 + 2m⁻²)(m² − m⁻²)]`, the figure-eight `Jac_(A,B)`
/// on the zero set of `B`.
fn figure_eight_jacobian<R: Real>(p: i64, q: i64, x: Complex<R>, m: Complex<R>, l: Complex<R>) -> Complex<R> {
    let two = R::from_f64(2.0);
    let (m2, mi2) = (m * m, Complex::<R>::one() / (m * m));
    let inner = (l - l.inv()) * R::from_i64(p) + (m2 * two - Complex::one() + mi2 * two) * (m2 - mi2) * (two * R::from_i64(q));
    -(x / (m * l)) * inner
}

/// Check the global residue theorem hypotheses for `(A, m^p l^q − x)` with `h = m² − m⁻²`
/// and evaluate the residue sum.
pub fn khovanskii_certify(preset: &KnotPreset, p: i64, q: i64, x: Complex<f64>, precision: Precision) -> Result<KhovanskiiReport> {
    with_precision!(precision, R => khovanskii_certify_at::<R>(preset, p, q, Complex::new(R::from_f64(x.re), R::from_f64(x.im))))
}

pub fn khovanskii_certify_at<R: Real>(preset: &KnotPreset, p: i64, q: i64, x: Complex<R>) -> Result<KhovanskiiReport> {
    let a = match preset.components.as_slice() {
        [c] => c.apoly.clone(),
        _ => None,
    }
    .ok_or_else(|| {
        Error::Structural(format!("{}: certification needs a single component with an A-polynomial", preset.name))
    })?;
    if num_integer::Integer::gcd(&p, &q) != 1 {
        return Err(Error::Domain(format!("slope ({p}, {q}) is not primitive")));
    }
    if x.is_zero() {
        return Err(Error::Domain("x must be nonzero".into()));
    }
    let a3 = a.with_vars(&MLX)?;
    let b3 = slope_binomial(p, q);
    let zeros = torus_zeros::<R>(&a3, &b3, &[(2, x)]).map_err(|e| e.in_stage("residue zeros"))?;
    let zeros: Vec<Vec<Complex<R>>> = zeros.into_iter().map(|z| z.to_vec()).collect();

    let mut b: CPoly<R> = CPoly::zero(&ML);
    b.add_term(vec![p as i32, q as i32], Complex::one());
    b.add_term(vec![0, 0], -x);
    let fs = [a.to_complex::<R>(), b];
    let h = parse_poly("m^2 - m^-2", &ML)?;

    let nondegenerate = check_nondegenerate(&fs)?;
    let simplicity = jacobian_simplicity(&fs, &zeros)?;
    let sum = minkowski_sum(&newton_polytope(&a)?, &newton_polytope(&fs[1])?)?;
    let c = strict_containment(&newton_polytope(&h)?, &sum)?;
    let containment = ContainmentReport { strict: c.strict, witness: c.witness };

    let residues = match residue_sum(&fs, &h.to_complex::<R>(), &zeros) {
        Ok(r) => Some(r),
        Err(Error::NonRegular(_)) => None,
        Err(e) => return Err(e),
    };
    let (residue_value, residue_metric) = match &residues {
        Some(r) => (C64::from_r(r.value), r.normalized()),
        None => (C64(Complex::new(f64::NAN, f64::NAN)), f64::INFINITY),
    };

    let figure_eight = preset.name == "4_1";
    let closed_form_jacobian_error = figure_eight.then(|| -> Result<f64> {
        let mut worst = 0.0f64;
        for z in &zeros {
            let (j, _) = jacobian(&fs, z)?;
            let cf = figure_eight_jacobian(p, q, x, z[0], z[1]);
            worst = worst.max((j - cf).norm().to_f64() / cf.norm().to_f64().max(f64::MIN_POSITIVE));
        }
        Ok(worst)
    });
    let closed_form_jacobian_error = closed_form_jacobian_error.transpose()?;
    let cross_check_error = match (&residues, figure_eight) {
        (Some(r), true) => Some(cross_check(preset, p, q, x, &zeros, &r.terms)?),
        _ => None,
    };

    let mut verdict = nondegenerate.verdict;
    let ok = simplicity.simple
        && containment.strict
        && residue_metric <= RESIDUE_TOL
        && closed_form_jacobian_error.is_none_or(|e| e <= CROSS_TOL)
        && cross_check_error.is_none_or(|e| e <= CROSS_TOL);
    if !ok {
        verdict = Verdict::Fail;
    }
    Ok(KhovanskiiReport {
        slope: [p, q],
        x: C64::from_r(x),
        nondegenerate,
        simplicity,
        closed_form_jacobian_error,
        containment,
        zero_count: zeros.len(),
        residue_sum: residue_value,
        residue_metric,
        cross_check_error,
        verdict,
    })
}

/// Match each residue term `h/(m l Jac)` with the fiber point at the same `(m, l)` and
/// compare `1/Tor(γ)` to `2εx·term`, minimizing over the global sign `ε`.
fn cross_check<R: Real>(
    preset: &KnotPreset,
    p: i64,
    q: i64,
    x: Complex<R>,
    zeros: &[Vec<Complex<R>>],
    terms: &[Complex<R>],
) -> Result<f64> {
    let systems = fiber_systems(preset, p, q)?;
    let (comps, _) = fiber_torsions(preset, &systems, x)?;
    let points = &comps[0];
    if points.len() != zeros.len() {
        return Ok(f64::INFINITY);
    }
    let two_x = x * R::from_f64(2.0);
    let scale = points.iter().map(|tp| tp.tor_gamma.inv().norm().to_f64()).fold(0.0, f64::max);
    let mut worst = [0.0f64; 2];
    for (z, t) in zeros.iter().zip(terms) {
        let size = 1.0 + z[0].norm().to_f64().max(z[1].norm().to_f64());
        let Some(tp) = points
            .iter()
            .find(|tp| (tp.point.m - z[0]).norm().to_f64().max((tp.point.l - z[1]).norm().to_f64()) < 1e-6 * size)
        else {
            return Ok(f64::INFINITY);
        };
        let inv = tp.tor_gamma.inv();
        for (k, eps) in [1.0, -1.0].into_iter().enumerate() {
            let d = (inv - two_x * *t * R::from_f64(eps)).norm().to_f64();
            worst[k] = worst[k].max(d / scale.max(f64::MIN_POSITIVE));
        }
    }
    Ok(worst[0].min(worst[1]))
}
