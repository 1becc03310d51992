use std::time::Instant;

use num_complex::Complex;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::khovanskii::khovanskii_certify_at;
use super::report::{C64, ComponentReport, IndexValue, PointReport, VerificationReport};
use crate::charvar::{d_gamma, pick_x, CharacterPoint, FiberSystem, KnotPreset, SlopeJacobian};
use crate::error::{Error, Result};
use crate::scalar::{DoubleDouble, Precision, Real};
use crate::torsion::{slope_change, torsion_at_longitude, CurvePoint, JacobianData};
use crate::with_precision;

/// A fiber point with its longitude and slope torsions.
#[derive(Clone, Debug)]
pub struct TorsionPoint<R> {
    pub point: CharacterPoint<R>,
    pub tor_lambda: Complex<R>,
    pub tor_gamma: Complex<R>,
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub precision: Precision,
    /// PASS threshold for the normalized vanishing metric.
    pub tol: f64,
    /// Use this root of `x + 1/x = z` instead of [`pick_x`].
    pub x: Option<Complex<f64>>,
    /// Genera at which to evaluate the twisted index.
    pub genera: Vec<u32>,
    /// Re-solve at doubled precision and require the same fiber counts.
    pub check_count: bool,
    /// Attach the Khovanskii certification (single-component presets with an A-polynomial).
    pub khovanskii: bool,
    /// Record wall-clock time; off by default so reports are reproducible byte for byte.
    pub timing: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            precision: Precision::DEFAULT,
            tol: 1e-6,
            x: None,
            genera: Vec::new(),
            check_count: true,
            khovanskii: false,
            timing: false,
        }
    }
}

/// Cached eliminants for every component of a preset at one slope.
pub fn fiber_systems(preset: &KnotPreset, p: i64, q: i64) -> Result<Vec<FiberSystem>> {
    (0..preset.components.len()).map(|i| FiberSystem::new(preset, i, p, q)).collect()
}

type Warnings = Vec<String>;

/// Per-component fiber points with `Tor(λ)` from the Fox pipeline and `Tor(γ)` by slope change.
pub fn fiber_torsions<R: Real>(
    preset: &KnotPreset,
    systems: &[FiberSystem],
    x: Complex<R>,
) -> Result<(Vec<Vec<TorsionPoint<R>>>, Warnings)> {
    let mut warnings = Vec::new();
    let mut out = Vec::with_capacity(systems.len());
    for sys in systems {
        let i = sys.component();
        let (p, q) = sys.slope();
        let (points, w) = sys.solve(x).map_err(|e| e.in_stage("fiber"))?;
        warnings.extend(w);
        let comp = &preset.components[i];
        let rep = preset.parametric(i);
        let jac = match comp.slope_jacobian {
            SlopeJacobian::Apoly => JacobianData::APolynomial { a: comp.apoly.as_ref().expect("checked at load") },
            SlopeJacobian::Bordered => JacobianData::Bordered { riley: &comp.riley, longitude: &comp.longitude },
        };
        let tors: Vec<Result<TorsionPoint<R>>> = points
            .into_par_iter()
            .map(|pt| {
                let rho = rep.at(pt.y, pt.m, 1e-8).map_err(|e| e.in_stage("representation"))?;
                let tl = torsion_at_longitude(&rho).map_err(|e| e.in_stage("torsion"))?;
                let cp = CurvePoint { y: pt.y, m: pt.m, l: pt.l };
                let tg = slope_change(&tl, p, q, &cp, jac).map_err(|e| e.in_stage("slope change"))?;
                Ok(TorsionPoint { tor_lambda: tl.value, tor_gamma: tg.value, point: pt })
            })
            .collect();
        out.push(tors.into_iter().collect::<Result<Vec<_>>>()?);
    }
    Ok((out, warnings))
}

/// Signs `σ` (first fixed to `+1`) minimizing `|Σ σᵢ sᵢ|`.
fn choose_signs<R: Real>(sums: &[Complex<R>]) -> Vec<i32> {
    let k = sums.len();
    if k <= 1 {
        return vec![1; k];
    }
    let mut best = (f64::INFINITY, vec![1; k]);
    for mask in 0..(1u32 << (k - 1)) {
        let signs: Vec<i32> = (0..k).map(|i| if i > 0 && mask >> (i - 1) & 1 == 1 { -1 } else { 1 }).collect();
        let total = sums
            .iter()
            .zip(&signs)
            .fold(Complex::<R>::zero(), |acc, (s, &g)| acc + *s * R::from_i64(g as i64));
        let n = total.norm().to_f64();
        if n < best.0 {
            best = (n, signs);
        }
    }
    best.1
}

fn powi<R: Real>(z: Complex<R>, k: i64) -> Complex<R> {
    let base = if k < 0 { Complex::<R>::one() / z } else { z };
    (0..k.unsigned_abs()).fold(Complex::one(), |acc, _| acc * base)
}

/// `Σ (d_γ σ Tor)^{g−1}` over the fiber.
pub fn index_value<R: Real>(components: &[Vec<TorsionPoint<R>>], signs: &[i32], p: i64, g: u32) -> Complex<R> {
    let d = R::from_i64(d_gamma(p) as i64);
    let mut acc = Complex::<R>::zero();
    for (pts, &s) in components.iter().zip(signs) {
        for tp in pts {
            acc = acc + powi(tp.tor_gamma * d * R::from_i64(s as i64), g as i64 - 1);
        }
    }
    acc
}

fn to_r<R: Real>(z: Complex<f64>) -> Complex<R> {
    Complex::new(R::from_f64(z.re), R::from_f64(z.im))
}

fn counts(systems: &[FiberSystem], x: Complex<DoubleDouble>) -> Result<Vec<usize>> {
    systems.iter().map(|s| s.solve(x).map(|(p, _)| p.len())).collect()
}

fn run<R: Real>(preset: &KnotPreset, p: i64, q: i64, z: Complex<f64>, opts: &VerifyOptions) -> Result<VerificationReport> {
    let start = opts.timing.then(Instant::now);
    let (x, z) = match opts.x {
        Some(x) => {
            let x = to_r::<R>(x);
            (x, x + Complex::<R>::one() / x)
        }
        None => {
            let z = to_r::<R>(z);
            (pick_x(z)?, z)
        }
    };
    if x.norm().to_f64() == 0.0 {
        return Err(Error::Domain("x must be nonzero".into()));
    }
    let systems = fiber_systems(preset, p, q)?;
    let (components, mut warnings) = fiber_torsions(preset, &systems, x).map_err(|e| match e {
        Error::NonGeneric(m) => Error::NonGeneric(format!("{m}; try perturbing z")),
        other => other,
    })?;
    if opts.check_count {
        if R::BITS < DoubleDouble::BITS {
            let wide = counts(&systems, Complex::new(x.re.to_dd(), x.im.to_dd()))?;
            let here: Vec<usize> = components.iter().map(Vec::len).collect();
            if wide != here {
                return Err(Error::NonGeneric(format!(
                    "fiber counts {here:?} change to {wide:?} at doubled precision; try perturbing z"
                )));
            }
        } else {
            warnings.push("count stability under precision doubling not checked at the highest tier".into());
        }
    }
    let Cancellation { sums, signs, total, metric } = cancellation(&components);
    let passed = metric <= opts.tol && components.iter().any(|c| !c.is_empty());
    if components.iter().all(Vec::is_empty) {
        warnings.push("the fiber is empty".into());
    }
    if !passed && !components.iter().all(Vec::is_empty) {
        warnings.push(diagnose(preset, &systems, x, opts.tol)?);
    }
    let index_values = (!opts.genera.is_empty()).then(|| {
        opts.genera
            .iter()
            .map(|&g| IndexValue { genus: g, value: C64::from_r(index_value(&components, &signs, p, g)) })
            .collect()
    });
    let khovanskii = if opts.khovanskii { Some(khovanskii_certify_at::<R>(preset, p, q, x)?) } else { None };
    let report_components = components
        .iter()
        .enumerate()
        .map(|(i, pts)| ComponentReport {
            index: i + 1,
            points: pts
                .iter()
                .map(|tp| PointReport {
                    y: C64::from_r(tp.point.y),
                    m: C64::from_r(tp.point.m),
                    l: C64::from_r(tp.point.l),
                    torsion: C64::from_r(tp.tor_gamma),
                    torsion_lambda: C64::from_r(tp.tor_lambda),
                    residual: tp.point.residual,
                })
                .collect(),
            inverse_sum: C64::from_r(sums[i]),
            sign: signs[i],
        })
        .collect();
    Ok(VerificationReport {
        preset: preset.name.clone(),
        slope: [p, q],
        z: C64::from_r(z),
        x: C64::from_r(x),
        precision_bits: R::BITS,
        components: report_components,
        total_sum: C64::from_r(total),
        vanishing_metric: metric,
        verdict: if passed { "PASS" } else { "FAIL" }.into(),
        khovanskii,
        index_values,
        elapsed_ms: start.map(|s| s.elapsed().as_millis() as u64),
        warnings,
    })
}

struct Cancellation<R> {
    sums: Vec<Complex<R>>,
    signs: Vec<i32>,
    total: Complex<R>,
    /// `|Σ σᵢ Sᵢ| / max |1/Tor|`.
    metric: f64,
}

fn cancellation<R: Real>(components: &[Vec<TorsionPoint<R>>]) -> Cancellation<R> {
    let sums: Vec<Complex<R>> = components
        .iter()
        .map(|pts| pts.iter().fold(Complex::zero(), |acc, tp| acc + Complex::<R>::one() / tp.tor_gamma))
        .collect();
    let signs = choose_signs(&sums);
    let total = sums
        .iter()
        .zip(&signs)
        .fold(Complex::<R>::zero(), |acc, (s, &g)| acc + *s * R::from_i64(g as i64));
    let max_term = components
        .iter()
        .flatten()
        .map(|tp| (Complex::<R>::one() / tp.tor_gamma).norm().to_f64())
        .fold(0.0, f64::max);
    let metric = if max_term > 0.0 { total.norm().to_f64() / max_term } else { 0.0 };
    Cancellation { sums, signs, total, metric }
}

/// Tell a missed zero from lost precision from a genuine violation: a zero lost to the
/// solver shows up as a count change under a small perturbation of `z`, lost precision
/// as a passing metric at doubled precision.
fn diagnose<R: Real>(preset: &KnotPreset, systems: &[FiberSystem], x: Complex<R>, tol: f64) -> Result<String> {
    let xd = Complex::new(x.re.to_dd(), x.im.to_dd());
    let zd = xd + Complex::<DoubleDouble>::one() / xd;
    let shift = Complex::new(DoubleDouble::from_f64(0.6e-4), DoubleDouble::from_f64(0.8e-4));
    let here = counts(systems, xd)?;
    let moved = counts(systems, pick_x(zd + shift)?)?;
    if here != moved {
        return Ok(format!(
            "fiber count changes under perturbation of z ({here:?} vs {moved:?}): a zero was probably missed"
        ));
    }
    if R::BITS < DoubleDouble::BITS {
        let (wide, _) = fiber_torsions(preset, systems, xd)?;
        let metric = cancellation(&wide).metric;
        if metric <= tol {
            return Ok(format!(
                "the metric is {metric:.3e} at {} bits: precision loss at {} bits, rerun with higher precision",
                DoubleDouble::BITS,
                R::BITS
            ));
        }
    }
    Ok(format!("fiber count {here:?} is stable under perturbation and the metric persists at higher precision: the sum does not vanish"))
}

/// Solve the fiber, compute every torsion, and judge `Σ 1/Tor = 0`.
pub fn verify_vanishing(preset: &KnotPreset, p: i64, q: i64, z: Complex<f64>, opts: &VerifyOptions) -> Result<VerificationReport> {
    if num_integer::Integer::gcd(&p, &q) != 1 {
        return Err(Error::Domain(format!("slope ({p}, {q}) is not primitive")));
    }
    if let Some(x) = opts.x {
        let implied = x + x.inv();
        if x.norm() == 0.0 || (implied - z).norm() > 1e-9 * (1.0 + z.norm()) {
            return Err(Error::Domain(format!("x = {x} does not satisfy x + 1/x = z = {z}")));
        }
    }
    with_precision!(opts.precision, R => run::<R>(preset, p, q, z, opts))
}

/// `Σ (d_γ·Tor(M; 𝔤_ρ, γ))^{g−1}` over `tr_γ⁻¹(z)`.
pub fn twisted_index(preset: &KnotPreset, p: i64, q: i64, z: Complex<f64>, g: u32, opts: &VerifyOptions) -> Result<Complex<f64>> {
    let opts = VerifyOptions { genera: vec![g], ..opts.clone() };
    let report = verify_vanishing(preset, p, q, z, &opts)?;
    Ok(report.index_values.expect("requested")[0].value.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cplx;

    #[test]
    fn figure_eight_vanishes() {
        let preset = KnotPreset::builtin("4_1").unwrap();
        for (p, q) in [(1, 0), (0, 1), (1, 1), (3, 1), (2, 5)] {
            let opts = VerifyOptions { genera: vec![0, 1], ..Default::default() };
            let r = verify_vanishing(&preset, p, q, cplx(1.5, 0.5), &opts).unwrap();
            assert!(r.passed(), "({p}, {q}): metric {}", r.vanishing_metric);
            let idx = r.index_values.as_ref().unwrap();
            assert!((idx[1].value.0 - cplx(r.point_count() as f64, 0.0)).norm() < 1e-9);
            assert!(idx[0].value.0.norm() < 1e-6 * r.point_count() as f64);
        }
    }

    #[test]
    fn closed_form_longitude_torsion() {
        let preset = KnotPreset::builtin("4_1").unwrap();
        let systems = fiber_systems(&preset, 3, 1).unwrap();
        let (comps, _) = fiber_torsions(&preset, &systems, pick_x(cplx::<f64>(1.2, 0.7)).unwrap()).unwrap();
        let closed = preset.components[0].tor_lambda.as_ref().unwrap();
        // the closed form is stored up to a global sign; ours is its negative
        for tp in &comps[0] {
            let want = -closed.eval(tp.point.y, tp.point.m);
            assert!((tp.tor_lambda - want).norm() < 1e-10 * want.norm(), "{} vs {}", tp.tor_lambda, want);
        }
    }

    #[test]
    fn diagnoses_precision_loss() {
        // differentiating the 7_4 longitude directly cancels too much at 53 bits
        let src = include_str!("../../presets/7_4.toml").replace("slope_jacobian = \"apoly\"", "slope_jacobian = \"bordered\"");
        let preset = KnotPreset::from_toml(&src).unwrap();
        let r = verify_vanishing(&preset, 1, 1, cplx(1.5, 0.5), &VerifyOptions::default()).unwrap();
        assert!(!r.passed());
        assert!(r.warnings.iter().any(|w| w.contains("precision loss")), "{:?}", r.warnings);
        let opts = VerifyOptions { precision: Precision::new(106).unwrap(), ..Default::default() };
        assert!(verify_vanishing(&preset, 1, 1, cplx(1.5, 0.5), &opts).unwrap().passed());
    }

    #[test]
    fn signs_cancel_components() {
        let s = [cplx::<f64>(1.0, 2.0), cplx(1.0, 2.0)];
        assert_eq!(choose_signs(&s), vec![1, -1]);
        assert_eq!(choose_signs(&[cplx::<f64>(3.0, 0.0)]), vec![1]);
    }

    #[test]
    fn reports_are_deterministic() {
        let preset = KnotPreset::builtin("4_1").unwrap();
        let opts = VerifyOptions::default();
        let a = verify_vanishing(&preset, 1, 1, cplx(1.4, 0.6), &opts).unwrap().to_json();
        let b = verify_vanishing(&preset, 1, 1, cplx(1.4, 0.6), &opts).unwrap().to_json();
        assert_eq!(a, b);
        assert!(a.contains("\"elapsed_ms\": null"));
        assert!(verify_vanishing(&preset, 2, 4, cplx(1.4, 0.6), &opts).is_err());
        assert!(matches!(verify_vanishing(&preset, 1, 1, cplx(2.0, 0.0), &opts), Err(Error::NonGeneric(_))));
    }
}
