use num_complex::Complex;
use serde::Serialize;

use super::khovanskii::khovanskii_certify;
use super::vanishing::{verify_vanishing, VerifyOptions};
use crate::charvar::{pick_x, KnotPreset};
use crate::error::Result;
use crate::residue::Verdict;
use crate::scalar::{cplx, Precision};
use crate::torsion::{chain_torsion, longitude_torsion_from, presentation_complex_at, torsion_polynomial_from, FoxBlocks};

#[derive(Clone, Debug, Serialize)]
pub struct SelftestCase {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn case(name: &str, f: impl FnOnce() -> Result<(bool, String)>) -> SelftestCase {
    let (passed, detail) = f().unwrap_or_else(|e| (false, format!("error: {e}")));
    SelftestCase { name: name.into(), passed, detail }
}

/// Chain-complex torsion against the Fox quotient, up to `±t₀ᵏ`.
fn chain_vs_fox(preset: &KnotPreset) -> Result<(bool, String)> {
    let (y, m) = preset.sample_points::<f64>(0, 1, 7)?[0];
    let rho = preset.parametric(0).at(y, m, 1e-8)?;
    let blocks = FoxBlocks::new(&rho)?;
    let tp = torsion_polynomial_from(&blocks, None)?;
    let t0 = cplx(1.3, 0.4);
    let fox = tp.raw.eval(t0)?;
    let chain = chain_torsion(&presentation_complex_at(&blocks, t0)?)?.value;
    let best = (-8..=8)
        .flat_map(|k| [1.0, -1.0].map(|s| (chain * t0.powi(k) * s - fox).norm() / fox.norm()))
        .fold(f64::INFINITY, f64::min);
    Ok((best <= 1e-9, format!("relative deviation {best:.2e}")))
}

/// `T(1) = 0` and `−T′(1)` against the closed form, up to one global sign.
fn longitude_closed_form(preset: &KnotPreset) -> Result<(bool, String)> {
    let closed = preset.components[0].tor_lambda.as_ref().expect("figure-eight carries a closed form");
    let mut worst = [0.0f64; 2];
    for (y, m) in preset.sample_points::<f64>(0, 5, 11)? {
        let rho = preset.parametric(0).at(y, m, 1e-8)?;
        let tl = longitude_torsion_from(&torsion_polynomial_from(&FoxBlocks::new(&rho)?, None)?)?;
        let want = closed.eval(y, m);
        for (k, s) in [1.0, -1.0].into_iter().enumerate() {
            worst[k] = worst[k].max((tl.value - want * s).norm() / want.norm());
        }
    }
    let worst = worst[0].min(worst[1]);
    Ok((worst <= 1e-10, format!("relative deviation {worst:.2e}")))
}

fn vanishing(name: &str, p: i64, q: i64, expected: Option<usize>) -> Result<(bool, String)> {
    let preset = KnotPreset::builtin(name)?;
    let r = verify_vanishing(&preset, p, q, cplx(1.5, 0.5), &VerifyOptions::default())?;
    let count_ok = expected.is_none_or(|n| n == r.point_count());
    Ok((
        r.passed() && count_ok,
        format!("{} points, metric {:.2e}", r.point_count(), r.vanishing_metric),
    ))
}

/// Quick end-to-end checks of every stage on the built-in presets.
pub fn selftest() -> Vec<SelftestCase> {
    let mut out = Vec::new();
    out.push(case("presets", || {
        let mut n = 0;
        for name in KnotPreset::builtin_names() {
            KnotPreset::builtin(name)?;
            n += 1;
        }
        Ok((true, format!("{n} presets load and validate")))
    }));
    for name in KnotPreset::builtin_names() {
        out.push(case(&format!("chain torsion vs Fox quotient ({name})"), || chain_vs_fox(&KnotPreset::builtin(name)?)));
    }
    out.push(case("longitude torsion closed form (4_1)", || longitude_closed_form(&KnotPreset::builtin("4_1")?)));
    out.push(case("vanishing 4_1 (1,1)", || vanishing("4_1", 1, 1, Some(8))));
    out.push(case("vanishing 5_2 (3,1)", || vanishing("5_2", 3, 1, Some(23))));
    out.push(case("residue certification 4_1 (1,1)", || {
        let preset = KnotPreset::builtin("4_1")?;
        let x: Complex<f64> = pick_x(cplx(1.5, 0.5))?;
        let r = khovanskii_certify(&preset, 1, 1, x, Precision::DEFAULT)?;
        Ok((r.verdict == Verdict::Pass, format!("{} zeros, residue metric {:.2e}", r.zero_count, r.residue_metric)))
    }));
    out
}
