//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line; the process
//! exits nonzero if any fails.

use std::time::{Duration, Instant};

use adjtor_core::charvar::{pick_x, KnotPreset};
use adjtor_core::num_complex::Complex;
use adjtor_core::poly::{exact_div, parse_poly, resultant, CPoly, QPoly};
use adjtor_core::residue::{check_nondegenerate, residue_sum, torus_zeros, Verdict};
use adjtor_core::torsion::{chain_torsion, presentation_complex_at, torsion_polynomial_from, FoxBlocks};
use adjtor_core::verifier::{fiber_systems, fiber_torsions, khovanskii_certify, verify_vanishing, VerifyOptions};
use adjtor_core::{Precision, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type C = Complex<f64>;

const PRESETS: [&str; 3] = ["4_1", "5_2", "7_4"];

/// `z₀ + U[−0.3, 0.3]²` with `z₀ = 1.5 + 0.5i`, away from the branch points `±2`.
fn random_z(rng: &mut ChaCha8Rng) -> C {
    loop {
        let z = C::new(1.5 + rng.gen_range(-0.3..0.3), 0.5 + rng.gen_range(-0.3..0.3));
        if (z - 2.0).norm() >= 0.1 && (z + 2.0).norm() >= 0.1 {
            return z;
        }
    }
}

fn random_slope(rng: &mut ChaCha8Rng) -> (i64, i64) {
    loop {
        let (p, q) = (rng.gen_range(-4..=4i64), rng.gen_range(0..=4i64));
        if num_integer::Integer::gcd(&p, &q) == 1 && (q > 0 || p == 1) {
            return (p, q);
        }
    }
}

/// Outcome of one criterion: pass flag and a one-line detail.
type Outcome = Result<(bool, String)>;

fn vanishing_4_1() -> Outcome {
    let preset = KnotPreset::builtin("4_1")?;
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let (mut worst, mut slowest) = (0.0f64, Duration::ZERO);
    for (p, q) in [(1, 0), (0, 1), (1, 1), (3, 1), (2, 5)] {
        for _ in 0..5 {
            let z = random_z(&mut rng);
            let start = Instant::now();
            let r = verify_vanishing(&preset, p, q, z, &VerifyOptions::default())?;
            slowest = slowest.max(start.elapsed());
            worst = worst.max(r.vanishing_metric);
        }
    }
    Ok((
        worst <= 1e-6 && slowest < Duration::from_secs(2),
        format!("worst metric {worst:.2e} (≤ 1e-6), slowest run {:.0} ms (< 2000 ms)", slowest.as_secs_f64() * 1e3),
    ))
}

const PRINTED_5_2: [(f64, f64); 23] = [
    (-5.1707095, 6.056876),
    (-5.1403791, -5.271889),
    (-4.9799403, 5.257641),
    (-4.7335145, -7.299169),
    (-4.6988457, -5.941816),
    (-4.3082655, 7.042614),
    (-3.8808087, -6.974908),
    (-3.3630233, 7.605688),
    (-2.6624296, 3.284613),
    (0.2005695, -4.913042),
    (9.8858003, 2.112603),
    (14.549795, 0.213397),
    (14.568149, 0.187863),
    (15.922137, -0.358869),
    (16.535205, -0.634458),
    (17.512936, 0.306584),
    (18.497289, -1.694233),
    (18.514426, -0.117280),
    (19.936167, 0.800241),
    (23.334158, -0.639555),
    (25.010603, 1.138408),
    (25.406178, 0.241449),
    (28.564506, -0.402759),
];

/// Largest deviation of the best one-to-one matching (greedy on sorted distances).
fn multiset_deviation(a: &[C], b: &[C]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    let mut pairs: Vec<(f64, usize, usize)> =
        a.iter().enumerate().flat_map(|(i, u)| b.iter().enumerate().map(move |(j, v)| ((u - v).norm(), i, j))).collect();
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0));
    let (mut used_a, mut used_b) = (vec![false; a.len()], vec![false; b.len()]);
    let mut worst = 0.0f64;
    for (d, i, j) in pairs {
        if !used_a[i] && !used_b[j] {
            used_a[i] = true;
            used_b[j] = true;
            worst = worst.max(d);
        }
    }
    worst
}

fn regression_5_2() -> Outcome {
    let preset = KnotPreset::builtin("5_2")?;
    let r = verify_vanishing(&preset, 3, 1, C::new(1.5, 0.5), &VerifyOptions::default())?;
    let tors: Vec<C> = r.components[0].points.iter().map(|p| p.torsion.0).collect();
    let printed: Vec<C> = PRINTED_5_2.iter().map(|&(re, im)| C::new(re, im)).collect();
    let flipped: Vec<C> = tors.iter().map(|t| -t).collect();
    let dev = multiset_deviation(&tors, &printed).min(multiset_deviation(&flipped, &printed));
    Ok((
        tors.len() == 23 && dev <= 1e-5 && r.vanishing_metric <= 1e-6,
        format!("{} points, torsion deviation {dev:.1e} (≤ 1e-5), metric {:.2e}", tors.len(), r.vanishing_metric),
    ))
}

fn cancellation_7_4() -> Outcome {
    let preset = KnotPreset::builtin("7_4")?;
    let x = C::new(2.0, 3.0);
    let opts = VerifyOptions { x: Some(x), ..Default::default() };
    let r = verify_vanishing(&preset, 1, 1, x + x.inv(), &opts)?;
    let target = C::new(0.10320, 0.00274);
    let counts: Vec<usize> = r.components.iter().map(|c| c.points.len()).collect();
    // one global orientation s with σᵢ Sᵢ = ±s·target alternating between the two components
    let signed: Vec<C> = r.components.iter().map(|c| c.inverse_sum.0 * c.sign as f64).collect();
    let dev = [1.0, -1.0]
        .iter()
        .map(|s| (signed[0] - target * *s).norm().max((signed[1] + target * *s).norm()))
        .fold(f64::INFINITY, f64::min);
    Ok((
        counts == [17, 20] && dev <= 1e-4 && r.vanishing_metric <= 1e-4,
        format!("counts {counts:?}, component sums within {dev:.1e} of ±(0.10320+0.00274i), metric {:.2e}", r.vanishing_metric),
    ))
}

fn random_t0(rng: &mut ChaCha8Rng) -> C {
    C::from_polar(rng.gen_range(0.6..1.6), rng.gen_range(0.3..6.0))
}

fn oracle_equivalence() -> Outcome {
    let mut worst = 0.0f64;
    for (n, name) in PRESETS.iter().enumerate() {
        let preset = KnotPreset::builtin(name)?;
        let mut rng = ChaCha8Rng::seed_from_u64(40 + n as u64);
        for k in 0..5 {
            let comp = k % preset.components.len();
            let (y, m) = preset.sample_points::<f64>(comp, 1, rng.gen())?[0];
            let rho = preset.parametric(comp).at(y, m, 1e-8)?;
            let blocks = FoxBlocks::new(&rho)?;
            let tp = torsion_polynomial_from(&blocks, None)?;
            let pairs: Vec<(C, C)> = (0..10)
                .map(|_| {
                    let t0 = random_t0(&mut rng);
                    Ok((t0, chain_torsion(&presentation_complex_at(&blocks, t0)?)?.value / tp.raw.eval(t0)?))
                })
                .collect::<Result<_>>()?;
            // a single ±t₀ᵏ must explain every ratio
            let best = (-12..=12)
                .flat_map(|e| [1.0, -1.0].map(|s| (e, s)))
                .map(|(e, s)| pairs.iter().map(|(t0, r)| (r * t0.powi(e) * s - 1.0).norm()).fold(0.0, f64::max))
                .fold(f64::INFINITY, f64::min);
            worst = worst.max(best);
        }
    }
    Ok((worst <= 1e-9, format!("worst relative deviation {worst:.1e} (≤ 1e-9) over 3 × 5 characters × 10 t₀")))
}

fn yamaguchi() -> Outcome {
    let (mut t1, mut fd, mut closed) = (0.0f64, 0.0f64, 0.0f64);
    let one = C::new(1.0, 0.0);
    for (n, name) in PRESETS.iter().enumerate() {
        let preset = KnotPreset::builtin(name)?;
        let mut signs = [0.0f64; 2];
        for k in 0..20 {
            let comp = k % preset.components.len();
            let (y, m) = preset.sample_points::<f64>(comp, 1, 100 * n as u64 + k as u64)?[0];
            let rho = preset.parametric(comp).at(y, m, 1e-8)?;
            let tp = torsion_polynomial_from(&FoxBlocks::new(&rho)?, None)?;
            let t = &tp.reduced;
            let scale = t.numerator().abs_scale(one) / t.denominator().eval(one).norm();
            let (v, d) = t.eval_and_derivative(one)?;
            t1 = t1.max(v.norm() / scale);
            let h = 1e-4;
            let central = (t.eval(C::new(1.0 + h, 0.0))? - t.eval(C::new(1.0 - h, 0.0))?) / (2.0 * h);
            fd = fd.max((central - d).norm() / d.norm());
            if let Some(cf) = &preset.components[comp].tor_lambda {
                let want = cf.eval(y, m);
                for (i, s) in [1.0, -1.0].into_iter().enumerate() {
                    signs[i] = signs[i].max((-d - want * s).norm() / want.norm());
                }
            }
        }
        if *name == "4_1" {
            closed = signs[0].min(signs[1]);
        }
    }
    Ok((
        t1 <= 1e-8 && fd <= 1e-5 && closed <= 1e-10,
        format!("|T(1)|/scale ≤ {t1:.1e}, finite-difference deviation {fd:.1e}, 4_1 closed form {closed:.1e}"),
    ))
}

fn figure_eight_formulas() -> Outcome {
    let preset = KnotPreset::builtin("4_1")?;
    let comp = &preset.components[0];
    let yml = ["y", "m", "l"];
    let f = comp.riley.with_vars(&yml)?;
    let g = parse_poly("l", &yml)? - comp.longitude.with_vars(&yml)?;
    let computed = resultant(&f, &g, "y")?.poly.with_vars(&["m", "l"])?.strip_monomial().0;
    let printed = comp.apoly.as_ref().expect("4_1 carries an A-polynomial").strip_monomial().0;
    let divisible = exact_div(&computed, &printed).is_ok();

    let a = comp.apoly.as_ref().unwrap();
    let (a_m, a_l) = (a.derivative(0).to_complex::<f64>(), a.derivative(1).to_complex::<f64>());
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut worst = 0.0f64;
    for _ in 0..10 {
        let (p, q) = random_slope(&mut rng);
        let x = pick_x(random_z(&mut rng))?;
        let systems = fiber_systems(&preset, p, q)?;
        let (pts, _) = fiber_torsions(&preset, &systems, x)?;
        let mut dev = [0.0f64; 2];
        for tp in &pts[0] {
            let (m, l) = (tp.point.m, tp.point.l);
            // B = m^p l^q − x
            let (b_m, b_l) = (x * p as f64 / m, x * q as f64 / l);
            let jac = a_m.eval(&[m, l]) * b_l - a_l.eval(&[m, l]) * b_m;
            let inv = 2.0 * x * (m * m - (m * m).inv()) / (m * l * jac);
            for (i, eps) in [1.0, -1.0].into_iter().enumerate() {
                let want = inv * eps;
                dev[i] = dev[i].max((tp.tor_gamma.inv() - want).norm() / want.norm());
            }
        }
        worst = worst.max(dev[0].min(dev[1]));
    }
    Ok((
        divisible && worst <= 1e-8,
        format!("printed A divides the eliminant: {divisible}; direct 1/Tor(γ) deviation {worst:.1e} (≤ 1e-8)"),
    ))
}

fn khovanskii() -> Outcome {
    let preset = KnotPreset::builtin("4_1")?;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut all, mut worst) = (true, 0.0f64);
    let mut failed = Vec::new();
    for _ in 0..10 {
        let (p, q) = random_slope(&mut rng);
        let x = pick_x(random_z(&mut rng))?;
        let r = khovanskii_certify(&preset, p, q, x, Precision::DEFAULT)?;
        let ok = r.nondegenerate.verdict == Verdict::Pass && r.simplicity.simple && r.containment.strict;
        if !ok {
            failed.push((p, q));
        }
        all &= ok;
        worst = worst.max(r.residue_metric);
    }
    Ok((
        all && worst <= 1e-7,
        format!("hypotheses hold for all slopes: {all} (failures {failed:?}); worst residue metric {worst:.1e} (≤ 1e-7)"),
    ))
}

/// Dense polynomial of total degree `d` in `(a, b)` with nonzero integer coefficients in `[−5, 5]`.
fn dense(rng: &mut ChaCha8Rng, d: i32) -> QPoly {
    let mut f = QPoly::zero(&["a", "b"]);
    for i in 0..=d {
        for j in 0..=d - i {
            let c = loop {
                let c = rng.gen_range(-5..=5i64);
                if c != 0 {
                    break c;
                }
            };
            f.add_term(vec![i, j], adjtor_core::poly::rat(c));
        }
    }
    f
}

/// Residue sum of `h` over the torus zeros of a random dense system of degrees `(d1, d2)`;
/// `None` when the sample violates the hypotheses or the zero count falls short of Bézout.
fn grt_sample(rng: &mut ChaCha8Rng, d1: i32, d2: i32, interior: bool) -> Result<Option<f64>> {
    let (f1, f2) = (dense(rng, d1), dense(rng, d2));
    let fs: [CPoly<f64>; 2] = [f1.to_complex(), f2.to_complex()];
    if check_nondegenerate(&fs)?.verdict != Verdict::Pass {
        return Ok(None);
    }
    let zeros = torus_zeros::<f64>(&f1, &f2, &[])?;
    if zeros.len() != (d1 * d2) as usize {
        return Ok(None);
    }
    let d = d1 + d2;
    let mut h: CPoly<f64> = CPoly::zero(&["a", "b"]);
    if interior {
        // interior lattice points of d·Δ: i, j ≥ 1, i + j ≤ d − 1
        for i in 1..d {
            for j in 1..d - i {
                h.add_term(vec![i, j], C::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
            }
        }
    } else {
        // a boundary point: a vertex or a point on an edge of d·Δ
        let k = rng.gen_range(0..=d);
        let e = match rng.gen_range(0..3) {
            0 => vec![k, 0],
            1 => vec![0, k],
            _ => vec![k, d - k],
        };
        h.add_term(e, C::new(1.0, 0.0));
    }
    let zeros: Vec<Vec<C>> = zeros.into_iter().map(|z| z.to_vec()).collect();
    Ok(Some(residue_sum(&fs, &h, &zeros)?.normalized()))
}

fn grt_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let degrees = |rng: &mut ChaCha8Rng| loop {
        let (d1, d2) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
        if d1 + d2 >= 3 {
            return (d1, d2);
        }
    };
    let (mut admissible, mut worst, mut rejected) = (0, 0.0f64, 0);
    while admissible < 50 {
        let (d1, d2) = degrees(&mut rng);
        match grt_sample(&mut rng, d1, d2, true)? {
            Some(v) => {
                admissible += 1;
                worst = worst.max(v);
            }
            None => rejected += 1,
        }
    }
    let (mut controls, mut smallest) = (0, f64::INFINITY);
    while controls < 10 {
        let (d1, d2) = degrees(&mut rng);
        if let Some(v) = grt_sample(&mut rng, d1, d2, false)? {
            controls += 1;
            smallest = smallest.min(v);
        }
    }
    Ok((
        worst <= 1e-7 && smallest >= 1e-3,
        format!("50 admissible systems ({rejected} resampled): worst {worst:.1e} (≤ 1e-7); 10 boundary controls: smallest {smallest:.1e} (≥ 1e-3)"),
    ))
}

fn twisted_index() -> Outcome {
    let cases: [(&str, &[(i64, i64)]); 3] =
        [("4_1", &[(1, 0), (1, 1), (3, 1)]), ("5_2", &[(1, 0), (3, 1)]), ("7_4", &[(1, 0), (1, 1)])];
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let (mut ok, mut worst0) = (true, 0.0f64);
    let mut bad = Vec::new();
    for (name, slopes) in cases {
        let preset = KnotPreset::builtin(name)?;
        for &(p, q) in slopes {
            let mut seen: Option<i64> = None;
            for _ in 0..5 {
                let opts = VerifyOptions { genera: vec![0, 1], ..Default::default() };
                let r = verify_vanishing(&preset, p, q, random_z(&mut rng), &opts)?;
                let idx = r.index_values.as_ref().expect("requested");
                let (g0, g1) = (idx[0].value.0, idx[1].value.0);
                let n = g1.re.round() as i64;
                let integral = n > 0 && (g1 - n as f64).norm() <= 1e-6 * n as f64;
                let consistent = seen.is_none_or(|s| s == n);
                seen = Some(n);
                let d = if p % 2 == 0 { 1.0 } else { 2.0 };
                let largest = r
                    .components
                    .iter()
                    .flat_map(|c| &c.points)
                    .map(|pt| 1.0 / (d * pt.torsion.0.norm()))
                    .fold(0.0, f64::max);
                let m0 = g0.norm() / largest;
                worst0 = worst0.max(m0);
                if !(integral && consistent && m0 <= 1e-6) {
                    ok = false;
                    bad.push(format!("{name} ({p},{q})"));
                }
            }
        }
    }
    Ok((ok, format!("g = 1 integral and z-independent, worst g = 0 metric {worst0:.1e} (≤ 1e-6); failures {bad:?}")))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 9] = [
        ("4_1 vanishing", vanishing_4_1),
        ("5_2 regression", regression_5_2),
        ("7_4 two-component cancellation", cancellation_7_4),
        ("chain/Fox oracle equivalence", oracle_equivalence),
        ("Yamaguchi structure", yamaguchi),
        ("4_1 closed forms", figure_eight_formulas),
        ("4_1 residue certification", khovanskii),
        ("residue theorem property suite", grt_suite),
        ("twisted index structure", twisted_index),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let (pass, detail) = run().unwrap_or_else(|e| (false, format!("error: {e}")));
        failures += usize::from(!pass);
        println!("criterion {} [{name}]: {} — {detail}", i + 1, if pass { "PASS" } else { "FAIL" });
    }
    if failures > 0 {
        println!("{failures} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
    println!("all {} criteria passed", criteria.len());
}
