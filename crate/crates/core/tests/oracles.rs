//! Independent numerical oracles: companion-matrix eigenvalues for the root finder and
//! numeric Sylvester determinants for the exact resultant.

use adjtor_core::num_complex::Complex;
use adjtor_core::poly::{parse_poly, resultant, roots_of, CPoly};
use adjtor_core::{DoubleDouble, Real};
use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type C = Complex<f64>;

fn random_coeffs(rng: &mut ChaCha8Rng, degree: usize) -> Vec<C> {
    (0..=degree).map(|_| C::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0))).collect()
}

/// Eigenvalues of the companion matrix of `Σ cₖ zᵏ`.
fn companion_roots(coeffs: &[C]) -> Vec<C> {
    let n = coeffs.len() - 1;
    let lead = coeffs[n];
    let mut m = DMatrix::<C>::zeros(n, n);
    for i in 1..n {
        m[(i, i - 1)] = C::new(1.0, 0.0);
    }
    for i in 0..n {
        m[(i, n - 1)] = -coeffs[i] / lead;
    }
    m.schur().eigenvalues().expect("triangular Schur form").iter().copied().collect()
}

fn matched_deviation(a: &[C], b: &[C]) -> f64 {
    let mut used = vec![false; b.len()];
    let mut worst = 0.0f64;
    for u in a {
        let (j, d) = b
            .iter()
            .enumerate()
            .filter(|(j, _)| !used[*j])
            .map(|(j, v)| (j, (u - v).norm()))
            .min_by(|x, y| x.1.total_cmp(&y.1))
            .unwrap();
        used[j] = true;
        worst = worst.max(d / (1.0 + u.norm()));
    }
    worst
}

#[test]
fn roots_agree_with_companion_eigenvalues() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..40 {
        let degree = rng.gen_range(2..=14);
        let coeffs = random_coeffs(&mut rng, degree);
        let ours = roots_of(&coeffs).unwrap();
        assert_eq!(ours.roots.len(), degree);
        let dev = matched_deviation(&ours.roots, &companion_roots(&coeffs));
        assert!(dev < 1e-8, "degree {degree}: deviation {dev:e}");
    }
}

#[test]
fn double_double_roots_refine_the_f64_ones() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..10 {
        let degree = rng.gen_range(3..=10);
        let coeffs = random_coeffs(&mut rng, degree);
        let wide: Vec<Complex<DoubleDouble>> =
            coeffs.iter().map(|c| Complex::new(DoubleDouble::from_f64(c.re), DoubleDouble::from_f64(c.im))).collect();
        let dd = roots_of(&wide).unwrap();
        assert!(dd.worst_residual < 1e-28, "backward error {:e}", dd.worst_residual);
        let narrowed: Vec<C> = dd.roots.iter().map(|r| C::new(r.re.to_f64(), r.im.to_f64())).collect();
        assert!(matched_deviation(&narrowed, &roots_of(&coeffs).unwrap().roots) < 1e-10);
    }
}

/// Sylvester matrix of two polynomials given by ascending coefficients.
fn sylvester(f: &[C], g: &[C]) -> DMatrix<C> {
    let (m, n) = (f.len() - 1, g.len() - 1);
    let mut s = DMatrix::<C>::zeros(m + n, m + n);
    for i in 0..n {
        for (k, c) in f.iter().rev().enumerate() {
            s[(i, i + k)] = *c;
        }
    }
    for i in 0..m {
        for (k, c) in g.iter().rev().enumerate() {
            s[(n + i, i + k)] = *c;
        }
    }
    s
}

fn ascending_in_y(p: &CPoly<f64>) -> Vec<C> {
    let (_, hi) = p.degree_range(0).unwrap();
    (0..=hi).map(|k| p.terms().filter(|(e, _)| e[0] == k).map(|(_, c)| *c).sum()).collect()
}

#[test]
fn resultant_matches_numeric_sylvester_determinant() {
    let vars = ["y", "m"];
    let f = parse_poly("(y-1)*(m^2+m^-2) + y^2 - 3*y + 3", &vars).unwrap();
    let g = parse_poly("m^2*y^3 - 2*y + m^-1*y^2 + 5", &vars).unwrap();
    let r = resultant(&f, &g, "y").unwrap().poly;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..10 {
        let m = C::from_polar(rng.gen_range(0.5..2.0), rng.gen_range(0.0..std::f64::consts::TAU));
        let fy = ascending_in_y(&f.eval_partial(&[(1, m)]));
        let gy = ascending_in_y(&g.eval_partial(&[(1, m)]));
        let want = sylvester(&fy, &gy).determinant();
        let got = r.to_complex::<f64>().eval(&[C::new(0.0, 0.0), m]);
        assert!((got - want).norm() <= 1e-9 * want.norm(), "m = {m}: {got} vs {want}");
    }
}
