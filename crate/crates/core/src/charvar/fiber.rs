use num_complex::Complex;
use num_traits::{One, Zero};

use super::preset::KnotPreset;
use crate::error::{Error, Result};
use crate::poly::{pseudo_remainder, resultant, univariate_roots, CPoly, QPoly};
use crate::scalar::{precision_scale, DoubleDouble, Real};

/// The root of `x + 1/x = z` used to parametrize the fiber: `|x| > 1`, or on
/// the unit circle the one with argument in `[0, π)`.
pub fn pick_x<R: Real>(z: Complex<R>) -> Result<Complex<R>> {
    let two = R::from_f64(2.0);
    let z64 = Complex::new(z.re.to_f64(), z.im.to_f64());
    if (z64 - 2.0).norm() < 1e-12 || (z64 + 2.0).norm() < 1e-12 {
        return Err(Error::NonGeneric(format!("z = {z64} is a branch point of x + 1/x")));
    }
    let disc = (z * z - Complex::new(R::from_f64(4.0), R::zero())).sqrt();
    let a = (z + disc) / two;
    let b = (z - disc) / two;
    let (na, nb) = (a.norm().to_f64(), b.norm().to_f64());
    if (na - nb).abs() > 1e-12 * na.max(nb) {
        return Ok(if na > nb { a } else { b });
    }
    let upper = |x: Complex<R>| {
        let th = x.im.to_f64().atan2(x.re.to_f64());
        (0.0..std::f64::consts::PI).contains(&th)
    };
    Ok(if upper(a) { a } else { b })
}

/// `d_γ = 1` for even `p`, `2` for odd `p`.
pub fn d_gamma(p: i64) -> u32 {
    if p % 2 == 0 {
        1
    } else {
        2
    }
}

/// A character on the fiber `{ m^p l^q = x }` of a preset component.
#[derive(Clone, Debug, PartialEq)]
pub struct CharacterPoint<R> {
    /// Zero-based component index.
    pub component: usize,
    pub y: Complex<R>,
    pub m: Complex<R>,
    pub l: Complex<R>,
    /// `det ∂(f, l − L, m^p l^q − x)/∂(y, m, l)`.
    pub jacobian_det: Complex<R>,
    /// Largest relative residual of the defining equations.
    pub residual: f64,
}

fn powi<R: Real>(z: Complex<R>, k: i64) -> Complex<R> {
    let mut base = if k < 0 { Complex::<R>::one() / z } else { z };
    let mut n = k.unsigned_abs();
    let mut acc = Complex::one();
    while n > 0 {
        if n & 1 == 1 {
            acc = acc * base;
        }
        base = base * base;
        n >>= 1;
    }
    acc
}

type Dd = Complex<DoubleDouble>;

fn widen<R: Real>(z: Complex<R>) -> Dd {
    Complex::new(z.re.to_dd(), z.im.to_dd())
}

fn narrow<R: Real>(z: Dd) -> Complex<R> {
    Complex::new(R::from_dd(z.re), R::from_dd(z.im))
}

/// Eliminant for one component and slope, reusable across fibers.
///
/// Refinement evaluates the defining equations in double-double regardless of
/// the working precision: the longitude polynomials cancel heavily and would
/// otherwise cap the attainable residual.
#[derive(Clone, Debug)]
pub struct FiberSystem {
    component: usize,
    p: i64,
    q: i64,
    riley: QPoly,
    /// `f, f_y, f_m, L, L_y, L_m` in `(y, m)`.
    numeric: [CPoly<DoubleDouble>; 6],
    /// Resultant in `y` of the Riley polynomial and the slope equation; variables `[y, m, x]`.
    eliminant: QPoly,
}

const YMX: [&str; 3] = ["y", "m", "x"];

impl FiberSystem {
    pub fn new(preset: &KnotPreset, component: usize, p: i64, q: i64) -> Result<Self> {
        let c = preset
            .components
            .get(component)
            .ok_or_else(|| Error::Domain(format!("component {} does not exist", component + 1)))?;
        if num_integer::Integer::gcd(&p, &q) != 1 {
            return Err(Error::Domain(format!("slope ({p}, {q}) is not primitive")));
        }
        let f = c.riley.with_vars(&YMX)?;
        let big_l = c.longitude.with_vars(&YMX)?;
        let (f, _) = f.clear_var(0);
        // L^|q| reduced modulo the Riley polynomial, which is monic in y
        let mut lq = f.one_like();
        for _ in 0..q.unsigned_abs() {
            lq = pseudo_remainder(&lq.checked_mul(&big_l)?, &f, 0)?;
        }
        let x = QPoly::var(&YMX, "x")?;
        let mut mp = vec![0; 3];
        mp[1] = p as i32;
        let mono = f.one_like().mul_monomial(&mp);
        let h = if q >= 0 { &lq.mul_monomial(&mp) - &x } else { &mono - &x.checked_mul(&lq)? };
        let eliminant = resultant(&f, &h, "y")?.poly;
        let (rl, lo) = (&c.riley, &c.longitude);
        let numeric = [rl.clone(), rl.derivative(0), rl.derivative(1), lo.clone(), lo.derivative(0), lo.derivative(1)]
            .map(|p| p.to_complex::<DoubleDouble>());
        Ok(FiberSystem { component, p, q, riley: c.riley.clone(), numeric, eliminant })
    }

    pub fn component(&self) -> usize {
        self.component
    }

    pub fn slope(&self) -> (i64, i64) {
        (self.p, self.q)
    }

    /// Degree in `m` of the eliminant, an upper bound for the number of fiber points
    /// counted with their `y`-multiplicity.
    pub fn eliminant_degree(&self) -> i32 {
        self.eliminant.degree_range(1).map_or(0, |(lo, hi)| hi - lo)
    }

    /// `(f, g)` with `g = m^p L^q − x`, their Jacobian in `(y, m)`, and rounding scales.
    fn equations(&self, y: Dd, m: Dd, x: Dd) -> ([Dd; 2], [[Dd; 2]; 2], [f64; 2]) {
        let pt = [y, m];
        let [f, fy, fm, lc, ly, lm] = &self.numeric;
        let fv = f.eval(&pt);
        let fs = f.eval_scale(&pt);
        let l = lc.eval(&pt);
        let (ly, lm) = (ly.eval(&pt), lm.eval(&pt));
        let (pr, qr) = (DoubleDouble::from_i64(self.p), DoubleDouble::from_i64(self.q));
        let mpl = powi(m, self.p) * powi(l, self.q);
        let g = mpl - x;
        // ∂(m^p L^q) = m^p L^q (p dm/m + q dL/L)
        let gy = mpl * ly / l * qr;
        let gm = mpl * (Dd::one() / m * pr + lm / l * qr);
        let gs = mpl.norm().to_f64() + x.norm().to_f64();
        ([fv, g], [[fy.eval(&pt), fm.eval(&pt)], [gy, gm]], [fs, gs])
    }

    fn merit(v: &[Dd; 2], s: &[f64; 2]) -> f64 {
        let r = |k: usize| v[k].norm().to_f64() / s[k].max(f64::MIN_POSITIVE);
        r(0).max(r(1))
    }

    fn relative_residual(&self, y: Dd, m: Dd, x: Dd) -> f64 {
        let (v, _, s) = self.equations(y, m, x);
        Self::merit(&v, &s)
    }

    /// Damped Newton on `(f, m^p L^q − x)`, stopping at the working precision of `R`.
    fn polish<R: Real>(&self, mut y: Dd, mut m: Dd, x: Dd) -> (Dd, Dd) {
        let stop = 1e-14 * precision_scale::<R>();
        let half = DoubleDouble::from_f64(0.5);
        for _ in 0..100 {
            let (v, j, s) = self.equations(y, m, x);
            let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
            if det.is_zero() {
                break;
            }
            let dy = (v[0] * j[1][1] - v[1] * j[0][1]) / det;
            let dm = (j[0][0] * v[1] - j[1][0] * v[0]) / det;
            let old = Self::merit(&v, &s);
            let mut lambda = DoubleDouble::one();
            let mut accepted = false;
            for _ in 0..30 {
                let (ny, nm) = (y - dy * lambda, m - dm * lambda);
                if old == 0.0 || self.relative_residual(ny, nm, x) <= old {
                    y = ny;
                    m = nm;
                    accepted = true;
                    break;
                }
                lambda *= half;
            }
            let step = (dy.norm() * lambda).to_f64().max((dm.norm() * lambda).to_f64());
            let size = 1.0 + y.norm().to_f64().max(m.norm().to_f64());
            if !accepted || step < stop * size {
                break;
            }
        }
        (y, m)
    }

    /// Smallest relative residual attainable in double-double: rounding in `L` is amplified
    /// by its cancellation `Σ|terms| / |L|` and again by the power `q`.
    fn rounding_floor(&self, y: Dd, m: Dd) -> f64 {
        let pt = [y, m];
        let l = &self.numeric[3];
        let cond = l.eval_scale(&pt) / l.eval(&pt).norm().to_f64().max(f64::MIN_POSITIVE);
        1e3 * DoubleDouble::unit_roundoff().to_f64() * (1.0 + (self.q.unsigned_abs() as f64) * cond)
    }

    /// All characters with `m^p l^q = x` on this component, sorted by `(m, y)`.
    pub fn solve<R: Real>(&self, x: Complex<R>) -> Result<(Vec<CharacterPoint<R>>, Vec<String>)> {
        let mut warnings = Vec::new();
        let in_m = self.eliminant.eval_partial(&[(2, x)]);
        if in_m.is_zero() || in_m.used_vars().is_empty() {
            return Err(Error::NonGeneric(format!(
                "the eliminant on component {} is degenerate at x = {}",
                self.component + 1,
                Complex::new(x.re.to_f64(), x.im.to_f64())
            )));
        }
        let ms = univariate_roots(&in_m)?;
        let xd = widen(x);
        let tol = 1e-10 * precision_scale::<R>();
        let mut points: Vec<CharacterPoint<R>> = Vec::new();
        let mut boundary = 0;
        for m0 in ms.distinct() {
            let fy = self.riley.eval_partial(&[(1, m0)]);
            for y0 in univariate_roots(&fy)?.distinct() {
                let (y0, m0) = (widen(y0), widen(m0));
                if self.relative_residual(y0, m0, xd) > 1e-5 {
                    continue;
                }
                let (yd, md) = self.polish::<R>(y0, m0, xd);
                let residual = self.relative_residual(yd, md, xd);
                // spurious candidates from the loose prefilter do not converge
                if residual > tol.max(self.rounding_floor(yd, md)) {
                    continue;
                }
                if (md * md - Dd::one()).norm().to_f64() < 1e-6 {
                    boundary += 1;
                    continue;
                }
                let (y, m) = (narrow::<R>(yd), narrow::<R>(md));
                let s = 1.0 + y.norm().to_f64().max(m.norm().to_f64());
                let dup = points
                    .iter()
                    .any(|p| (p.y - y).norm().to_f64().max((p.m - m).norm().to_f64()) < 1e-8 * s);
                if dup {
                    continue;
                }
                let ld = self.numeric[3].eval(&[yd, md]);
                points.push(CharacterPoint {
                    component: self.component,
                    y,
                    m,
                    l: narrow(ld),
                    jacobian_det: narrow(self.jacobian_det_dd(yd, md, ld)),
                    residual,
                });
            }
        }
        if boundary > 0 {
            warnings.push(format!(
                "component {}: {boundary} boundary-parabolic point(s) with m = ±1 excluded",
                self.component + 1
            ));
        }
        let key = |p: &CharacterPoint<R>| [p.m.re.to_f64(), p.m.im.to_f64(), p.y.re.to_f64(), p.y.im.to_f64()];
        points.sort_by(|a, b| {
            let (ka, kb) = (key(a), key(b));
            ka.iter().zip(&kb).map(|(u, v)| u.total_cmp(v)).find(|o| o.is_ne()).unwrap_or(std::cmp::Ordering::Equal)
        });
        Ok((points, warnings))
    }

    /// `det ∂(f, l − L, m^p l^q − x)/∂(y, m, l)`.
    pub fn jacobian_det<R: Real>(&self, y: Complex<R>, m: Complex<R>, l: Complex<R>) -> Complex<R> {
        narrow(self.jacobian_det_dd(widen(y), widen(m), widen(l)))
    }

    fn jacobian_det_dd(&self, y: Dd, m: Dd, l: Dd) -> Dd {
        let pt = [y, m];
        let [_, fy, fm, _, ly, lm] = &self.numeric;
        let (fy, fm) = (fy.eval(&pt), fm.eval(&pt));
        let (gy, gm) = (-ly.eval(&pt), -lm.eval(&pt));
        let (pr, qr) = (DoubleDouble::from_i64(self.p), DoubleDouble::from_i64(self.q));
        let hm = powi(m, self.p - 1) * powi(l, self.q) * pr;
        let hl = powi(m, self.p) * powi(l, self.q - 1) * qr;
        // rows (f_y, f_m, 0), (g_y, g_m, 1), (0, h_m, h_l)
        fy * (gm * hl - hm) - fm * (gy * hl)
    }
}

/// Characters on the fiber over `x` across all components of a preset.
#[derive(Clone, Debug)]
pub struct FiberSolution<R> {
    pub x: Complex<R>,
    pub points: Vec<CharacterPoint<R>>,
    pub warnings: Vec<String>,
}

/// Solve the fiber `{ m^p l^q = x }` on every component, using cached eliminants.
pub fn solve_fiber<R: Real>(systems: &[FiberSystem], x: Complex<R>) -> Result<FiberSolution<R>> {
    let mut points = Vec::new();
    let mut warnings = Vec::new();
    for s in systems {
        let (p, w) = s.solve(x)?;
        points.extend(p);
        warnings.extend(w);
    }
    Ok(FiberSolution { x, points, warnings })
}

impl<R: Real> CharacterPoint<R> {
    /// Check the defining equations and that `tr ρ(μ^p λ^q) = z`.
    pub fn check(&self, system: &FiberSystem, z: Complex<R>) -> Result<()> {
        let (p, q) = system.slope();
        let x = powi(self.m, p) * powi(self.l, q);
        if self.residual > 1e-10 * precision_scale::<R>() {
            return Err(Error::Solver { message: "point is not on the fiber".into(), worst_residual: self.residual });
        }
        let tr = x + Complex::<R>::one() / x;
        let err = (tr - z).norm().to_f64() / (1.0 + z.norm().to_f64());
        if err > 1e-8 {
            return Err(Error::Solver { message: "trace does not match z".into(), worst_residual: err });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cplx;

    fn c(re: f64, im: f64) -> Complex<f64> {
        cplx(re, im)
    }

    #[test]
    fn x_choice() {
        let x = pick_x(c(1.5, 0.5)).unwrap();
        assert!(x.norm() > 1.0);
        assert!((x + x.inv() - c(1.5, 0.5)).norm() < 1e-14);
        let x = pick_x(c(1.0, 0.0)).unwrap();
        assert!(x.im > 0.0);
        assert!(matches!(pick_x(c(2.0, 0.0)), Err(Error::NonGeneric(_))));
        assert!(matches!(pick_x(c(-2.0, 0.0)), Err(Error::NonGeneric(_))));
        assert_eq!((d_gamma(2), d_gamma(3), d_gamma(-1)), (1, 2, 2));
    }

    fn count(name: &str, p: i64, q: i64, z: Complex<f64>) -> Vec<usize> {
        let preset = KnotPreset::builtin(name).unwrap();
        let x = pick_x(z).unwrap();
        (0..preset.components.len())
            .map(|i| {
                let sys = FiberSystem::new(&preset, i, p, q).unwrap();
                let (pts, _) = sys.solve(x).unwrap();
                for pt in &pts {
                    pt.check(&sys, z).unwrap();
                }
                pts.len()
            })
            .collect()
    }

    #[test]
    fn fiber_sizes() {
        assert_eq!(count("4_1", 1, 0, c(1.5, 0.5)), vec![2]);
        assert_eq!(count("5_2", 3, 1, c(1.5, 0.5)), vec![23]);
    }

    #[test]
    fn fiber_sizes_7_4() {
        let x = c(2.0, 3.0);
        let z = x + x.inv();
        assert_eq!(count("7_4", 1, 1, z), vec![17, 20]);
    }
}
