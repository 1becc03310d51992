use num_complex::Complex;
use num_integer::Integer;

use super::TorsionValue;
use crate::error::{Error, Result};
use crate::poly::QPoly;
use crate::scalar::Real;

/// Defining equations used to differentiate `m` along the curve.
#[derive(Clone, Copy, Debug)]
pub enum JacobianData<'a> {
    /// `A(m, l) = 0`: `∂m/∂l = −A_l / A_m`.
    APolynomial { a: &'a QPoly },
    /// `f(y, m) = 0`, `g = l − L(y, m) = 0`: `∂m/∂l = −g_l f_y / det ∂(f, g)/∂(y, m)`.
    Bordered { riley: &'a QPoly, longitude: &'a QPoly },
}

/// A point `(y, m, l)` on a character-variety component.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CurvePoint<R> {
    pub y: Complex<R>,
    pub m: Complex<R>,
    pub l: Complex<R>,
}

const DEGENERACY_TOL: f64 = 1e-10;

/// Evaluate `p`, binding its variables by name, with its absolute term scale.
fn eval_named<R: Real>(p: &QPoly, point: &CurvePoint<R>) -> Result<(Complex<R>, f64)> {
    let vals = p
        .vars()
        .iter()
        .map(|v| match v.as_str() {
            "y" => Ok(point.y),
            "m" => Ok(point.m),
            "l" => Ok(point.l),
            other => Err(Error::Structural(format!("unexpected variable {other}"))),
        })
        .collect::<Result<Vec<_>>>()?;
    let c = p.to_complex::<R>();
    Ok((c.eval(&vals), c.eval_scale(&vals)))
}

fn partial<R: Real>(p: &QPoly, var: &str, point: &CurvePoint<R>) -> Result<(Complex<R>, f64)> {
    match p.var_index(var) {
        Ok(i) => eval_named(&p.derivative(i), point),
        Err(_) => Ok((Complex::new(R::zero(), R::zero()), 0.0)),
    }
}

/// `∂u_γ/∂u_λ = p·(l/m)·(∂m/∂l) + q` at a regular point.
pub fn slope_factor<R: Real>(p: i64, q: i64, point: &CurvePoint<R>, jac: JacobianData<'_>) -> Result<Complex<R>> {
    if p.gcd(&q) != 1 {
        return Err(Error::Domain(format!("slope ({p}, {q}) is not primitive")));
    }
    let dm_dl = match jac {
        JacobianData::APolynomial { a } => {
            let (am, _) = partial(a, "m", point)?;
            let (al, _) = partial(a, "l", point)?;
            let scale = am.norm().to_f64() + al.norm().to_f64();
            if am.norm().to_f64() < DEGENERACY_TOL * scale {
                return Err(Error::NonGeneric(format!(
                    "∂A/∂m is degenerate (|A_m| = {:.3e}, scale {scale:.3e})",
                    am.norm().to_f64()
                )));
            }
            -al / am
        }
        JacobianData::Bordered { riley, longitude } => {
            let (fy, _) = partial(riley, "y", point)?;
            let (fm, _) = partial(riley, "m", point)?;
            // g = l − L(y, m): g_y = −L_y, g_m = −L_m, g_l = 1
            let (ly, _) = partial(longitude, "y", point)?;
            let (lm, _) = partial(longitude, "m", point)?;
            let (gy, gm) = (-ly, -lm);
            let det2 = fy * gm - fm * gy;
            // cancellation inside the determinant, not in the partials, signals a singular point
            let scale = (fy * gm).norm().to_f64() + (fm * gy).norm().to_f64();
            if det2.norm().to_f64() < DEGENERACY_TOL * scale {
                return Err(Error::NonGeneric(format!(
                    "(y, m)-Jacobian of (f, g) is degenerate (|det| = {:.3e}, scale {scale:.3e})",
                    det2.norm().to_f64()
                )));
            }
            -fy / det2
        }
    };
    let pr = R::from_i64(p);
    let qr = R::from_i64(q);
    Ok(point.l / point.m * dm_dl * pr + qr)
}

/// `Tor(M; 𝔤_ρ, γ) = (∂u_γ/∂u_λ) · Tor(M; 𝔤_ρ, λ)` for `γ = μᵖλ^q`.
pub fn slope_change<R: Real>(
    tor_lambda: &TorsionValue<R>,
    p: i64,
    q: i64,
    point: &CurvePoint<R>,
    jac: JacobianData<'_>,
) -> Result<TorsionValue<R>> {
    let factor = slope_factor(p, q, point, jac)?;
    Ok(TorsionValue {
        value: tor_lambda.value * factor,
        sign_fixed: tor_lambda.sign_fixed,
        t_power_ambiguity: None,
        warnings: tor_lambda.warnings.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;
    use crate::scalar::cplx;

    fn c(re: f64, im: f64) -> Complex<f64> {
        cplx(re, im)
    }

    fn tv(v: Complex<f64>) -> TorsionValue<f64> {
        TorsionValue { value: v, sign_fixed: true, t_power_ambiguity: None, warnings: vec![] }
    }

    #[test]
    fn longitude_slope_is_identity() {
        let a = parse_poly("l + l^-1 - m^2 - m^-2", &["m", "l"]).unwrap();
        let pt = CurvePoint { y: c(0.0, 0.0), m: c(1.2, 0.3), l: c(0.5, 0.1) };
        let t = slope_change(&tv(c(3.0, -1.0)), 0, 1, &pt, JacobianData::APolynomial { a: &a }).unwrap();
        assert_eq!(t.value, c(3.0, -1.0));
        assert!(slope_factor(2, 4, &pt, JacobianData::APolynomial { a: &a }).is_err());
    }

    #[test]
    fn bordered_agrees_with_eliminated_curve() {
        // curve y = m², l = y·m = m³: A(m, l) = l − m³, riley f = y − m², L = y·m
        let a = parse_poly("l - m^3", &["m", "l"]).unwrap();
        let f = parse_poly("y - m^2", &["y", "m"]).unwrap();
        let big_l = parse_poly("y*m", &["y", "m"]).unwrap();
        let m = c(0.8, -0.6);
        let pt = CurvePoint { y: m * m, m, l: m * m * m };
        for (p, q) in [(1, 0), (3, 1), (2, -5)] {
            let fa = slope_factor(p, q, &pt, JacobianData::APolynomial { a: &a }).unwrap();
            let fb = slope_factor(p, q, &pt, JacobianData::Bordered { riley: &f, longitude: &big_l }).unwrap();
            assert!((fa - fb).norm() < 1e-13);
            // u_l = 3 u_m, so ∂u_m/∂u_l = 1/3
            assert!((fa - c(p as f64 / 3.0 + q as f64, 0.0)).norm() < 1e-13);
        }
    }

    #[test]
    fn degenerate_derivative_is_flagged() {
        let a = parse_poly("l - 1", &["m", "l"]).unwrap();
        let pt = CurvePoint { y: c(0.0, 0.0), m: c(1.0, 0.0), l: c(1.0, 0.0) };
        assert!(matches!(
            slope_factor(1, 1, &pt, JacobianData::APolynomial { a: &a }),
            Err(Error::NonGeneric(_))
        ));
    }
}
