use std::path::Path;
use std::sync::Arc;

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;

use crate::adjoint::ParametricRep;
use crate::error::{Error, Result};
use crate::fox::{Presentation, Word};
use crate::poly::{parse_poly, univariate_roots, QPoly};
use crate::scalar::{DoubleDouble, Real};

const BUILTIN: [(&str, &str); 3] = [
    ("4_1", include_str!("../../presets/4_1.toml")),
    ("5_2", include_str!("../../presets/5_2.toml")),
    ("7_4", include_str!("../../presets/7_4.toml")),
];

/// Which defining equations differentiate `m` along the component for slope changes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum SlopeJacobian {
    /// `A(m, l) = 0`.
    Apoly,
    /// `f(y, m) = 0`, `l = L(y, m)`.
    #[default]
    Bordered,
}

/// Closed-form longitude torsion `num / den` in `(y, m)`, as printed for regression.
#[derive(Clone, Debug)]
pub struct ClosedTorsion {
    pub num: QPoly,
    pub den: QPoly,
}

impl ClosedTorsion {
    pub fn eval<R: Real>(&self, y: Complex<R>, m: Complex<R>) -> Complex<R> {
        self.num.to_complex::<R>().eval(&[y, m]) / self.den.to_complex::<R>().eval(&[y, m])
    }
}

/// One irreducible component of the character variety.
#[derive(Clone, Debug)]
pub struct PresetComponent {
    pub riley: QPoly,
    pub longitude: QPoly,
    /// The eigenvalue of `ρ(λ)` on the meridian eigenvector is `longitude_sign · L(y, m)`.
    pub longitude_sign: i32,
    pub apoly: Option<QPoly>,
    pub tor_lambda: Option<ClosedTorsion>,
    pub slope_jacobian: SlopeJacobian,
}

#[derive(Clone, Debug)]
pub struct KnotPreset {
    pub name: String,
    pub presentation: Arc<Presentation>,
    pub longitude_word: Word,
    pub components: Vec<PresetComponent>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PresetFile {
    name: String,
    generators: u32,
    relators: Vec<String>,
    #[serde(default)]
    abelianization: Option<Vec<i64>>,
    longitude: String,
    components: Vec<ComponentFile>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ComponentFile {
    riley: String,
    longitude_expr: String,
    #[serde(default = "one")]
    longitude_sign: i32,
    apoly: Option<String>,
    tor_lambda: Option<TorsionFile>,
    #[serde(default)]
    slope_jacobian: SlopeJacobian,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TorsionFile {
    num: String,
    den: Option<String>,
}

fn one() -> i32 {
    1
}

const YM: [&str; 2] = ["y", "m"];
const ML: [&str; 2] = ["m", "l"];

impl KnotPreset {
    /// Names of the embedded presets.
    pub fn builtin_names() -> impl Iterator<Item = &'static str> {
        BUILTIN.iter().map(|(n, _)| *n)
    }

    pub fn builtin(name: &str) -> Result<Self> {
        let (_, src) = BUILTIN
            .iter()
            .find(|(n, _)| *n == name)
            .ok_or_else(|| Error::Domain(format!("unknown preset {name:?}")))?;
        Self::from_toml(src)
    }

    /// A built-in name, or else a path to a preset file.
    pub fn load(name_or_path: &str) -> Result<Self> {
        if BUILTIN.iter().any(|(n, _)| *n == name_or_path) {
            return Self::builtin(name_or_path);
        }
        let src = std::fs::read_to_string(Path::new(name_or_path))?;
        Self::from_toml(&src)
    }

    /// Parse and validate against word-evaluated representations.
    pub fn from_toml(src: &str) -> Result<Self> {
        let preset = Self::parse(src)?;
        preset.validate()?;
        Ok(preset)
    }

    /// Parse without the numeric cross-validation.
    pub fn parse(src: &str) -> Result<Self> {
        let file: PresetFile = toml::from_str(src).map_err(|e| {
            let offset = e.span().map_or(0, |s| s.start);
            Error::Parse { offset, message: e.message().to_string() }
        })?;
        let relators = file.relators.iter().map(|r| r.parse()).collect::<Result<Vec<Word>>>()?;
        let ab = file.abelianization.unwrap_or_else(|| vec![1; file.generators as usize]);
        let presentation = Arc::new(Presentation::new(file.generators, relators, ab)?);
        if presentation.generator_count() != 2 {
            return Err(Error::Structural("presets use two-generator presentations".into()));
        }
        let longitude_word: Word = file.longitude.parse()?;
        if presentation.abelianization_weight(&longitude_word) != 0 {
            return Err(Error::Structural("the longitude word is not null-homologous".into()));
        }
        if file.components.is_empty() {
            return Err(Error::Structural("a preset needs at least one component".into()));
        }
        let components = file
            .components
            .into_iter()
            .map(|c| {
                if c.longitude_sign.abs() != 1 {
                    return Err(Error::Structural("longitude_sign must be ±1".into()));
                }
                let apoly = c.apoly.as_deref().map(|s| parse_poly(s, &ML)).transpose()?;
                if c.slope_jacobian == SlopeJacobian::Apoly && apoly.is_none() {
                    return Err(Error::Structural("slope_jacobian = \"apoly\" needs an apoly".into()));
                }
                let tor_lambda = c
                    .tor_lambda
                    .map(|t| -> Result<ClosedTorsion> {
                        Ok(ClosedTorsion {
                            num: parse_poly(&t.num, &YM)?,
                            den: parse_poly(t.den.as_deref().unwrap_or("1"), &YM)?,
                        })
                    })
                    .transpose()?;
                Ok(PresetComponent {
                    riley: parse_poly(&c.riley, &YM)?,
                    longitude: parse_poly(&c.longitude_expr, &YM)?,
                    longitude_sign: c.longitude_sign,
                    apoly,
                    tor_lambda,
                    slope_jacobian: c.slope_jacobian,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(KnotPreset { name: file.name, presentation, longitude_word, components })
    }

    pub fn parametric(&self, component: usize) -> ParametricRep {
        let c = &self.components[component];
        ParametricRep {
            presentation: self.presentation.clone(),
            riley: c.riley.clone(),
            longitude: c.longitude.clone(),
            longitude_word: self.longitude_word.clone(),
            longitude_sign: c.longitude_sign,
        }
    }

    /// Random points `(y, m)` on a component, with `|m|` in `[0.7, 1.4]`.
    pub fn sample_points<R: Real>(&self, component: usize, count: usize, seed: u64) -> Result<Vec<(Complex<R>, Complex<R>)>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let riley = &self.components[component].riley;
        let mut out = Vec::with_capacity(count);
        while out.len() < count {
            let r = rng.gen_range(0.7..1.4);
            let th = rng.gen_range(0.2..3.0);
            let m = Complex::new(R::from_f64(r * f64::cos(th)), R::from_f64(r * f64::sin(th)));
            let fy = riley.eval_partial(&[(1, m)]);
            let roots = univariate_roots(&fy)?;
            let k = rng.gen_range(0..roots.roots.len());
            let y = roots.roots[k];
            if y.norm().to_f64() > 1e-3 {
                out.push((y, m));
            }
        }
        Ok(out)
    }

    /// Cross-check the closed forms against word evaluation at sampled points:
    /// relators map to the identity, the longitude word commutes with the meridian,
    /// and its eigenvalue is `longitude_sign · L(y, m)`.
    pub fn validate(&self) -> Result<()> {
        for (i, _) in self.components.iter().enumerate() {
            let rep = self.parametric(i);
            for (y, m) in self.sample_points::<DoubleDouble>(i, 20, 0x5eed + i as u64)? {
                let point = rep.at(y, m, 1e-20)?;
                let res = point.relator_residual();
                if res > 1e-8 {
                    return Err(Error::Structural(format!(
                        "preset {}: relators are not satisfied on component {} (residual {res:.3e})",
                        self.name,
                        i + 1
                    )));
                }
                let from_word = rep.longitude_from_word(&point, m)?;
                let closed = rep.longitude_value(y, m);
                let err = (from_word - closed).norm().to_f64() / closed.norm().to_f64().max(1e-300);
                if err > 1e-8 {
                    return Err(Error::Structural(format!(
                        "preset {}: longitude expression disagrees with ρ(λ) on component {} (relative error {err:.3e})",
                        self.name,
                        i + 1
                    )));
                }
                let lam = point.eval_word(&self.longitude_word);
                let g1 = point.images()[0];
                let comm = (g1 * lam).distance(&(lam * g1)) / (g1.max_abs() * lam.max_abs());
                if comm > 1e-8 {
                    return Err(Error::Structural(format!(
                        "preset {}: the longitude word does not commute with g1 (defect {comm:.3e})",
                        self.name
                    )));
                }
            }
            if let Some(a) = &self.components[i].apoly {
                self.check_apoly(i, a)?;
            }
        }
        Ok(())
    }

    /// Every root `l` of `A(m, ·)` must be `L(y, m)` for a root `y` of `f(·, m)`,
    /// i.e. `A` divides the eliminant of `(f, l − L)` up to a monomial.
    fn check_apoly(&self, i: usize, a: &QPoly) -> Result<()> {
        let c = &self.components[i];
        for (_, m) in self.sample_points::<f64>(i, 5, 0xa901 + i as u64)? {
            let ls: Vec<Complex<f64>> = univariate_roots(&c.riley.eval_partial(&[(1, m)]))?
                .roots
                .into_iter()
                .map(|y| c.longitude.to_complex::<f64>().eval(&[y, m]))
                .collect();
            for l in univariate_roots(&a.eval_partial(&[(0, m)]))?.roots {
                let gap = ls.iter().map(|v| (v - l).norm()).fold(f64::INFINITY, f64::min);
                if gap > 1e-6 * (1.0 + l.norm()) {
                    return Err(Error::Structural(format!(
                        "preset {}: A-polynomial of component {} has a root l = {l:.6} at m = {m:.6} \
                         not produced by the longitude expression",
                        self.name,
                        i + 1
                    )));
                }
            }
        }
        Ok(())
    }
}
