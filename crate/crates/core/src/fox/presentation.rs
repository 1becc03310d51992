use serde::{Deserialize, Serialize};

use super::calculus::fox_derivative;
use super::group_ring::GroupRingElement;
use super::word::Word;
use crate::error::{Error, Result};

/// Deficiency-one presentation `⟨g_1..g_n | r_1..r_{n-1}⟩` with an abelianization weight per generator.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PresentationSpec", into = "PresentationSpec")]
pub struct Presentation {
    generator_count: u32,
    relators: Vec<Word>,
    abelianization: Vec<i64>,
}

impl Presentation {
    pub fn new(generator_count: u32, relators: Vec<Word>, abelianization: Vec<i64>) -> Result<Self> {
        if generator_count < 1 {
            return Err(Error::Structural("a presentation needs at least one generator".into()));
        }
        if relators.len() + 1 != generator_count as usize {
            return Err(Error::Structural(format!(
                "deficiency must be 1: {} generators but {} relators",
                generator_count,
                relators.len()
            )));
        }
        if abelianization.len() != generator_count as usize {
            return Err(Error::Structural(format!(
                "abelianization has {} weights for {} generators",
                abelianization.len(),
                generator_count
            )));
        }
        for (i, r) in relators.iter().enumerate() {
            if r.is_identity() {
                return Err(Error::Structural(format!("relator {} is trivial", i + 1)));
            }
            if r.max_generator() > generator_count {
                return Err(Error::Structural(format!(
                    "relator {} uses g{} but only {} generators exist",
                    i + 1,
                    r.max_generator(),
                    generator_count
                )));
            }
            let weighted: i64 = (1..=generator_count)
                .map(|g| r.exponent_sum(g) as i64 * abelianization[g as usize - 1])
                .sum();
            if weighted != 0 {
                return Err(Error::Structural(format!(
                    "relator {} has nonzero abelianization weight {weighted}",
                    i + 1
                )));
            }
        }
        Ok(Presentation { generator_count, relators, abelianization })
    }

    /// Presentation where every generator is a meridian (weight 1).
    pub fn wirtinger(generator_count: u32, relators: Vec<Word>) -> Result<Self> {
        Self::new(generator_count, relators, vec![1; generator_count as usize])
    }

    pub fn generator_count(&self) -> u32 {
        self.generator_count
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn abelianization(&self) -> &[i64] {
        &self.abelianization
    }

    /// Image of a word under the abelianization `π₁ → ℤ`.
    pub fn abelianization_weight(&self, w: &Word) -> i64 {
        w.syllables()
            .map(|(g, e)| self.abelianization.get(g as usize - 1).copied().unwrap_or(0) * e as i64)
            .sum()
    }

    /// Fox Jacobian: entry `(i, j)` is `∂r_i/∂g_j`.
    pub fn fox_jacobian(&self) -> Vec<Vec<GroupRingElement>> {
        self.relators
            .iter()
            .map(|r| {
                (1..=self.generator_count)
                    .map(|j| fox_derivative(r, j, self.generator_count).expect("index in range"))
                    .collect()
            })
            .collect()
    }
}

#[derive(Serialize, Deserialize)]
struct PresentationSpec {
    generators: u32,
    relators: Vec<String>,
    #[serde(default)]
    abelianization: Option<Vec<i64>>,
}

impl TryFrom<PresentationSpec> for Presentation {
    type Error = Error;
    fn try_from(s: PresentationSpec) -> Result<Self> {
        let relators = s.relators.iter().map(|r| r.parse()).collect::<Result<Vec<Word>>>()?;
        let ab = s.abelianization.unwrap_or_else(|| vec![1; s.generators as usize]);
        Presentation::new(s.generators, relators, ab)
    }
}

impl From<Presentation> for PresentationSpec {
    fn from(p: Presentation) -> Self {
        PresentationSpec {
            generators: p.generator_count,
            relators: p.relators.iter().map(Word::to_string).collect(),
            abelianization: Some(p.abelianization),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn figure_eight() -> Presentation {
        let a = w("g1^-1 g2 g1 g2^-1 g1");
        let b = w("g2 g1^-1 g2 g1 g2^-1");
        Presentation::wirtinger(2, vec![a.mul(&b.inverse())]).unwrap()
    }

    #[test]
    fn deficiency_is_enforced() {
        assert!(Presentation::wirtinger(2, vec![]).is_err());
        assert!(Presentation::wirtinger(2, vec![w("g1 g2^-1"), w("g2 g1^-1")]).is_err());
        assert!(Presentation::wirtinger(2, vec![w("g1 g3 g1^-1 g2^-1")]).is_err());
        assert!(Presentation::wirtinger(2, vec![w("g1 g1")]).is_err());
        assert!(!figure_eight().relators()[0].is_empty());
    }

    #[test]
    fn weights_are_additive() {
        let p = figure_eight();
        assert_eq!(p.abelianization_weight(&Word::identity()), 0);
        assert_eq!(p.abelianization_weight(&w("g1 g2")), 2);
        assert_eq!(p.abelianization_weight(&w("g1^-1 g2^-1 g2^-1")), -3);
    }

    #[test]
    fn serde_roundtrip() {
        let p = figure_eight();
        let s = toml::to_string(&p).unwrap();
        let q: Presentation = toml::from_str(&s).unwrap();
        assert_eq!(p, q);
    }
}
