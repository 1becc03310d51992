use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Freely reduced word in generators `g1, g2, ...`.
///
/// Letters are stored as nonzero integers: `k` is `g_k`, `-k` is `g_k⁻¹`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(Vec<i32>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    /// The generator `g_index` (1-based).
    pub fn generator(index: u32) -> Self {
        assert!(index > 0, "generator indices are 1-based");
        Word(vec![index as i32])
    }

    /// Build from signed letters, reducing freely.
    pub fn from_letters(letters: impl IntoIterator<Item = i32>) -> Self {
        let mut out: Vec<i32> = Vec::new();
        for x in letters {
            assert!(x != 0, "letter 0 is not a generator");
            if out.last() == Some(&-x) {
                out.pop();
            } else {
                out.push(x);
            }
        }
        Word(out)
    }

    pub fn letters(&self) -> &[i32] {
        &self.0
    }

    /// Letters as `(generator, exponent)` pairs with exponent `±1`.
    pub fn syllables(&self) -> impl Iterator<Item = (u32, i8)> + '_ {
        self.0.iter().map(|&x| (x.unsigned_abs(), if x > 0 { 1 } else { -1 }))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_generator(&self) -> u32 {
        self.0.iter().map(|x| x.unsigned_abs()).max().unwrap_or(0)
    }

    pub fn inverse(&self) -> Self {
        Word(self.0.iter().rev().map(|x| -x).collect())
    }

    pub fn pow(&self, n: i32) -> Self {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        (0..n.unsigned_abs()).fold(Word::identity(), |acc, _| acc.mul(&base))
    }

    /// Concatenation followed by free reduction.
    pub fn mul(&self, other: &Word) -> Word {
        let mut out = self.0.clone();
        for &x in &other.0 {
            if out.last() == Some(&-x) {
                out.pop();
            } else {
                out.push(x);
            }
        }
        Word(out)
    }

    pub fn exponent_sum(&self, generator: u32) -> i32 {
        self.0
            .iter()
            .filter(|x| x.unsigned_abs() == generator)
            .map(|x| x.signum())
            .sum()
    }

    /// Replace each generator `g_k` by `images[k-1]`.
    pub fn substitute(&self, images: &[Word]) -> Result<Word> {
        let mut out = Word::identity();
        for &x in &self.0 {
            let img = images.get(x.unsigned_abs() as usize - 1).ok_or_else(|| {
                Error::Structural(format!("no image given for generator g{}", x.unsigned_abs()))
            })?;
            out = out.mul(&if x > 0 { img.clone() } else { img.inverse() });
        }
        Ok(out)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, &x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            if x > 0 {
                write!(f, "g{x}")?;
            } else {
                write!(f, "g{}^-1", -x)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

/// Whitespace-separated tokens `g<k>` or `g<k>^<e>` with integer `e`; `1` is the identity.
impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut letters = Vec::new();
        let mut offset = 0;
        for tok in s.split_whitespace() {
            let at = s[offset..].find(tok).map_or(offset, |i| offset + i);
            offset = at + tok.len();
            if tok == "1" {
                continue;
            }
            let body = tok
                .strip_prefix('g')
                .ok_or_else(|| Error::parse(at, format!("expected a generator, found `{tok}`")))?;
            let (gen, exp) = match body.split_once('^') {
                Some((g, e)) => (g, e),
                None => (body, "1"),
            };
            let gen: u32 = gen
                .parse()
                .ok()
                .filter(|&g| g > 0)
                .ok_or_else(|| Error::parse(at, format!("bad generator index in `{tok}`")))?;
            let exp: i32 = exp
                .trim_start_matches('(')
                .trim_end_matches(')')
                .parse()
                .map_err(|_| Error::parse(at, format!("bad exponent in `{tok}`")))?;
            let letter = if exp < 0 { -(gen as i32) } else { gen as i32 };
            letters.extend(std::iter::repeat_n(letter, exp.unsigned_abs() as usize));
        }
        Ok(Word::from_letters(letters))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn cancellation() {
        assert!(w("g1").mul(&w("g1^-1")).is_identity());
        assert_eq!(w("g2 g1").mul(&w("g1^-1 g2")), w("g2^2"));
        assert_eq!(w("g2^2").letters(), &[2, 2]);
    }

    #[test]
    fn parse_and_display_roundtrip() {
        let x = w("g1^-1 g2 g1 g2^-1 g1");
        assert_eq!(x.to_string(), "g1^-1 g2 g1 g2^-1 g1");
        assert_eq!(w(&x.to_string()), x);
        assert_eq!(w("1"), Word::identity());
        assert_eq!(Word::identity().to_string(), "1");
        assert!("g0".parse::<Word>().is_err());
        assert!("h1".parse::<Word>().is_err());
        assert!("g1^x".parse::<Word>().is_err());
    }

    #[test]
    fn inverse_and_powers() {
        let x = w("g1 g2^-1 g1");
        assert!(x.mul(&x.inverse()).is_identity());
        assert_eq!(x.pow(-2), x.inverse().mul(&x.inverse()));
        assert_eq!(x.exponent_sum(1), 2);
        assert_eq!(x.exponent_sum(2), -1);
    }

    #[test]
    fn substitution() {
        let g3 = w("g2 g1 g2^-1");
        let x = w("g3^-1 g2").substitute(&[w("g1"), w("g2"), g3]).unwrap();
        assert_eq!(x, w("g2 g1^-1"));
        assert!(w("g4").substitute(&[w("g1")]).is_err());
    }
}
