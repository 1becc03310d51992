use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::word::Word;

/// Element `Σ n_w · w` of the integral group ring of a free group.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct GroupRingElement {
    terms: BTreeMap<Word, i64>,
}

impl GroupRingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_word(Word::identity())
    }

    pub fn from_word(w: Word) -> Self {
        Self::from_terms([(w, 1)])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Word, i64)>) -> Self {
        let mut out = Self::zero();
        for (w, n) in terms {
            out.add_term(w, n);
        }
        out
    }

    pub fn add_term(&mut self, w: Word, n: i64) {
        if n == 0 {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(v) => {
                v.insert(n);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += n;
                if *o.get() == 0 {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, i64)> {
        self.terms.iter().map(|(w, n)| (w, *n))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &Word) -> i64 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    pub fn scale(&self, n: i64) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, c)| (w.clone(), c * n)))
    }

    /// Sum of coefficients (the augmentation map to ℤ).
    pub fn augmentation(&self) -> i64 {
        self.terms.values().sum()
    }

    /// Left multiplication by a word.
    pub fn left_mul_word(&self, u: &Word) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, n)| (u.mul(w), *n)))
    }

    pub fn right_mul_word(&self, u: &Word) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, n)| (w.mul(u), *n)))
    }
}

impl Add for &GroupRingElement {
    type Output = GroupRingElement;
    fn add(self, rhs: Self) -> GroupRingElement {
        let mut out = self.clone();
        for (w, n) in &rhs.terms {
            out.add_term(w.clone(), *n);
        }
        out
    }
}

impl Sub for &GroupRingElement {
    type Output = GroupRingElement;
    fn sub(self, rhs: Self) -> GroupRingElement {
        let mut out = self.clone();
        for (w, n) in &rhs.terms {
            out.add_term(w.clone(), -*n);
        }
        out
    }
}

impl Neg for &GroupRingElement {
    type Output = GroupRingElement;
    fn neg(self) -> GroupRingElement {
        self.scale(-1)
    }
}

impl Mul for &GroupRingElement {
    type Output = GroupRingElement;
    fn mul(self, rhs: Self) -> GroupRingElement {
        let mut out = GroupRingElement::zero();
        for (u, a) in &self.terms {
            for (v, b) in &rhs.terms {
                out.add_term(u.mul(v), a * b);
            }
        }
        out
    }
}

impl fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, n)) in self.terms.iter().enumerate() {
            let sign = if *n < 0 { "-" } else if i > 0 { "+" } else { "" };
            if i > 0 {
                write!(f, " {sign} ")?;
            } else {
                write!(f, "{sign}")?;
            }
            match n.abs() {
                1 => write!(f, "{w}")?,
                k => write!(f, "{k}*({w})")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupRingElement({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn zero_coefficients_are_pruned() {
        let a = GroupRingElement::from_terms([(w("g1"), 2), (w("g2"), 1)]);
        let b = GroupRingElement::from_terms([(w("g1"), 2)]);
        let d = &a - &b;
        assert_eq!(d.num_terms(), 1);
        assert_eq!(d.coeff(&w("g2")), 1);
        assert!((&a - &a).is_zero());
    }

    #[test]
    fn product_follows_concatenation() {
        let a = GroupRingElement::from_terms([(w("g1"), 1), (Word::identity(), -1)]);
        let b = GroupRingElement::from_terms([(w("g1^-1"), 1), (Word::identity(), 1)]);
        // (g1 - 1)(g1^-1 + 1) = 1 + g1 - g1^-1 - 1 = g1 - g1^-1
        let p = &a * &b;
        assert_eq!(p, GroupRingElement::from_terms([(w("g1"), 1), (w("g1^-1"), -1)]));
        assert_eq!(p.augmentation(), 0);
    }
}
