use super::group_ring::GroupRingElement;
use super::word::Word;
use crate::error::{Error, Result};

/// Fox derivative `∂w/∂g_j` in a free group on `generator_count` generators.
///
/// Scanning `w = x_1 ⋯ x_k` left to right with prefix `p`, a letter `g_j`
/// contributes `+p` and a letter `g_j⁻¹` contributes `−p·g_j⁻¹`.
pub fn fox_derivative(w: &Word, j: u32, generator_count: u32) -> Result<GroupRingElement> {
    if j == 0 || j > generator_count {
        return Err(Error::Structural(format!(
            "generator index {j} out of range 1..={generator_count}"
        )));
    }
    let mut out = GroupRingElement::zero();
    let mut prefix = Word::identity();
    for &x in w.letters() {
        let letter = Word::from_letters([x]);
        if x == j as i32 {
            out.add_term(prefix.clone(), 1);
        } else if x == -(j as i32) {
            out.add_term(prefix.mul(&letter), -1);
        }
        prefix = prefix.mul(&letter);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn e(terms: &[(&str, i64)]) -> GroupRingElement {
        GroupRingElement::from_terms(terms.iter().map(|(s, n)| (w(s), *n)))
    }

    #[test]
    fn axioms() {
        assert_eq!(fox_derivative(&w("g1"), 1, 2).unwrap(), GroupRingElement::one());
        assert!(fox_derivative(&w("g2"), 1, 2).unwrap().is_zero());
        assert_eq!(fox_derivative(&w("g1^-1"), 1, 2).unwrap(), e(&[("g1^-1", -1)]));
        assert!(fox_derivative(&w("g1"), 3, 2).is_err());
        assert!(fox_derivative(&w("g1"), 0, 2).is_err());
    }

    #[test]
    fn figure_eight_relator_derivative() {
        let a = w("g1^-1 g2 g1 g2^-1 g1");
        let b = w("g2 g1^-1 g2 g1 g2^-1");
        let r = a.mul(&b.inverse());
        let d = fox_derivative(&r, 1, 2).unwrap();
        // difference form A − B of the relator
        let diff = &fox_derivative(&a, 1, 2).unwrap() - &fox_derivative(&b, 1, 2).unwrap();
        let printed = e(&[
            ("g1^-1", -1),
            ("g1^-1 g2", 1),
            ("g1^-1 g2 g1 g2^-1", 1),
            ("g2 g1^-1", 1),
            ("g2 g1^-1 g2", -1),
        ]);
        assert_eq!(diff, printed);
        // word form A·B⁻¹: ∂(A B⁻¹) = ∂A − A B⁻¹ ∂B
        let ab = &fox_derivative(&a, 1, 2).unwrap()
            - &fox_derivative(&b, 1, 2).unwrap().left_mul_word(&r);
        assert_eq!(d, ab);
    }

    #[test]
    fn fundamental_identity_small() {
        let x = w("g1 g2^-1 g1^-1 g2 g2");
        let mut lhs = GroupRingElement::zero();
        for j in 1..=2 {
            let gj = e(&[(&format!("g{j}"), 1), ("1", -1)]);
            lhs = &lhs + &(&fox_derivative(&x, j, 2).unwrap() * &gj);
        }
        assert_eq!(lhs, e(&[(&x.to_string(), 1), ("1", -1)]));
    }
}
