use alloc::vec::Vec;

use super::ab::{project_ab, AbClass};
use super::form::UForm;
use super::word::Word;
use crate::algebra::{same_algebra, AlgebraHom};
use crate::error::{Error, Result};
use crate::exactmath::{Rational, Scalar};

impl AlgebraHom {
    /// The DGA map `ψ^u(a₀ da₁ ⋯ da_n) = ψ(a₀) dψ(a₁) ⋯ dψ(a_n)`.
    pub fn apply_form<S: Scalar>(&self, w: &UForm<S>) -> Result<UForm<S>> {
        if !same_algebra(w.algebra(), self.source()) {
            return Err(Error::AlgebraMismatch);
        }
        let src = self.source().dim();
        let tgt = self.target();
        let r = tgt.dim() - 1;
        let mut out = UForm::zero(tgt);
        for (word, c) in w.terms() {
            let letters = word.letters(src);
            // Expand multilinearly: the head keeps every component, the
            // d-letters drop the unit component since d1 = 0.
            let mut partial: Vec<(usize, Rational)> =
                self.image(letters[0]).entries().iter().map(|(k, a)| (*k, a.clone())).collect();
            for &l in &letters[1..] {
                let mut next = Vec::new();
                for (idx, a) in &partial {
                    for (k, b) in self.image(l).entries() {
                        if *k > 0 {
                            next.push((idx * r + k - 1, a * b));
                        }
                    }
                }
                partial = next;
            }
            for (idx, a) in partial {
                out.add_term(Word::new(word.degree, idx), c.scale(&a));
            }
        }
        Ok(out)
    }
}

impl AlgebraHom {
    /// The induced map on `Ω_ab`; well defined because `ψ^u` preserves
    /// graded commutators.
    pub fn apply_class<S: Scalar>(&self, c: &AbClass<S>) -> Result<AbClass<S>> {
        if !same_algebra(c.algebra(), self.source()) {
            return Err(Error::AlgebraMismatch);
        }
        project_ab(&self.apply_form(&c.lift()?)?)
    }
}

/// The unique DGA extension of `psi` to universal forms.
pub fn extend_hom(psi: &AlgebraHom) -> impl Fn(&UForm) -> Result<UForm> + '_ {
    move |w| psi.apply_form(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{make_matrix_algebra, make_product, make_truncated_poly};
    use crate::exactmath::{rat, RatMatrix};

    #[test]
    fn truncation_map_examples() {
        let d3 = make_truncated_poly(3).unwrap();
        let d2 = make_truncated_poly(2).unwrap();
        let m = RatMatrix::from_rows(&[vec![rat(1), rat(0), rat(0)], vec![rat(0), rat(1), rat(0)]]).unwrap();
        let psi = AlgebraHom::new(d3.clone(), d2.clone(), &m).unwrap();
        let x_dx = UForm::from_letters(&d3, &[1, 1], rat(1));
        assert_eq!(psi.apply_form(&x_dx).unwrap(), UForm::from_letters(&d2, &[1, 1], rat(1)));
        let x2_dx2 = UForm::from_letters(&d3, &[2, 2], rat(1));
        assert!(psi.apply_form(&x2_dx2).unwrap().is_zero());
    }

    #[test]
    fn projection_kills_positive_degrees() {
        let q = make_matrix_algebra(1).unwrap();
        let qq = make_product(&q, &q).unwrap();
        let pr = AlgebraHom::new(qq.clone(), q.clone(), &RatMatrix::from_rows(&[vec![rat(1), rat(1)]]).unwrap()).unwrap();
        let w = UForm::from_letters(&qq, &[1, 1, 1], rat(1)).add(&UForm::from_letters(&qq, &[0], rat(2)));
        assert_eq!(extend_hom(&pr)(&w).unwrap(), UForm::from_letters(&q, &[0], rat(2)));
    }
}
