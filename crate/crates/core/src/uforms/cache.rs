use alloc::borrow::Cow;
use alloc::boxed::Box;
use alloc::vec::Vec;

use once_cell::race::OnceBox;

use super::ab::{AbProjection, DescendedDifferential};
use super::word::dimension;
use crate::algebra::Algebra;
use crate::exactmath::SparseVec;

/// Per-algebra memo of everything that depends only on the structure
/// constants: right multiplication by basis elements, abelianization
/// projections and the descended differentials. Each entry is written once.
pub(crate) struct FormCache {
    right_mul: Vec<OnceBox<Vec<SparseVec>>>,
    ab: Vec<OnceBox<AbProjection>>,
    dbar: Vec<OnceBox<DescendedDifferential>>,
}

impl FormCache {
    pub(crate) fn new(degree_cap: usize) -> Self {
        FormCache { right_mul: slots(degree_cap + 2), ab: slots(degree_cap + 1), dbar: slots(degree_cap) }
    }

    /// Coordinates of `w · e_b` for the degree-`degree` word with index
    /// `index`; the result has the same degree.
    pub(crate) fn right_mul<'a>(&'a self, alg: &Algebra, degree: usize, index: usize, b: usize) -> Cow<'a, SparseVec> {
        let m = alg.dim();
        if b == 0 {
            return Cow::Owned(SparseVec::unit(index));
        }
        match self.right_mul.get(degree) {
            Some(slot) => Cow::Borrowed(&slot.get_or_init(|| Box::new(self.build_table(alg, degree)))[index * (m - 1) + b - 1]),
            None => Cow::Owned(self.right_mul_word(alg, degree, index, b)),
        }
    }

    fn build_table(&self, alg: &Algebra, degree: usize) -> Vec<SparseVec> {
        let m = alg.dim();
        let mut out = Vec::with_capacity(dimension(m, degree) * (m - 1));
        for index in 0..dimension(m, degree) {
            for b in 1..m {
                out.push(self.right_mul_word(alg, degree, index, b));
            }
        }
        out
    }

    /// `(ω de_a) e_b = ω d(e_a e_b) - (ω e_a) de_b`, where `ω` is the word
    /// with the last letter removed.
    fn right_mul_word(&self, alg: &Algebra, degree: usize, index: usize, b: usize) -> SparseVec {
        let m = alg.dim();
        if degree == 0 {
            return alg.product(index, b).clone();
        }
        let r = m - 1;
        let (prefix, a) = (index / r, index % r + 1);
        let mut pairs = Vec::new();
        for (k, c) in alg.product(a, b).entries() {
            if *k > 0 {
                pairs.push((prefix * r + k - 1, c.clone()));
            }
        }
        for (j, c) in self.right_mul(alg, degree - 1, prefix, a).entries() {
            pairs.push((j * r + b - 1, -c));
        }
        SparseVec::from_pairs(pairs)
    }

    pub(crate) fn ab_slot(&self, degree: usize) -> Option<&OnceBox<AbProjection>> {
        self.ab.get(degree)
    }

    pub(crate) fn dbar_slot(&self, degree: usize) -> Option<&OnceBox<DescendedDifferential>> {
        self.dbar.get(degree)
    }
}

fn slots<T>(n: usize) -> Vec<OnceBox<T>> {
    (0..n).map(|_| OnceBox::new()).collect()
}
