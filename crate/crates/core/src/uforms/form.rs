use alloc::collections::btree_map::Entry;
use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::word::{reduced_pow, Word};
use crate::algebra::{same_algebra, AlgElement, AlgebraRef};
use crate::error::{Error, Result};
use crate::exactmath::{Rational, Scalar};

/// Element of the universal DGA `Ω^u_•(A)` with coefficients in `S`.
///
/// A sparse sum over basis words; a form may mix degrees.
#[derive(Clone, Debug)]
pub struct UForm<S = Rational> {
    algebra: AlgebraRef,
    terms: BTreeMap<Word, S>,
}

impl<S: Scalar> PartialEq for UForm<S> {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && same_algebra(&self.algebra, &other.algebra)
    }
}

impl<S: Scalar> UForm<S> {
    pub fn zero(algebra: &AlgebraRef) -> Self {
        UForm { algebra: algebra.clone(), terms: BTreeMap::new() }
    }

    pub fn one(algebra: &AlgebraRef) -> Self {
        Self::word(algebra, Word::element(0), S::one())
    }

    pub fn word(algebra: &AlgebraRef, w: Word, c: S) -> Self {
        let mut f = Self::zero(algebra);
        f.add_term(w, c);
        f
    }

    /// `c · e_{i0} de_{i1} ⋯ de_{in}`; panics on out-of-range letters.
    pub fn from_letters(algebra: &AlgebraRef, letters: &[usize], c: S) -> Self {
        let w = Word::from_letters(algebra.dim(), letters).expect("letters out of range");
        Self::word(algebra, w, c)
    }

    pub fn from_terms(algebra: &AlgebraRef, terms: impl IntoIterator<Item = (Word, S)>) -> Self {
        let mut f = Self::zero(algebra);
        for (w, c) in terms {
            f.add_term(w, c);
        }
        f
    }

    /// Degree-0 form of an algebra element.
    pub fn from_element(algebra: &AlgebraRef, a: &AlgElement<S>) -> Self {
        Self::from_terms(algebra, a.support().map(|(i, c)| (Word::element(i), c.clone())))
    }

    pub fn algebra(&self) -> &AlgebraRef {
        &self.algebra
    }

    pub fn terms(&self) -> &BTreeMap<Word, S> {
        &self.terms
    }

    pub fn coeff(&self, w: &Word) -> Option<&S> {
        self.terms.get(w)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, w: Word, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                e.get_mut().add_assign_ref(&c);
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Degrees carrying nonzero terms, ascending.
    pub fn degrees(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self.terms.keys().map(|w| w.degree).collect();
        out.dedup();
        out
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().next_back().map(|w| w.degree)
    }

    /// Homogeneous degree, or `None` when zero or of mixed degree.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        match self.degrees().as_slice() {
            [d] => Some(*d),
            _ => None,
        }
    }

    pub fn component(&self, degree: usize) -> Self {
        UForm {
            algebra: self.algebra.clone(),
            terms: self.terms.range(Word::new(degree, 0)..Word::new(degree + 1, 0)).map(|(w, c)| (*w, c.clone())).collect(),
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if same_algebra(&self.algebra, &other.algebra) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(*w, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(*w, c.neg_ref());
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|_, c| c.neg_ref())
    }

    pub fn scale(&self, r: &Rational) -> Self {
        self.map_coeffs(|_, c| c.scale(r))
    }

    pub fn mul_scalar(&self, s: &S) -> Self {
        self.map_coeffs(|_, c| c.mul_ref(s))
    }

    /// Applies `f` to every coefficient, dropping zeros.
    pub fn map_coeffs<T: Scalar>(&self, mut f: impl FnMut(&Word, &S) -> T) -> UForm<T> {
        UForm {
            algebra: self.algebra.clone(),
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (*w, f(w, c)))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    /// Negates odd-degree components.
    pub fn parity(&self) -> Self {
        self.map_coeffs(|w, c| if w.degree % 2 == 1 { c.neg_ref() } else { c.clone() })
    }

    /// `d(e_{i0} de_{i1} ⋯) = de_{i0} de_{i1} ⋯`, with `d1 = 0`; coefficients
    /// are constants.
    pub fn differential(&self) -> Self {
        let m = self.algebra.dim();
        let mut out = Self::zero(&self.algebra);
        for (w, c) in &self.terms {
            let head = w.head(m);
            if head == 0 {
                continue;
            }
            let index = (head - 1) * reduced_pow(m, w.degree) + w.tail_index(m);
            out.terms.insert(Word::new(w.degree + 1, index), c.clone());
        }
        out
    }

    /// `self · e_b` for a basis element `e_b`.
    pub fn mul_basis_right(&self, b: usize) -> Self {
        if b == 0 {
            return self.clone();
        }
        let table = &self.algebra.cache;
        let mut out = Self::zero(&self.algebra);
        for (w, c) in &self.terms {
            for (idx, r) in table.right_mul(&self.algebra, w.degree, w.index, b).entries() {
                out.add_term(Word::new(w.degree, *idx), c.scale(r));
            }
        }
        out
    }

    /// Graded product, associative with unit `1`. Fails if the product would
    /// exceed the degree cap.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let alg = &self.algebra;
        let m = alg.dim();
        let mut out = Self::zero(alg);
        if self.is_zero() || other.is_zero() {
            return Ok(out);
        }
        let top = self.max_degree().unwrap_or(0) + other.max_degree().unwrap_or(0);
        alg.check_degree(top)?;
        for (v, cv) in &other.terms {
            let head = v.head(m);
            let shift = reduced_pow(m, v.degree);
            let tail = v.tail_index(m);
            for (u, cu) in &self.terms {
                let coeff = cu.mul_ref(cv);
                if coeff.is_zero() {
                    continue;
                }
                if head == 0 {
                    out.add_term(Word::new(u.degree + v.degree, u.index * shift + tail), coeff);
                    continue;
                }
                for (idx, r) in alg.cache.right_mul(alg, u.degree, u.index, head).entries() {
                    out.add_term(Word::new(u.degree + v.degree, idx * shift + tail), coeff.scale(r));
                }
            }
        }
        Ok(out)
    }

    /// Graded commutator `uv - (-1)^{|u||v|} vu` of homogeneous forms.
    pub fn graded_commutator(&self, other: &Self) -> Result<Self> {
        let uv = self.mul(other)?;
        let vu = other.mul(self)?;
        let odd = |f: &Self| f.homogeneous_degree().unwrap_or(0) % 2 == 1;
        Ok(if odd(self) && odd(other) { uv.add(&vu) } else { uv.sub(&vu) })
    }
}

impl UForm<Rational> {
    /// Lifts to a form with polynomial (or other) coefficients.
    pub fn lift<T: Scalar>(&self) -> UForm<T> {
        self.map_coeffs(|_, c| T::from_rational(c.clone()))
    }
}
