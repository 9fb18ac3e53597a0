use alloc::format;
use alloc::vec::Vec;

use crate::algebra::{same_algebra, AlgElement, AlgebraHom, AlgebraRef};
use crate::error::{Error, Result};
use crate::exactmath::{Rational, Scalar};
use crate::uforms::{project_ab, AbClass, GradedForm, UForm};

/// Rectangular matrix whose entries are forms over a fixed algebra.
#[derive(Clone, Debug)]
pub struct Matrix<E> {
    algebra: AlgebraRef,
    rows: usize,
    cols: usize,
    entries: Vec<E>,
}

/// Matrix of universal forms.
pub type FormMatrix<S = Rational> = Matrix<UForm<S>>;

impl<E: GradedForm> PartialEq for Matrix<E> {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.entries == other.entries && same_algebra(&self.algebra, &other.algebra)
    }
}

impl<E: GradedForm> Matrix<E> {
    pub fn zeros(algebra: &AlgebraRef, rows: usize, cols: usize) -> Self {
        Matrix { algebra: algebra.clone(), rows, cols, entries: (0..rows * cols).map(|_| E::zero_in(algebra)).collect() }
    }

    pub fn identity(algebra: &AlgebraRef, n: usize) -> Self {
        let mut m = Self::zeros(algebra, n, n);
        for i in 0..n {
            m.set(i, i, E::one_in(algebra));
        }
        m
    }

    /// Row-major entries; every entry must live over `algebra`.
    pub fn from_entries(algebra: &AlgebraRef, rows: usize, cols: usize, entries: Vec<E>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!("{} entries for a {rows}×{cols} matrix", entries.len())));
        }
        if entries.iter().any(|e| !same_algebra(e.algebra(), algebra)) {
            return Err(Error::AlgebraMismatch);
        }
        Ok(Matrix { algebra: algebra.clone(), rows, cols, entries })
    }

    pub fn from_fn(algebra: &AlgebraRef, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> E) -> Self {
        let entries = (0..rows * cols).map(|k| f(k / cols.max(1), k % cols.max(1))).collect();
        Matrix { algebra: algebra.clone(), rows, cols, entries }
    }

    pub fn algebra(&self) -> &AlgebraRef {
        &self.algebra
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, e: E) {
        self.entries[i * self.cols + j] = e;
    }

    pub fn entries(&self) -> &[E] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(E::is_zero)
    }

    pub fn map<F: GradedForm>(&self, f: impl FnMut(&E) -> F) -> Matrix<F> {
        Matrix { algebra: self.algebra.clone(), rows: self.rows, cols: self.cols, entries: self.entries.iter().map(f).collect() }
    }

    pub fn try_map<F: GradedForm>(&self, f: impl FnMut(&E) -> Result<F>) -> Result<Matrix<F>> {
        let entries = self.entries.iter().map(f).collect::<Result<Vec<_>>>()?;
        Ok(Matrix { algebra: self.algebra.clone(), rows: self.rows, cols: self.cols, entries })
    }

    fn check_shape(&self, other: &Self) -> Result<()> {
        if !same_algebra(&self.algebra, &other.algebra) {
            return Err(Error::AlgebraMismatch);
        }
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}×{} against {}×{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        Ok(Matrix { entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a.add(b)).collect(), ..self.clone() })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        Ok(Matrix { entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a.sub(b)).collect(), ..self.clone() })
    }

    pub fn neg(&self) -> Self {
        self.map(E::neg)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        self.map(|e| e.scale(r))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if !same_algebra(&self.algebra, &other.algebra) {
            return Err(Error::AlgebraMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}×{} by {}×{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(&self.algebra, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.entries[idx] = out.entries[idx].add(&a.mul(b)?);
                }
            }
        }
        Ok(out)
    }

    /// `self^k` for square matrices, with `self^0` the identity.
    pub fn pow(&self, k: usize) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("power of a non-square matrix".into()));
        }
        let mut acc = Self::identity(&self.algebra, self.rows);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Entrywise differential.
    pub fn differential(&self) -> Self {
        self.map(E::differential)
    }

    /// Sum of the diagonal entries.
    pub fn trace(&self) -> Result<E> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("trace of a non-square matrix".into()));
        }
        Ok((0..self.rows).fold(E::zero_in(&self.algebra), |acc, i| acc.add(self.get(i, i))))
    }

    /// `diag(self, other)`.
    pub fn block_diag(&self, other: &Self) -> Result<Self> {
        if !same_algebra(&self.algebra, &other.algebra) {
            return Err(Error::AlgebraMismatch);
        }
        let (r, c) = (self.rows + other.rows, self.cols + other.cols);
        Ok(Matrix::from_fn(&self.algebra, r, c, |i, j| match (i < self.rows, j < self.cols) {
            (true, true) => self.get(i, j).clone(),
            (false, false) => other.get(i - self.rows, j - self.cols).clone(),
            _ => E::zero_in(&self.algebra),
        }))
    }

    /// Column `j` as an `rows × 1` matrix.
    pub fn column(&self, j: usize) -> Self {
        Matrix::from_fn(&self.algebra, self.rows, 1, |i, _| self.get(i, j).clone())
    }
}

impl<S: Scalar> Matrix<UForm<S>> {
    /// Matrix of degree-0 forms from a row-major list of algebra elements.
    pub fn from_elements(algebra: &AlgebraRef, rows: usize, cols: usize, elements: &[AlgElement<S>]) -> Result<Self> {
        if elements.iter().any(|a| a.dim() != algebra.dim()) {
            return Err(Error::AlgebraMismatch);
        }
        let entries = elements.iter().map(|a| UForm::from_element(algebra, a)).collect();
        Self::from_entries(algebra, rows, cols, entries)
    }

    /// `Some(d)` if every nonzero entry is homogeneous of degree `d`.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut degs = self.entries.iter().flat_map(|e| e.degrees());
        let d = degs.next()?;
        degs.all(|x| x == d).then_some(d)
    }

    /// Degree-0 entry as an algebra element.
    pub fn element(&self, i: usize, j: usize) -> AlgElement<S> {
        let mut coeffs = alloc::vec![S::zero(); self.algebra.dim()];
        for (w, c) in self.get(i, j).component(0).terms() {
            coeffs[w.index] = c.clone();
        }
        AlgElement::new(coeffs)
    }

    /// The class of the trace in `Ω_ab`.
    pub fn trace_ab(&self) -> Result<AbClass<S>> {
        project_ab(&self.trace()?)
    }

    /// Entrywise `ψ^u`.
    pub fn extend_scalars(&self, psi: &AlgebraHom) -> Result<Self> {
        if !same_algebra(&self.algebra, psi.source()) {
            return Err(Error::AlgebraMismatch);
        }
        let entries = self.entries.iter().map(|e| psi.apply_form(e)).collect::<Result<Vec<_>>>()?;
        Ok(Matrix { algebra: psi.target().clone(), rows: self.rows, cols: self.cols, entries })
    }
}

impl FormMatrix {
    pub fn lift<T: Scalar>(&self) -> FormMatrix<T> {
        self.map(UForm::lift)
    }
}

/// The class of `tr(m)` in `Ω_ab(A)`.
pub fn trace_ab<S: Scalar>(m: &FormMatrix<S>) -> Result<AbClass<S>> {
    m.trace_ab()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::make_matrix_algebra;
    use crate::exactmath::rat;

    #[test]
    fn constant_traces_over_m2() {
        // Over M₂ the quotient A/[A,A] is the trace line, with E11 of trace 1.
        // The 2×2 matrix below is a 4×4 rational matrix of trace 2 + 6 = 8.
        let m2 = make_matrix_algebra(2).unwrap();
        let elems = [[1, 0, 0, 0], [0, 1, 2, 0], [0, 0, 0, 1], [3, 0, 0, 5]].map(|v| AlgElement::from_ints(&v));
        let m = FormMatrix::from_elements(&m2, 2, 2, &elems).unwrap();
        let eight_e11 = project_ab(&UForm::from_letters(&m2, &[1], rat(8))).unwrap();
        assert_eq!(m.trace_ab().unwrap(), eight_e11);
        let two_e11 = project_ab(&UForm::from_letters(&m2, &[1], rat(2))).unwrap();
        assert_eq!(two_e11, project_ab(&UForm::<Rational>::one(&m2)).unwrap());
    }
}
