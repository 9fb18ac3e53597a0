//! Finite-dimensional unital associative ℚ-algebras given by structure
//! constants. Basis element 0 is always the unit.

mod constructors;
mod hom;

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactmath::{ColumnSolver, Rational, Scalar, SparseVec};
use crate::uforms::FormCache;

pub use constructors::{cyclic_group_table, make_group_algebra, make_matrix_algebra, make_product, make_truncated_poly};
pub use hom::{same_algebra, AlgebraHom};

pub const DEFAULT_DEGREE_CAP: usize = 8;

pub type AlgebraRef = Arc<Algebra>;

/// Structure-constant presentation of an algebra.
pub struct Algebra {
    dim: usize,
    names: Option<Vec<String>>,
    /// `table[i * dim + j]` is `e_i · e_j`.
    table: Vec<SparseVec>,
    degree_cap: usize,
    pub(crate) cache: FormCache,
}

impl core::fmt::Debug for Algebra {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("Algebra")
            .field("dim", &self.dim)
            .field("names", &self.names)
            .field("degree_cap", &self.degree_cap)
            .finish_non_exhaustive()
    }
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.table == other.table && self.degree_cap == other.degree_cap
    }
}

impl Algebra {
    /// Validates unitality at slot 0 and associativity on every basis triple.
    pub fn new(dim: usize, names: Option<Vec<String>>, mul: Vec<Vec<Vec<Rational>>>) -> Result<AlgebraRef> {
        if dim == 0 {
            return Err(Error::Invalid("algebra dimension must be at least 1".into()));
        }
        if mul.len() != dim || mul.iter().any(|row| row.len() != dim || row.iter().any(|v| v.len() != dim)) {
            return Err(Error::DimensionMismatch(format!("multiplication table must be {dim}×{dim}×{dim}")));
        }
        if let Some(n) = &names {
            if n.len() != dim {
                return Err(Error::DimensionMismatch(format!("{} names for dimension {dim}", n.len())));
            }
        }
        let table = mul.iter().flat_map(|row| row.iter().map(|v| SparseVec::from_dense(v))).collect();
        Self::from_table(dim, names, table, DEFAULT_DEGREE_CAP)
    }

    pub(crate) fn from_table(
        dim: usize,
        names: Option<Vec<String>>,
        table: Vec<SparseVec>,
        degree_cap: usize,
    ) -> Result<AlgebraRef> {
        let alg = Algebra { dim, names, table, degree_cap, cache: FormCache::new(degree_cap) };
        alg.check_unit()?;
        alg.check_associative()?;
        Ok(Arc::new(alg))
    }

    fn check_unit(&self) -> Result<()> {
        for i in 0..self.dim {
            let unit_i = SparseVec::unit(i);
            if self.product(0, i) != &unit_i || self.product(i, 0) != &unit_i {
                let hint = (1..self.dim)
                    .find(|&u| (0..self.dim).all(|k| self.product(u, k) == &SparseVec::unit(k) && self.product(k, u) == &SparseVec::unit(k)))
                    .map(|u| format!("; basis element {u} acts as the unit, rebase it to index 0"))
                    .unwrap_or_default();
                return Err(Error::NotUnital(format!("e0·e{i} or e{i}·e0 differs from e{i}{hint}")));
            }
        }
        Ok(())
    }

    /// First failing triple, in lexicographic order.
    pub fn associativity_defect(&self) -> Option<(usize, usize, usize)> {
        let m = self.dim;
        for i in 0..m {
            for j in 0..m {
                let ij = self.product(i, j);
                for k in 0..m {
                    let mut left = SparseVec::new();
                    for (l, c) in ij.entries() {
                        left.axpy(c, self.product(*l, k));
                    }
                    let jk = self.product(j, k);
                    let mut right = SparseVec::new();
                    for (l, c) in jk.entries() {
                        right.axpy(c, self.product(i, *l));
                    }
                    if left != right {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    fn check_associative(&self) -> Result<()> {
        match self.associativity_defect() {
            Some((i, j, k)) => Err(Error::NotAssociative(i, j, k)),
            None => Ok(()),
        }
    }

    /// Same structure constants under a different degree cap.
    pub fn with_degree_cap(&self, cap: usize) -> Result<AlgebraRef> {
        if cap == 0 {
            return Err(Error::Invalid("degree cap must be positive".into()));
        }
        Self::from_table(self.dim, self.names.clone(), self.table.clone(), cap)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn name(&self, i: usize) -> String {
        match &self.names {
            Some(n) => n[i].clone(),
            None if i == 0 => "1".into(),
            None => format!("e{i}"),
        }
    }

    pub fn degree_cap(&self) -> usize {
        self.degree_cap
    }

    pub fn check_degree(&self, degree: usize) -> Result<()> {
        if degree > self.degree_cap {
            Err(Error::DegreeCapExceeded { degree, cap: self.degree_cap })
        } else {
            Ok(())
        }
    }

    /// `e_i · e_j` in basis coordinates.
    pub fn product(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i * self.dim + j]
    }

    /// Dense `mul[i][j]` table, as loaded.
    pub fn mul_table(&self) -> Vec<Vec<Vec<Rational>>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.product(i, j).to_dense(self.dim)).collect())
            .collect()
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| (0..i).all(|j| self.product(i, j) == self.product(j, i)))
    }

    pub fn one<S: Scalar>(&self) -> AlgElement<S> {
        AlgElement::basis(self.dim, 0)
    }

    pub fn zero<S: Scalar>(&self) -> AlgElement<S> {
        AlgElement::zero(self.dim)
    }

    pub fn mul<S: Scalar>(&self, a: &AlgElement<S>, b: &AlgElement<S>) -> Result<AlgElement<S>> {
        if a.coeffs.len() != self.dim || b.coeffs.len() != self.dim {
            return Err(Error::AlgebraMismatch);
        }
        let mut out = AlgElement::<S>::zero(self.dim);
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let xy = x.mul_ref(y);
                for (k, c) in self.product(i, j).entries() {
                    out.coeffs[*k].add_assign_ref(&xy.scale(c));
                }
            }
        }
        Ok(out)
    }

    /// Two-sided inverse, if `a` is a unit. In a finite-dimensional algebra
    /// a right inverse is automatically two-sided.
    pub fn inverse(&self, a: &AlgElement) -> Option<AlgElement> {
        let columns: Vec<SparseVec> = (0..self.dim).map(|j| self.mul(a, &AlgElement::basis(self.dim, j)).ok().map(|x| x.as_sparse())).collect::<Option<_>>()?;
        let x = ColumnSolver::new(&columns).solve(&SparseVec::unit(0))?;
        Some(AlgElement::new(x))
    }

    /// Basis elements that are idempotent, together with their complements
    /// `1 - e`.
    pub fn basis_idempotents(&self) -> Vec<AlgElement> {
        let mut out = Vec::new();
        for i in 1..self.dim {
            if self.product(i, i) == &SparseVec::unit(i) {
                let e = AlgElement::basis(self.dim, i);
                let mut c = self.one::<Rational>();
                c.coeffs[i] = -Rational::one();
                out.push(e);
                out.push(c);
            }
        }
        out
    }
}

/// Element of an algebra with coefficients in a scalar ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgElement<S = Rational> {
    coeffs: Vec<S>,
}

impl<S: Scalar> AlgElement<S> {
    pub fn new(coeffs: Vec<S>) -> Self {
        AlgElement { coeffs }
    }

    pub fn zero(dim: usize) -> Self {
        AlgElement { coeffs: vec![S::zero(); dim] }
    }

    pub fn basis(dim: usize, i: usize) -> Self {
        let mut e = Self::zero(dim);
        e.coeffs[i] = S::one();
        e
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &S {
        &self.coeffs[i]
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        AlgElement { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.add_ref(b)).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        AlgElement { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.sub_ref(b)).collect() }
    }

    pub fn neg(&self) -> Self {
        AlgElement { coeffs: self.coeffs.iter().map(Scalar::neg_ref).collect() }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        AlgElement { coeffs: self.coeffs.iter().map(|c| c.scale(r)).collect() }
    }

    /// Nonzero coordinates.
    pub fn support(&self) -> impl Iterator<Item = (usize, &S)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }
}

impl AlgElement<Rational> {
    pub fn from_ints(v: &[i64]) -> Self {
        AlgElement { coeffs: v.iter().map(|x| crate::exactmath::rat(*x)).collect() }
    }

    pub fn scalar(dim: usize, c: Rational) -> Self {
        let mut e = Self::zero(dim);
        e.coeffs[0] = c;
        e
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.iter().skip(1).all(Zero::is_zero)
    }
}
