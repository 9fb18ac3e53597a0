use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::{AlgElement, AlgebraRef};
use crate::error::{Error, Result};
use crate::exactmath::{RatMatrix, Rational, Scalar, SparseVec};

/// Unital algebra map `ψ: source → target`, validated on construction.
#[derive(Clone, Debug)]
pub struct AlgebraHom {
    source: AlgebraRef,
    target: AlgebraRef,
    /// `images[j] = ψ(e_j)` in target coordinates.
    images: Vec<SparseVec>,
}

impl AlgebraHom {
    /// `matrix` is `dim(target) × dim(source)`; column `j` is `ψ(e_j)`.
    pub fn new(source: AlgebraRef, target: AlgebraRef, matrix: &RatMatrix) -> Result<Self> {
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::DimensionMismatch(format!(
                "hom matrix is {}×{}, expected {}×{}",
                matrix.rows(),
                matrix.cols(),
                target.dim(),
                source.dim()
            )));
        }
        let hom = AlgebraHom { source, target, images: matrix.column_vectors() };
        hom.validate()?;
        Ok(hom)
    }

    pub fn identity(alg: &AlgebraRef) -> Self {
        AlgebraHom {
            source: alg.clone(),
            target: alg.clone(),
            images: (0..alg.dim()).map(SparseVec::unit).collect(),
        }
    }

    fn validate(&self) -> Result<()> {
        if self.images[0] != SparseVec::unit(0) {
            return Err(Error::NotAHomomorphism("ψ(1) ≠ 1".into()));
        }
        let m = self.source.dim();
        for i in 0..m {
            for j in 0..m {
                let mut lhs = SparseVec::new();
                for (k, c) in self.source.product(i, j).entries() {
                    lhs.axpy(c, &self.images[*k]);
                }
                let mut rhs = SparseVec::new();
                for (a, x) in self.images[i].entries() {
                    for (b, y) in self.images[j].entries() {
                        rhs.axpy(&(x * y), self.target.product(*a, *b));
                    }
                }
                if lhs != rhs {
                    return Err(Error::NotAHomomorphism(format!("ψ(e{i}·e{j}) ≠ ψ(e{i})·ψ(e{j})")));
                }
            }
        }
        Ok(())
    }

    pub fn source(&self) -> &AlgebraRef {
        &self.source
    }

    pub fn target(&self) -> &AlgebraRef {
        &self.target
    }

    pub fn image(&self, j: usize) -> &SparseVec {
        &self.images[j]
    }

    pub fn matrix(&self) -> RatMatrix {
        RatMatrix::from_columns(self.target.dim(), &self.images)
    }

    pub fn apply<S: Scalar>(&self, a: &AlgElement<S>) -> Result<AlgElement<S>> {
        if a.dim() != self.source.dim() {
            return Err(Error::AlgebraMismatch);
        }
        let mut out = AlgElement::<S>::zero(self.target.dim());
        for (j, x) in a.support() {
            for (k, c) in self.images[j].entries() {
                out.coeffs[*k].add_assign_ref(&x.scale(c));
            }
        }
        Ok(out)
    }

    /// `self ∘ first`
    pub fn compose(&self, first: &AlgebraHom) -> Result<AlgebraHom> {
        if !same_algebra(first.target(), &self.source) {
            return Err(Error::AlgebraMismatch);
        }
        let images = first
            .images
            .iter()
            .map(|v| {
                let mut out = SparseVec::new();
                for (k, c) in v.entries() {
                    out.axpy(c, &self.images[*k]);
                }
                out
            })
            .collect();
        Ok(AlgebraHom { source: first.source.clone(), target: self.target.clone(), images })
    }
}

pub fn same_algebra(a: &AlgebraRef, b: &AlgebraRef) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl AlgElement<Rational> {
    pub fn as_sparse(&self) -> SparseVec {
        SparseVec::from_dense(self.coeffs())
    }
}
