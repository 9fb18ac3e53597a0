use core::fmt::Debug;

use super::form::UForm;
use crate::algebra::AlgebraRef;
use crate::error::Result;
use crate::exactmath::{Rational, Scalar};

/// A differential graded algebra over a fixed `A`, as needed by matrices of
/// forms: the universal forms themselves and their cylinder extensions.
pub trait GradedForm: Clone + Debug + PartialEq + Send + Sync {
    fn zero_in(algebra: &AlgebraRef) -> Self;
    fn one_in(algebra: &AlgebraRef) -> Self;
    fn algebra(&self) -> &AlgebraRef;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn scale(&self, r: &Rational) -> Self;
    fn mul(&self, other: &Self) -> Result<Self>;
    fn differential(&self) -> Self;
}

impl<S: Scalar> GradedForm for UForm<S> {
    fn zero_in(algebra: &AlgebraRef) -> Self {
        UForm::zero(algebra)
    }
    fn one_in(algebra: &AlgebraRef) -> Self {
        UForm::one(algebra)
    }
    fn algebra(&self) -> &AlgebraRef {
        UForm::algebra(self)
    }
    fn is_zero(&self) -> bool {
        UForm::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        UForm::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        UForm::sub(self, other)
    }
    fn neg(&self) -> Self {
        UForm::neg(self)
    }
    fn scale(&self, r: &Rational) -> Self {
        UForm::scale(self, r)
    }
    fn mul(&self, other: &Self) -> Result<Self> {
        UForm::mul(self, other)
    }
    fn differential(&self) -> Self {
        UForm::differential(self)
    }
}
