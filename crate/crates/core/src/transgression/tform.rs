use crate::algebra::{same_algebra, AlgebraRef};
use crate::error::{Error, Result};
use crate::exactmath::{Poly1, Rational};
use crate::uforms::{project_ab, AbClass, GradedForm, UForm};

/// Element `ω₀(t) + dt·ω₁(t)` of `Λ•⊗̂Ω^u_•(A)`, with `dt` kept leftmost.
#[derive(Clone, Debug, PartialEq)]
pub struct TForm {
    base: UForm<Poly1>,
    dt: UForm<Poly1>,
}

impl TForm {
    pub fn new(base: UForm<Poly1>, dt: UForm<Poly1>) -> Result<Self> {
        if !same_algebra(base.algebra(), dt.algebra()) {
            return Err(Error::AlgebraMismatch);
        }
        Ok(TForm { base, dt })
    }

    /// A form without `dt` component.
    pub fn from_base(base: UForm<Poly1>) -> Self {
        let dt = UForm::zero(base.algebra());
        TForm { base, dt }
    }

    /// `dt·ω`
    pub fn from_dt(dt: UForm<Poly1>) -> Self {
        let base = UForm::zero(dt.algebra());
        TForm { base, dt }
    }

    pub fn base(&self) -> &UForm<Poly1> {
        &self.base
    }

    pub fn dt_part(&self) -> &UForm<Poly1> {
        &self.dt
    }

    /// The homotopy operator: `∫₀¹` of the `dt` component.
    pub fn homotopy_k(&self) -> UForm {
        self.dt.map_coeffs(|_, q| q.integrate_unit())
    }

    /// Evaluation at `t`, killing the `dt` component.
    pub fn ev(&self, t: &Rational) -> UForm {
        self.base.map_coeffs(|_, q| q.eval(t))
    }

    /// Pullback along `t ↦ 1 − t`, which sends `dt` to `−dt`.
    pub fn reverse(&self) -> TForm {
        TForm { base: self.base.map_coeffs(|_, q| q.reflect()), dt: self.dt.map_coeffs(|_, q| q.reflect()).neg() }
    }

    /// Projects both components to `Ω_ab`.
    pub fn project_ab(&self) -> Result<TClass> {
        Ok(TClass { base: project_ab(&self.base)?, dt: project_ab(&self.dt)? })
    }
}

impl GradedForm for TForm {
    fn zero_in(algebra: &AlgebraRef) -> Self {
        TForm { base: UForm::zero(algebra), dt: UForm::zero(algebra) }
    }
    fn one_in(algebra: &AlgebraRef) -> Self {
        TForm::from_base(UForm::one(algebra))
    }
    fn algebra(&self) -> &AlgebraRef {
        self.base.algebra()
    }
    fn is_zero(&self) -> bool {
        self.base.is_zero() && self.dt.is_zero()
    }
    fn add(&self, other: &Self) -> Self {
        TForm { base: self.base.add(&other.base), dt: self.dt.add(&other.dt) }
    }
    fn sub(&self, other: &Self) -> Self {
        TForm { base: self.base.sub(&other.base), dt: self.dt.sub(&other.dt) }
    }
    fn neg(&self) -> Self {
        TForm { base: self.base.neg(), dt: self.dt.neg() }
    }
    fn scale(&self, r: &Rational) -> Self {
        TForm { base: self.base.scale(r), dt: self.dt.scale(r) }
    }
    /// `(a + dt b)(c + dt e) = ac + dt(bc + σ(a)e)`
    fn mul(&self, other: &Self) -> Result<Self> {
        let base = self.base.mul(&other.base)?;
        let dt = self.dt.mul(&other.base)?.add(&self.base.parity().mul(&other.dt)?);
        Ok(TForm { base, dt })
    }
    /// `d(a + dt b) = da + dt(∂ₜa − db)`
    fn differential(&self) -> Self {
        let dt_a = self.base.map_coeffs(|_, q| q.derivative());
        TForm { base: self.base.differential(), dt: dt_a.sub(&self.dt.differential()) }
    }
}

/// A [`TForm`] modulo graded commutators: both components in `Ω_ab` with
/// polynomial coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct TClass {
    pub base: AbClass<Poly1>,
    pub dt: AbClass<Poly1>,
}

impl TClass {
    pub fn homotopy_k(&self) -> AbClass {
        self.dt.map_coeffs(Poly1::integrate_unit)
    }

    pub fn ev(&self, t: &Rational) -> AbClass {
        self.base.map_coeffs(|q| q.eval(t))
    }

    pub fn scale(&self, r: &Rational) -> TClass {
        TClass { base: self.base.scale(r), dt: self.dt.scale(r) }
    }

    /// `d̄(a + dt b) = d̄a + dt(∂ₜa − d̄b)`
    pub fn differential(&self) -> Result<TClass> {
        let dt_a = self.base.map_coeffs(Poly1::derivative);
        Ok(TClass { base: self.base.differential()?, dt: dt_a.sub(&self.dt.differential()?) })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::make_truncated_poly;
    use crate::exactmath::{rat, ratio};
    use num_traits::One;

    #[test]
    fn homotopy_and_evaluation_examples() {
        let a = make_truncated_poly(2).unwrap();
        let w = UForm::from_letters(&a, &[1, 1], rat(1));
        let lift = |q: Poly1| w.lift::<Poly1>().mul_scalar(&q);
        assert!(TForm::from_base(lift(Poly1::t())).homotopy_k().is_zero());
        assert_eq!(TForm::from_dt(lift(Poly1::one())).homotopy_k(), w);
        assert_eq!(TForm::from_dt(lift(Poly1::t())).homotopy_k(), w.scale(&ratio(1, 2)));
        let f = TForm::new(lift(Poly1::t()), lift(Poly1::one())).unwrap();
        assert!(f.ev(&rat(0)).is_zero());
        assert_eq!(f.ev(&rat(1)), w);
        assert!(TForm::from_dt(lift(Poly1::one())).ev(&ratio(1, 3)).is_zero());
    }
}
