use crate::algebra::AlgebraRef;
use crate::error::Result;
use crate::exactmath::{Poly2, Rational};
use crate::uforms::{project_ab, AbClass, GradedForm, UForm};

use super::tform::TForm;

/// Element `A₀ + ds·A₁ + dt·A₂ + ds∧dt·A₃` of `Λ•⊗̂Λ•⊗̂Ω^u_•(A)` with
/// polynomial coefficients in `s` and `t`.
#[derive(Clone, Debug, PartialEq)]
pub struct BiForm {
    pub one: UForm<Poly2>,
    pub ds: UForm<Poly2>,
    pub dt: UForm<Poly2>,
    pub dsdt: UForm<Poly2>,
}

impl BiForm {
    pub fn from_one(one: UForm<Poly2>) -> Self {
        let z = UForm::zero(one.algebra());
        BiForm { ds: z.clone(), dt: z.clone(), dsdt: z, one }
    }

    /// `∫ds`: integrates the components carrying `ds` over `s ∈ [0, 1]`,
    /// leaving a form in `t`.
    pub fn k1(&self) -> TForm {
        let int = |f: &UForm<Poly2>| f.map_coeffs(|_, q| q.integrate_s());
        TForm::new(int(&self.ds), int(&self.dsdt)).expect("components share the algebra")
    }

    /// `∫dt`: integrates the components carrying `dt` over `t ∈ [0, 1]`,
    /// leaving a form in `s` (with `s` renamed to `t`).
    pub fn k2(&self) -> TForm {
        let int = |f: &UForm<Poly2>| f.map_coeffs(|_, q| q.integrate_t());
        TForm::new(int(&self.dt), int(&self.dsdt)).expect("components share the algebra")
    }

    /// Restriction to a fixed `s`, a form in `t`.
    pub fn ev_s(&self, s: &Rational) -> TForm {
        let ev = |f: &UForm<Poly2>| f.map_coeffs(|_, q| q.eval_s(s));
        TForm::new(ev(&self.one), ev(&self.dt)).expect("components share the algebra")
    }

    /// Restriction to a fixed `t`, a form in `s`.
    pub fn ev_t(&self, t: &Rational) -> TForm {
        let ev = |f: &UForm<Poly2>| f.map_coeffs(|_, q| q.eval_t(t));
        TForm::new(ev(&self.one), ev(&self.ds)).expect("components share the algebra")
    }

    /// Class of the `ds∧dt` component in `Ω_ab`.
    pub fn project_dsdt(&self) -> Result<AbClass<Poly2>> {
        project_ab(&self.dsdt)
    }

    fn zip(&self, other: &Self, f: impl Fn(&UForm<Poly2>, &UForm<Poly2>) -> UForm<Poly2>) -> Self {
        BiForm { one: f(&self.one, &other.one), ds: f(&self.ds, &other.ds), dt: f(&self.dt, &other.dt), dsdt: f(&self.dsdt, &other.dsdt) }
    }

    fn each(&self, f: impl Fn(&UForm<Poly2>) -> UForm<Poly2>) -> Self {
        BiForm { one: f(&self.one), ds: f(&self.ds), dt: f(&self.dt), dsdt: f(&self.dsdt) }
    }
}

impl GradedForm for BiForm {
    fn zero_in(algebra: &AlgebraRef) -> Self {
        BiForm::from_one(UForm::zero(algebra))
    }
    fn one_in(algebra: &AlgebraRef) -> Self {
        BiForm::from_one(UForm::one(algebra))
    }
    fn algebra(&self) -> &AlgebraRef {
        self.one.algebra()
    }
    fn is_zero(&self) -> bool {
        self.one.is_zero() && self.ds.is_zero() && self.dt.is_zero() && self.dsdt.is_zero()
    }
    fn add(&self, other: &Self) -> Self {
        self.zip(other, UForm::add)
    }
    fn sub(&self, other: &Self) -> Self {
        self.zip(other, UForm::sub)
    }
    fn neg(&self) -> Self {
        self.each(UForm::neg)
    }
    fn scale(&self, r: &Rational) -> Self {
        self.each(|f| f.scale(r))
    }
    /// Moving `ds` or `dt` leftwards past a form `x` contributes `σ(x)`;
    /// `dt∧ds = −ds∧dt`.
    fn mul(&self, o: &Self) -> Result<Self> {
        let (a0, a1, a2) = (&self.one, self.ds.parity(), self.dt.parity());
        let sa0 = a0.parity();
        Ok(BiForm {
            one: a0.mul(&o.one)?,
            ds: self.ds.mul(&o.one)?.add(&sa0.mul(&o.ds)?),
            dt: self.dt.mul(&o.one)?.add(&sa0.mul(&o.dt)?),
            dsdt: self
                .dsdt
                .mul(&o.one)?
                .add(&a0.mul(&o.dsdt)?)
                .add(&a1.mul(&o.dt)?)
                .sub(&a2.mul(&o.ds)?),
        })
    }
    /// `d(F·ds^a dt^b·θ) = ∂ₛF ds(…) + ∂ₜF dt(…) + (−1)^{a+b} F ds^a dt^b dθ`
    fn differential(&self) -> Self {
        let ps = |f: &UForm<Poly2>| f.map_coeffs(|_, q| q.partial_s());
        let pt = |f: &UForm<Poly2>| f.map_coeffs(|_, q| q.partial_t());
        BiForm {
            one: self.one.differential(),
            ds: ps(&self.one).sub(&self.ds.differential()),
            dt: pt(&self.one).sub(&self.dt.differential()),
            dsdt: ps(&self.dt).sub(&pt(&self.ds)).add(&self.dsdt.differential()),
        }
    }
}
