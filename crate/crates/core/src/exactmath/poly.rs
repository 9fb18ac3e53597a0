//! Univariate and bivariate polynomials with rational coefficients.
//!
//! `Poly1` is a polynomial in `t`; `Poly2` a polynomial in two commuting
//! variables `s` and `t`. Both support exact differentiation, evaluation and
//! definite integration over `[0, 1]`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use core::ops::{Add, Mul};

use num_traits::{One, Zero};

use super::rational::Rational;
use super::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly1 {
    coeffs: Vec<Rational>,
}

impl Poly1 {
    /// Builds from coefficients ordered by degree; trailing zeros are stripped.
    pub fn new(coeffs: Vec<Rational>) -> Self {
        let mut p = Poly1 { coeffs };
        p.normalize();
        p
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `c * t^k`
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// The identity polynomial `t`.
    pub fn t() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    /// `1 - t`
    pub fn one_minus_t() -> Self {
        Self::new(vec![Rational::one(), -Rational::one()])
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * Rational::from_integer(k.into()))
            .collect();
        Self::new(coeffs)
    }

    /// `∫₀¹ p(t) dt`
    pub fn integrate_unit(&self) -> Rational {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c / Rational::from_integer((k + 1).into()))
            .fold(Rational::zero(), |a, b| a + b)
    }

    /// Substitutes `t ↦ 1 - t`.
    pub fn reflect(&self) -> Self {
        let base = Self::one_minus_t();
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul_ref(&base);
            acc.add_assign_ref(&Self::constant(c.clone()));
        }
        acc
    }

    /// `p(q(t))`
    pub fn compose(&self, q: &Poly1) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul_ref(q);
            acc.add_assign_ref(&Self::constant(c.clone()));
        }
        acc
    }
}

impl Zero for Poly1 {
    fn zero() -> Self {
        Poly1 { coeffs: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for Poly1 {
    fn one() -> Self {
        Self::constant(Rational::one())
    }
}

impl Add for Poly1 {
    type Output = Self;
    fn add(mut self, other: Self) -> Self {
        self.add_assign_ref(&other);
        self
    }
}

impl Mul for Poly1 {
    type Output = Self;
    fn mul(self, other: Self) -> Self {
        self.mul_ref(&other)
    }
}

impl Scalar for Poly1 {
    fn from_rational(r: Rational) -> Self {
        Self::constant(r)
    }
    fn add_assign_ref(&mut self, other: &Self) {
        if self.coeffs.len() < other.coeffs.len() {
            self.coeffs.resize(other.coeffs.len(), Rational::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b;
        }
        self.normalize();
    }
    fn sub_assign_ref(&mut self, other: &Self) {
        if self.coeffs.len() < other.coeffs.len() {
            self.coeffs.resize(other.coeffs.len(), Rational::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a -= b;
        }
        self.normalize();
    }
    fn mul_ref(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Self::new(coeffs)
    }
    fn neg_ref(&self) -> Self {
        Poly1 { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
    fn scale(&self, r: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * r).collect())
    }
}

/// Polynomial in `s` and `t`, keyed by `(deg_s, deg_t)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly2 {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl Poly2 {
    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: Rational, ds: u32, dt: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((ds, dt), c);
        }
        Poly2 { terms }
    }

    pub fn s() -> Self {
        Self::monomial(Rational::one(), 1, 0)
    }

    pub fn t() -> Self {
        Self::monomial(Rational::one(), 0, 1)
    }

    /// Embeds a polynomial in `t`.
    pub fn from_t(p: &Poly1) -> Self {
        let mut out = Self::zero();
        for (k, c) in p.coeffs().iter().enumerate() {
            out.add_term((0, k as u32), c.clone());
        }
        out
    }

    /// Embeds a polynomial in `s`.
    pub fn from_s(p: &Poly1) -> Self {
        let mut out = Self::zero();
        for (k, c) in p.coeffs().iter().enumerate() {
            out.add_term((k as u32, 0), c.clone());
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rational)> {
        self.terms.iter()
    }

    fn add_term(&mut self, key: (u32, u32), c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(key).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn partial_s(&self) -> Self {
        let mut out = Self::zero();
        for (&(i, j), c) in &self.terms {
            if i > 0 {
                out.add_term((i - 1, j), c * Rational::from_integer(i.into()));
            }
        }
        out
    }

    pub fn partial_t(&self) -> Self {
        let mut out = Self::zero();
        for (&(i, j), c) in &self.terms {
            if j > 0 {
                out.add_term((i, j - 1), c * Rational::from_integer(j.into()));
            }
        }
        out
    }

    /// `∫₀¹ f(s, t) ds`, a polynomial in `t`.
    pub fn integrate_s(&self) -> Poly1 {
        let mut out = Poly1::zero();
        for (&(i, j), c) in &self.terms {
            out.add_assign_ref(&Poly1::monomial(
                c / Rational::from_integer((i + 1).into()),
                j as usize,
            ));
        }
        out
    }

    /// `∫₀¹ f(s, t) dt`, a polynomial in `s`.
    pub fn integrate_t(&self) -> Poly1 {
        let mut out = Poly1::zero();
        for (&(i, j), c) in &self.terms {
            out.add_assign_ref(&Poly1::monomial(
                c / Rational::from_integer((j + 1).into()),
                i as usize,
            ));
        }
        out
    }

    /// `f(s0, t)` as a polynomial in `t`.
    pub fn eval_s(&self, s0: &Rational) -> Poly1 {
        let mut out = Poly1::zero();
        for (&(i, j), c) in &self.terms {
            out.add_assign_ref(&Poly1::monomial(c * pow(s0, i), j as usize));
        }
        out
    }

    /// `f(s, t0)` as a polynomial in `s`.
    pub fn eval_t(&self, t0: &Rational) -> Poly1 {
        let mut out = Poly1::zero();
        for (&(i, j), c) in &self.terms {
            out.add_assign_ref(&Poly1::monomial(c * pow(t0, j), i as usize));
        }
        out
    }
}

fn pow(x: &Rational, k: u32) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..k {
        acc *= x;
    }
    acc
}

impl Zero for Poly2 {
    fn zero() -> Self {
        Poly2 { terms: BTreeMap::new() }
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for Poly2 {
    fn one() -> Self {
        Self::constant(Rational::one())
    }
}

impl Add for Poly2 {
    type Output = Self;
    fn add(mut self, other: Self) -> Self {
        self.add_assign_ref(&other);
        self
    }
}

impl Mul for Poly2 {
    type Output = Self;
    fn mul(self, other: Self) -> Self {
        self.mul_ref(&other)
    }
}

impl Scalar for Poly2 {
    fn from_rational(r: Rational) -> Self {
        Self::constant(r)
    }
    fn add_assign_ref(&mut self, other: &Self) {
        for (k, c) in &other.terms {
            self.add_term(*k, c.clone());
        }
    }
    fn sub_assign_ref(&mut self, other: &Self) {
        for (k, c) in &other.terms {
            self.add_term(*k, -c);
        }
    }
    fn mul_ref(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (&(a, b), x) in &self.terms {
            for (&(c, d), y) in &other.terms {
                out.add_term((a + c, b + d), x * y);
            }
        }
        out
    }
    fn neg_ref(&self) -> Self {
        Poly2 { terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect() }
    }
    fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        Poly2 { terms: self.terms.iter().map(|(k, c)| (*k, c * r)).collect() }
    }
}
