use alloc::vec::Vec;

use rand::Rng;

use super::{Connection, FormMatrix, Idempotent, ModuleIso};
use crate::algebra::{AlgElement, AlgebraRef};
use crate::error::Result;
use crate::exactmath::rat;
use crate::uforms::{UForm, Word};

/// Sparse element with small integer coefficients.
pub fn random_element<R: Rng + ?Sized>(alg: &AlgebraRef, rng: &mut R) -> AlgElement {
    AlgElement::new((0..alg.dim()).map(|_| if rng.random_bool(0.5) { rat(rng.random_range(-2..=2)) } else { rat(0) }).collect())
}

/// Degree-1 form with at most `terms` words and small coefficients.
pub fn random_one_form<R: Rng + ?Sized>(alg: &AlgebraRef, rng: &mut R, terms: usize) -> UForm {
    random_form(alg, rng, 1, terms)
}

/// Homogeneous form of the given degree with at most `terms` words.
pub fn random_form<R: Rng + ?Sized>(alg: &AlgebraRef, rng: &mut R, degree: usize, terms: usize) -> UForm {
    let m = alg.dim();
    let mut f = UForm::zero(alg);
    if m < 2 && degree > 0 {
        return f;
    }
    for _ in 0..terms {
        let letters: Vec<usize> =
            (0..=degree).map(|i| if i == 0 { rng.random_range(0..m) } else { rng.random_range(1..m) }).collect();
        let w = Word::from_letters(m, &letters).expect("letters in range");
        f.add_term(w, rat(rng.random_range(-2..=2)));
    }
    f
}

/// A unit of the algebra together with its inverse.
pub fn random_unit<R: Rng + ?Sized>(alg: &AlgebraRef, rng: &mut R) -> (AlgElement, AlgElement) {
    for _ in 0..32 {
        let a = random_element(alg, rng);
        if let Some(b) = alg.inverse(&a) {
            return (a, b);
        }
    }
    let one = alg.one();
    (one.clone(), one)
}

/// An invertible `n × n` matrix `L·D·U` with unitriangular `L`, `U` and a
/// diagonal of units, together with its inverse `U⁻¹D⁻¹L⁻¹`.
pub fn random_invertible<R: Rng + ?Sized>(alg: &AlgebraRef, n: usize, rng: &mut R) -> Result<(FormMatrix, FormMatrix)> {
    let (lower, lower_inv) = unitriangular(alg, n, rng, |i, j| i > j)?;
    let (upper, upper_inv) = unitriangular(alg, n, rng, |i, j| i < j)?;
    let units: Vec<(AlgElement, AlgElement)> = (0..n).map(|_| random_unit(alg, rng)).collect();
    let diag = |inv: bool| {
        FormMatrix::from_fn(alg, n, n, |i, j| {
            if i == j {
                UForm::from_element(alg, if inv { &units[i].1 } else { &units[i].0 })
            } else {
                UForm::zero(alg)
            }
        })
    };
    let g = lower.mul(&diag(false))?.mul(&upper)?;
    let g_inv = upper_inv.mul(&diag(true))?.mul(&lower_inv)?;
    Ok((g, g_inv))
}

/// `1 + N` with `N` supported where `support(i, j)` holds (strictly
/// triangular), and its inverse `Σ (−N)^j`.
fn unitriangular<R: Rng + ?Sized>(
    alg: &AlgebraRef,
    n: usize,
    rng: &mut R,
    support: impl Fn(usize, usize) -> bool,
) -> Result<(FormMatrix, FormMatrix)> {
    let nil = FormMatrix::from_fn(alg, n, n, |i, j| {
        if support(i, j) {
            UForm::from_element(alg, &random_element(alg, rng))
        } else {
            UForm::zero(alg)
        }
    });
    let id = FormMatrix::identity(alg, n);
    let minus = nil.neg();
    let mut inv = id.clone();
    let mut term = id.clone();
    for _ in 1..n {
        term = term.mul(&minus)?;
        inv = inv.add(&term)?;
    }
    Ok((id.add(&nil)?, inv))
}

/// A random automorphism of the free module `Aⁿ`.
pub fn random_automorphism<R: Rng + ?Sized>(alg: &AlgebraRef, n: usize, rng: &mut R) -> Result<ModuleIso> {
    let (g, g_inv) = random_invertible(alg, n, rng)?;
    let p = Idempotent::identity(alg, n);
    ModuleIso::new(p.clone(), p, g, g_inv)
}

/// `Im(p) → Im(g p g⁻¹)` given by `u = g·p`, `v = p·g⁻¹`, for a random
/// invertible `g`.
pub fn random_conjugate<R: Rng + ?Sized>(p: &Idempotent, rng: &mut R) -> Result<ModuleIso> {
    let alg = p.algebra();
    let (g, g_inv) = random_invertible(alg, p.size(), rng)?;
    let q = Idempotent::new(g.mul(p.matrix())?.mul(&g_inv)?)?;
    ModuleIso::new(p.clone(), q, g.mul(p.matrix())?, p.matrix().mul(&g_inv)?)
}

/// `p = u·E·u⁻¹` with `u = 1 + N`, `N` strictly upper triangular (so that
/// `u⁻¹ = Σ (−N)^j` is a finite sum) and `E` diagonal. The diagonal of `E`
/// draws from 1 and the basis idempotents of the algebra with their
/// complements, so that over algebras with idempotents the Chern classes
/// are not all constant. Zero is left out since it only shrinks the module.
pub fn random_idempotent<R: Rng + ?Sized>(alg: &AlgebraRef, n: usize, rng: &mut R) -> Result<Idempotent> {
    let mut palette: Vec<AlgElement> = alloc::vec![alg.one()];
    palette.extend(alg.basis_idempotents());
    let e = FormMatrix::from_fn(alg, n, n, |i, j| {
        if i == j {
            UForm::from_element(alg, &palette[rng.random_range(0..palette.len())])
        } else {
            UForm::zero(alg)
        }
    });
    let (u, u_inv) = unitriangular(alg, n, rng, |i, j| i < j)?;
    Idempotent::new(u.mul(&e)?.mul(&u_inv)?)
}

/// `θ = p·Θ·p` with `Θ` a random matrix of one-forms.
pub fn random_connection<R: Rng + ?Sized>(p: &Idempotent, rng: &mut R) -> Result<Connection> {
    let alg = p.algebra();
    let n = p.size();
    let big = FormMatrix::from_fn(alg, n, n, |_, _| random_one_form(alg, rng, 2));
    Connection::new(p.clone(), p.compress(&big)?)
}
