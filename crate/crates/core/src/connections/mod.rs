//! Finitely generated projective modules as idempotent matrices, connections
//! in compressed form `D = p∘d + θ`, curvature, traces and Karoubi's Chern
//! character.

mod matrix;
mod random;

use alloc::format;
use alloc::vec::Vec;

use crate::algebra::{same_algebra, AlgElement, AlgebraHom, AlgebraRef};
use crate::error::{Error, Result};
use crate::exactmath::factorial;
use crate::uforms::{AbClass, GradedForm, UForm};

pub use matrix::{trace_ab, FormMatrix, Matrix};
pub use random::{
    random_automorphism, random_conjugate, random_connection, random_element, random_form, random_idempotent, random_invertible,
    random_one_form, random_unit,
};

/// Square matrix `p` over `A` with `p² = p`; presents the module `Im(p)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Idempotent {
    matrix: FormMatrix,
}

impl Idempotent {
    pub fn new(matrix: FormMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::DimensionMismatch(format!("idempotent must be square, got {}×{}", matrix.rows(), matrix.cols())));
        }
        if matrix.entries().iter().any(|e| e.degrees().iter().any(|&d| d > 0)) {
            return Err(Error::Invalid("idempotent entries must be algebra elements".into()));
        }
        if matrix.mul(&matrix)? != matrix {
            return Err(Error::NotIdempotent);
        }
        Ok(Idempotent { matrix })
    }

    /// Row-major `n × n` entries.
    pub fn from_elements(algebra: &AlgebraRef, n: usize, elements: &[AlgElement]) -> Result<Self> {
        Self::new(FormMatrix::from_elements(algebra, n, n, elements)?)
    }

    pub fn identity(algebra: &AlgebraRef, n: usize) -> Self {
        Idempotent { matrix: FormMatrix::identity(algebra, n) }
    }

    /// The zero module, presented by the empty matrix.
    pub fn zero_module(algebra: &AlgebraRef) -> Self {
        Idempotent { matrix: FormMatrix::zeros(algebra, 0, 0) }
    }

    pub fn algebra(&self) -> &AlgebraRef {
        self.matrix.algebra()
    }

    pub fn size(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &FormMatrix {
        &self.matrix
    }

    pub fn element(&self, i: usize, j: usize) -> AlgElement {
        self.matrix.element(i, j)
    }

    pub fn direct_sum(&self, other: &Idempotent) -> Result<Idempotent> {
        Ok(Idempotent { matrix: self.matrix.block_diag(&other.matrix)? })
    }

    pub fn extend_scalars(&self, psi: &AlgebraHom) -> Result<Idempotent> {
        Ok(Idempotent { matrix: self.matrix.extend_scalars(psi)? })
    }

    /// `p X p`
    pub fn compress<S: crate::exactmath::Scalar>(&self, x: &FormMatrix<S>) -> Result<FormMatrix<S>> {
        let p = self.matrix.lift::<S>();
        p.mul(x)?.mul(&p)
    }

    /// `ch₀ = [Σ p_ii]`, the class in `A/[A,A]`.
    pub fn rank_class(&self) -> Result<AbClass> {
        self.matrix.trace_ab()
    }
}

/// Connection `D(X) = p·dX + θ·X` on `Im(p)`, with `pθp = θ` of degree 1.
#[derive(Clone, Debug, PartialEq)]
pub struct Connection {
    p: Idempotent,
    theta: FormMatrix,
}

impl Connection {
    pub fn new(p: Idempotent, theta: FormMatrix) -> Result<Self> {
        if theta.rows() != p.size() || theta.cols() != p.size() {
            return Err(Error::DimensionMismatch(format!(
                "potential is {}×{} for an idempotent of size {}",
                theta.rows(),
                theta.cols(),
                p.size()
            )));
        }
        if !same_algebra(theta.algebra(), p.algebra()) {
            return Err(Error::AlgebraMismatch);
        }
        if theta.entries().iter().any(|e| e.degrees().iter().any(|&d| d != 1)) {
            return Err(Error::Invalid("connection potential must have degree 1".into()));
        }
        if p.compress(&theta)? != theta {
            return Err(Error::NotCompressed);
        }
        Ok(Connection { p, theta })
    }

    pub fn p(&self) -> &Idempotent {
        &self.p
    }

    pub fn theta(&self) -> &FormMatrix {
        &self.theta
    }

    pub fn algebra(&self) -> &AlgebraRef {
        self.p.algebra()
    }

    pub fn size(&self) -> usize {
        self.p.size()
    }

    /// `X ↦ p·dX + θ·X` on columns (or any matrix) of forms.
    pub fn apply(&self, x: &FormMatrix) -> Result<FormMatrix> {
        self.p.matrix.mul(&x.differential())?.add(&self.theta.mul(x)?)
    }

    /// `R = p·dp·dp·p + p·dθ·p + θ²`.
    pub fn curvature(&self) -> Result<FormMatrix> {
        curvature_formula(&self.p.matrix, &self.theta)
    }

    /// `ch₀, …, ch_{k_max}` with `ch_k = tr(R^k)/k!` in `Ω_ab`.
    pub fn chern(&self, k_max: usize) -> Result<Vec<AbClass>> {
        chern_from_curvature(&self.p, &self.curvature()?, k_max)
    }

    pub fn direct_sum(&self, other: &Connection) -> Result<Connection> {
        Ok(Connection { p: self.p.direct_sum(&other.p)?, theta: self.theta.block_diag(&other.theta)? })
    }

    /// `φ*D = v∘D∘u` on `Im(p₀)`, for `φ: Im(p₀) → Im(p₁)` and `D` on `Im(p₁)`.
    pub fn pullback(&self, phi: &ModuleIso) -> Result<Connection> {
        if phi.p1 != self.p {
            return Err(Error::IdempotentMismatch);
        }
        let p1 = &phi.p1.matrix;
        let inner = p1.mul(&phi.u.differential())?.add(&self.theta.mul(&phi.u)?)?;
        let theta = phi.v.mul(&inner)?.mul(&phi.p0.matrix)?;
        Connection::new(phi.p0.clone(), theta)
    }

    /// `(ψ(p), ψ^u(θ))` over the target algebra.
    pub fn extend_scalars(&self, psi: &AlgebraHom) -> Result<Connection> {
        Connection::new(self.p.extend_scalars(psi)?, self.theta.extend_scalars(psi)?)
    }
}

/// `p·dp·dp·p + p·dθ·p + θ²`, the square of `X ↦ p·dX + θ·X` on `Im(p)`,
/// in any of the form algebras.
pub fn curvature_formula<E: GradedForm>(p: &Matrix<E>, theta: &Matrix<E>) -> Result<Matrix<E>> {
    let dp = p.differential();
    let grassmann = p.mul(&dp)?.mul(&dp)?.mul(p)?;
    let dtheta = p.mul(&theta.differential())?.mul(p)?;
    grassmann.add(&dtheta)?.add(&theta.mul(theta)?)
}

/// Shared by the Chern character of a connection and of a path's cylinder
/// connection: `ch₀ = [tr p]`, `ch_k = [tr(R^k)]/k!`.
pub(crate) fn chern_from_curvature(p: &Idempotent, r: &FormMatrix, k_max: usize) -> Result<Vec<AbClass>> {
    p.algebra().check_degree(2 * k_max)?;
    let mut out = Vec::with_capacity(k_max + 1);
    out.push(p.rank_class()?);
    let mut power = p.matrix.clone();
    for k in 1..=k_max {
        power = power.mul(r)?;
        out.push(power.trace_ab()?.scale(&factorial(k).recip()));
    }
    Ok(out)
}

/// The Grassmann connection `D = p∘d` on `Im(p)`.
pub fn grassmann(p: &Idempotent) -> Connection {
    Connection { p: p.clone(), theta: FormMatrix::zeros(p.algebra(), p.size(), p.size()) }
}

pub fn curvature(c: &Connection) -> Result<FormMatrix> {
    c.curvature()
}

pub fn chern(c: &Connection, k_max: usize) -> Result<Vec<AbClass>> {
    c.chern(k_max)
}

pub fn direct_sum(c1: &Connection, c2: &Connection) -> Result<Connection> {
    c1.direct_sum(c2)
}

pub fn pullback(c: &Connection, phi: &ModuleIso) -> Result<Connection> {
    c.pullback(phi)
}

pub fn extend_scalars(c: &Connection, psi: &AlgebraHom) -> Result<Connection> {
    c.extend_scalars(psi)
}

/// Isomorphism `u: Im(p₀) → Im(p₁)` with explicit inverse `v`.
#[derive(Clone, Debug, PartialEq)]
pub struct ModuleIso {
    p0: Idempotent,
    p1: Idempotent,
    u: FormMatrix,
    v: FormMatrix,
}

impl ModuleIso {
    /// Checks `p₁up₀ = u`, `p₀vp₁ = v`, `vu = p₀` and `uv = p₁`.
    pub fn new(p0: Idempotent, p1: Idempotent, u: FormMatrix, v: FormMatrix) -> Result<Self> {
        let bad = |what: &str| Error::InvalidIsomorphism(what.into());
        if (u.rows(), u.cols()) != (p1.size(), p0.size()) || (v.rows(), v.cols()) != (p0.size(), p1.size()) {
            return Err(bad("u must be size(p₁)×size(p₀) and v size(p₀)×size(p₁)"));
        }
        let (a, b) = (&p0.matrix, &p1.matrix);
        let deg0 = |m: &FormMatrix| m.entries().iter().all(|e| e.degrees().iter().all(|&d| d == 0));
        if !deg0(&u) || !deg0(&v) {
            return Err(bad("entries must be algebra elements"));
        }
        if b.mul(&u)?.mul(a)? != u {
            return Err(bad("p₁·u·p₀ ≠ u"));
        }
        if a.mul(&v)?.mul(b)? != v {
            return Err(bad("p₀·v·p₁ ≠ v"));
        }
        if v.mul(&u)? != *a {
            return Err(bad("v·u ≠ p₀"));
        }
        if u.mul(&v)? != *b {
            return Err(bad("u·v ≠ p₁"));
        }
        Ok(ModuleIso { p0, p1, u, v })
    }

    pub fn identity(p: &Idempotent) -> Self {
        ModuleIso { p0: p.clone(), p1: p.clone(), u: p.matrix.clone(), v: p.matrix.clone() }
    }

    pub fn source(&self) -> &Idempotent {
        &self.p0
    }

    pub fn target(&self) -> &Idempotent {
        &self.p1
    }

    pub fn u(&self) -> &FormMatrix {
        &self.u
    }

    pub fn v(&self) -> &FormMatrix {
        &self.v
    }

    pub fn inverse(&self) -> ModuleIso {
        ModuleIso { p0: self.p1.clone(), p1: self.p0.clone(), u: self.v.clone(), v: self.u.clone() }
    }

    /// `self ∘ first`
    pub fn compose(&self, first: &ModuleIso) -> Result<ModuleIso> {
        if first.p1 != self.p0 {
            return Err(Error::IdempotentMismatch);
        }
        Ok(ModuleIso { p0: first.p0.clone(), p1: self.p1.clone(), u: self.u.mul(&first.u)?, v: first.v.mul(&self.v)? })
    }

    pub fn direct_sum(&self, other: &ModuleIso) -> Result<ModuleIso> {
        Ok(ModuleIso {
            p0: self.p0.direct_sum(&other.p0)?,
            p1: self.p1.direct_sum(&other.p1)?,
            u: self.u.block_diag(&other.u)?,
            v: self.v.block_diag(&other.v)?,
        })
    }

    /// The swap `Im(a) ⊕ Im(b) → Im(b) ⊕ Im(a)`.
    pub fn swap(a: &Idempotent, b: &Idempotent) -> Result<ModuleIso> {
        let (n, m) = (a.size(), b.size());
        let alg = a.algebra();
        let u = FormMatrix::from_fn(alg, m + n, n + m, |i, j| {
            if i < m && j >= n {
                b.matrix.get(i, j - n).clone()
            } else if i >= m && j < n {
                a.matrix.get(i - m, j).clone()
            } else {
                UForm::zero(alg)
            }
        });
        let v = FormMatrix::from_fn(alg, n + m, m + n, |i, j| {
            if i < n && j >= m {
                a.matrix.get(i, j - m).clone()
            } else if i >= n && j < m {
                b.matrix.get(i - n, j).clone()
            } else {
                UForm::zero(alg)
            }
        });
        ModuleIso::new(a.direct_sum(b)?, b.direct_sum(a)?, u, v)
    }

    pub fn extend_scalars(&self, psi: &AlgebraHom) -> Result<ModuleIso> {
        ModuleIso::new(
            self.p0.extend_scalars(psi)?,
            self.p1.extend_scalars(psi)?,
            self.u.extend_scalars(psi)?,
            self.v.extend_scalars(psi)?,
        )
    }
}
