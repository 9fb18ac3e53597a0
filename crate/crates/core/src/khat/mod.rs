//! Noncommutative differential K-theory on representatives: generators
//! `(p, D, ω)`, verification of KCS-equivalence witnesses, the maps `R`,
//! `I`, `a`, the odd Chern character and the hexagon identities.

mod hexagon;

use alloc::format;
use alloc::vec::Vec;

use crate::algebra::{same_algebra, AlgebraHom, AlgebraRef};
use crate::connections::{grassmann, Connection, Idempotent, ModuleIso};
use crate::error::{Error, Result};
use crate::transgression::kcs_between;
use crate::uforms::AbClass;

pub use hexagon::{hexagon_check, hexagon_suite, IdentityCheck, HEXAGON_IDENTITIES};

/// A `K̂₀` generator: a connection on `Im(p)` and an odd form class `ω`.
#[derive(Clone, Debug, PartialEq)]
pub struct KHatGen {
    conn: Connection,
    omega: AbClass,
}

impl KHatGen {
    pub fn new(conn: Connection, omega: AbClass) -> Result<Self> {
        if !same_algebra(conn.algebra(), omega.algebra()) {
            return Err(Error::AlgebraMismatch);
        }
        if let Some(d) = omega.degrees().into_iter().find(|d| d % 2 == 0) {
            return Err(Error::Invalid(format!("ω must be odd, found a component of degree {d}")));
        }
        Ok(KHatGen { conn, omega })
    }

    /// `(O, 0, ω)` on the zero module.
    pub fn zero_module(algebra: &AlgebraRef, omega: AbClass) -> Result<Self> {
        let conn = grassmann(&Idempotent::zero_module(algebra));
        KHatGen::new(conn, omega)
    }

    pub fn p(&self) -> &Idempotent {
        self.conn.p()
    }

    pub fn conn(&self) -> &Connection {
        &self.conn
    }

    pub fn omega(&self) -> &AbClass {
        &self.omega
    }

    pub fn algebra(&self) -> &AlgebraRef {
        self.conn.algebra()
    }

    /// `(M ⊕ M′, D ⊕ D′, ω + ω′)`
    pub fn direct_sum(&self, other: &KHatGen) -> Result<KHatGen> {
        KHatGen::new(self.conn.direct_sum(&other.conn)?, self.omega.add(&other.omega))
    }

    /// `(ψ(p), D_ψ, ψ(ω))` over the target of `psi`.
    pub fn extend_scalars(&self, psi: &AlgebraHom) -> Result<KHatGen> {
        KHatGen::new(self.conn.extend_scalars(psi)?, psi.apply_class(&self.omega)?)
    }
}

/// Data exhibiting `(M₀, D₀, ω₀) ∼ (M₁, D₁, ω₁)`: a stabilizing module with
/// connection `(N, D)` and an isomorphism `φ: M₀ ⊕ N → M₁ ⊕ N`.
#[derive(Clone, Debug, PartialEq)]
pub struct KCSWitness {
    stab: Connection,
    iso: ModuleIso,
}

impl KCSWitness {
    pub fn new(stab: Connection, iso: ModuleIso) -> Result<Self> {
        if !same_algebra(stab.algebra(), iso.source().algebra()) {
            return Err(Error::AlgebraMismatch);
        }
        Ok(KCSWitness { stab, iso })
    }

    /// `N = 0` and `φ = id`, witnessing reflexivity on `Im(p)`.
    pub fn trivial(p: &Idempotent) -> Self {
        let stab = grassmann(&Idempotent::zero_module(p.algebra()));
        KCSWitness { stab, iso: ModuleIso::identity(p) }
    }

    pub fn stab_p(&self) -> &Idempotent {
        self.stab.p()
    }

    pub fn stab_conn(&self) -> &Connection {
        &self.stab
    }

    pub fn iso(&self) -> &ModuleIso {
        &self.iso
    }

    /// The witness for the reversed relation.
    pub fn inverse(&self) -> KCSWitness {
        KCSWitness { stab: self.stab.clone(), iso: self.iso.inverse() }
    }
}

/// A `K₁` datum `(M, φ)` with `φ ∈ Aut(M)`.
#[derive(Clone, Debug, PartialEq)]
pub struct K1Pair {
    aut: ModuleIso,
}

impl K1Pair {
    pub fn new(aut: ModuleIso) -> Result<Self> {
        if aut.source() != aut.target() {
            return Err(Error::IdempotentMismatch);
        }
        Ok(K1Pair { aut })
    }

    pub fn p(&self) -> &Idempotent {
        self.aut.source()
    }

    pub fn aut(&self) -> &ModuleIso {
        &self.aut
    }

    /// `(M, φ₁∘φ₂)`
    pub fn compose(&self, other: &K1Pair) -> Result<K1Pair> {
        K1Pair::new(self.aut.compose(&other.aut)?)
    }

    /// `(M ⊕ M′, φ ⊕ φ′)`
    pub fn direct_sum(&self, other: &K1Pair) -> Result<K1Pair> {
        K1Pair::new(self.aut.direct_sum(&other.aut)?)
    }
}

/// One degree of an exactness check: the residual class and, when it is
/// exact, a primitive `η` with `d̄η = residual`.
#[derive(Clone, Debug, PartialEq)]
pub struct DegreeCertificate {
    pub degree: usize,
    pub residual: AbClass,
    pub primitive: Option<AbClass>,
}

impl DegreeCertificate {
    /// Solves `d̄η = residual` in one degree.
    pub fn decide(degree: usize, residual: AbClass) -> Result<Self> {
        let primitive = if residual.is_zero() { Some(AbClass::zero(residual.algebra())) } else { residual.exact_primitive()? };
        Ok(DegreeCertificate { degree, residual, primitive })
    }

    pub fn is_exact(&self) -> bool {
        self.primitive.is_some()
    }

    /// Re-derives `d̄η` and compares it with the residual.
    pub fn check(&self) -> Result<bool> {
        match &self.primitive {
            Some(eta) => Ok(eta.differential()?.part(self.degree) == self.residual.part(self.degree)),
            None => Ok(false),
        }
    }
}

/// Outcome of [`verify_kcs_equivalence`].
#[derive(Clone, Debug, PartialEq)]
pub struct EquivalenceVerdict {
    pub accepted: bool,
    pub degrees: Vec<DegreeCertificate>,
}

/// Checks every degree of `residual` below `2·k_max`, including degrees
/// where it vanishes.
fn certify_odd(residual: &AbClass, k_max: usize) -> Result<Vec<DegreeCertificate>> {
    let mut degrees: Vec<usize> = (1..=k_max).map(|k| 2 * k - 1).collect();
    for d in residual.degrees() {
        if !degrees.contains(&d) {
            degrees.push(d);
        }
    }
    degrees.sort_unstable();
    degrees.into_iter().map(|d| DegreeCertificate::decide(d, residual.part(d))).collect()
}

fn graded_sum(classes: &[AbClass], algebra: &AlgebraRef) -> AbClass {
    classes.iter().fold(AbClass::zero(algebra), |acc, c| acc.add(c))
}

fn check_omega_range(omega: &AbClass, k_max: usize) -> Result<()> {
    match omega.degrees().into_iter().max() {
        Some(d) if d > 2 * k_max - 1 => {
            Err(Error::Invalid(format!("ω has a component of degree {d}, above 2·k_max − 1 = {}", 2 * k_max - 1)))
        }
        _ => Ok(()),
    }
}

/// `R(p, D, ω) = ch(D) + d̄ω`; entry `k` is the degree-`2k` part. Every
/// entry whose differential is within the degree cap is checked closed.
pub fn map_r(g: &KHatGen, k_max: usize) -> Result<Vec<AbClass>> {
    if k_max == 0 {
        return Err(Error::Invalid("k_max must be positive".into()));
    }
    check_omega_range(&g.omega, k_max)?;
    let ch = g.conn.chern(k_max)?;
    let d_omega = g.omega.differential()?;
    let out: Vec<AbClass> = ch.iter().enumerate().map(|(k, c)| c.add(&d_omega.part(2 * k))).collect();
    let cap = g.algebra().degree_cap();
    for (k, c) in out.iter().enumerate() {
        if 2 * k < cap && !c.differential()?.is_zero() {
            return Err(Error::Invalid(format!("R produced a form of degree {} that is not closed", 2 * k)));
        }
    }
    Ok(out)
}

/// `I(p, D, ω) = [Im p]`, as its idempotent representative.
pub fn map_i(g: &KHatGen) -> Idempotent {
    g.p().clone()
}

/// `a(ω) = (O, 0, ω) − (O, 0, 0)`, as the pair of generators.
pub fn map_a(algebra: &AlgebraRef, omega: &AbClass) -> Result<(KHatGen, KHatGen)> {
    Ok((KHatGen::zero_module(algebra, omega.clone())?, KHatGen::zero_module(algebra, AbClass::zero(algebra))?))
}

/// The connection `D₀ ⊕ D` and `φ*(D₁ ⊕ D)` whose KCS the relation uses.
fn witness_endpoints(g0: &KHatGen, g1: &KHatGen, w: &KCSWitness) -> Result<(Connection, Connection)> {
    let c0 = g0.conn.direct_sum(&w.stab)?;
    let c1 = g1.conn.direct_sum(&w.stab)?;
    if w.iso.source() != c0.p() {
        return Err(Error::IdempotentMismatch);
    }
    Ok((c0, c1.pullback(&w.iso)?))
}

/// Decides whether `KCS(D₀ ⊕ D, φ*(D₁ ⊕ D)) − (ω₀ − ω₁)` is exact in each
/// odd degree up to `2·k_max − 1`. Accepted verdicts carry primitives.
pub fn verify_kcs_equivalence(g0: &KHatGen, g1: &KHatGen, w: &KCSWitness, k_max: usize) -> Result<EquivalenceVerdict> {
    if k_max == 0 {
        return Err(Error::Invalid("k_max must be positive".into()));
    }
    if !same_algebra(g0.algebra(), g1.algebra()) || !same_algebra(g0.algebra(), w.stab.algebra()) {
        return Err(Error::AlgebraMismatch);
    }
    check_omega_range(&g0.omega, k_max)?;
    check_omega_range(&g1.omega, k_max)?;
    let (c0, c1) = witness_endpoints(g0, g1, w)?;
    let kcs = graded_sum(&kcs_between(&c0, &c1, k_max)?, g0.algebra());
    let residual = kcs.sub(&g0.omega.sub(&g1.omega));
    let degrees = certify_odd(&residual, k_max)?;
    Ok(EquivalenceVerdict { accepted: degrees.iter().all(DegreeCertificate::is_exact), degrees })
}

/// The `ω₁` that makes `w` a witness for `g₀ ∼ (M₁, D₁, ω₁)`:
/// `ω₁ = ω₀ − KCS(D₀ ⊕ D, φ*(D₁ ⊕ D))`.
pub fn matching_omega(g0: &KHatGen, conn1: &Connection, w: &KCSWitness, k_max: usize) -> Result<AbClass> {
    let g1 = KHatGen::new(conn1.clone(), AbClass::zero(conn1.algebra()))?;
    let (c0, c1) = witness_endpoints(g0, &g1, w)?;
    Ok(g0.omega.sub(&graded_sum(&kcs_between(&c0, &c1, k_max)?, g0.algebra())))
}

/// The composite witness for `g₀ ∼ g₂` built from witnesses for `g₀ ∼ g₁`
/// and `g₁ ∼ g₂`: stabilize by `N₀₁ ⊕ N₁₂` and compose
/// `(σ ⊕ id)∘(id ⊕ φ₁₂)∘(σ ⊕ id)∘(φ₀₁ ⊕ id)`, with `σ` the swaps
/// `M₁ ⊕ N₀₁ → N₀₁ ⊕ M₁` and `N₀₁ ⊕ M₂ → M₂ ⊕ N₀₁`.
pub fn chain_witnesses(g1: &KHatGen, g2: &KHatGen, w01: &KCSWitness, w12: &KCSWitness) -> Result<KCSWitness> {
    let (m1, m2) = (g1.p(), g2.p());
    let (n01, n12) = (w01.stab_p(), w12.stab_p());
    let id12 = ModuleIso::identity(n12);
    let f1 = w01.iso.direct_sum(&id12)?;
    let f2 = ModuleIso::swap(m1, n01)?.direct_sum(&id12)?;
    let f3 = ModuleIso::identity(n01).direct_sum(&w12.iso)?;
    let f4 = ModuleIso::swap(n01, m2)?.direct_sum(&id12)?;
    let iso = f4.compose(&f3.compose(&f2.compose(&f1)?)?)?;
    KCSWitness::new(w01.stab.direct_sum(&w12.stab)?, iso)
}

/// `ch₁(M, φ) = KCS(t ↦ (1 − t)D + tφ*D)` with `D` the Grassmann
/// connection; meaningful modulo exact forms.
pub fn odd_chern(k1: &K1Pair, k_max: usize) -> Result<Vec<AbClass>> {
    odd_chern_with(k1, &grassmann(k1.p()), k_max)
}

/// [`odd_chern`] with an explicit connection on `M`.
pub fn odd_chern_with(k1: &K1Pair, conn: &Connection, k_max: usize) -> Result<Vec<AbClass>> {
    if conn.p() != k1.p() {
        return Err(Error::IdempotentMismatch);
    }
    kcs_between(conn, &conn.pullback(&k1.aut)?, k_max)
}

/// Whether `g₀ − g₁` lies in `MK(A) = ker R`.
pub fn in_mk(g0: &KHatGen, g1: &KHatGen, k_max: usize) -> Result<bool> {
    Ok(map_r(g0, k_max)? == map_r(g1, k_max)?)
}

/// Per-degree exactness of `a − b` for graded lists indexed alike.
pub fn difference_certificates(a: &[AbClass], b: &[AbClass], degree_of: impl Fn(usize) -> usize) -> Result<Vec<DegreeCertificate>> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch(format!("{} classes against {}", a.len(), b.len())));
    }
    a.iter().zip(b).enumerate().map(|(i, (x, y))| DegreeCertificate::decide(degree_of(i), x.sub(y))).collect()
}
