use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{in_mk, map_a, map_i, map_r, DegreeCertificate, KHatGen};
use crate::algebra::{AlgebraHom, AlgebraRef};
use crate::connections::{grassmann, random_connection, random_form, random_idempotent, Connection};
use crate::error::{Error, Result};
use crate::transgression::kcs_between;
use crate::uforms::{project_ab, AbClass, UForm};

/// Names of the hexagon identities, in the order [`hexagon_suite`] runs
/// them.
pub const HEXAGON_IDENTITIES: [&str; 5] = [
    "R_after_a_is_d",
    "Pr_after_R_is_ch_after_I",
    "a_after_r_is_incl_after_alpha",
    "beta_is_I_after_incl",
    "naturality",
];

const CASES: usize = 4;

/// Outcome of one identity over several random inputs.
#[derive(Clone, Debug, PartialEq)]
pub struct IdentityCheck {
    pub name: String,
    pub passed: bool,
    pub cases: usize,
    pub degrees: Vec<usize>,
    /// Primitives for identities that hold modulo exact forms.
    pub certificates: Vec<DegreeCertificate>,
    pub counterexample: Option<String>,
}

impl IdentityCheck {
    fn new(name: &str, k_max: usize, odd: bool) -> Self {
        let degrees = (0..=k_max).map(|k| if odd { 2 * k + 1 } else { 2 * k }).filter(|&d| !odd || d < 2 * k_max).collect();
        IdentityCheck { name: name.into(), passed: true, cases: 0, degrees, certificates: Vec::new(), counterexample: None }
    }

    fn fail(&mut self, what: String) {
        if self.passed {
            self.passed = false;
            self.counterexample = Some(what);
        }
    }
}

fn module_size(alg: &AlgebraRef) -> usize {
    if alg.dim() > 2 {
        1
    } else {
        2
    }
}

/// An odd class with components in degrees `1, 3, …, 2k_max − 1`.
fn random_odd_class<R: Rng + ?Sized>(alg: &AlgebraRef, rng: &mut R, k_max: usize) -> Result<AbClass> {
    let mut w = UForm::zero(alg);
    for k in 1..=k_max {
        w = w.add(&random_form(alg, rng, 2 * k - 1, 2));
    }
    project_ab(&w)
}

/// `d̄η` for a random even `η` of degree below `2k_max − 1`: closed and odd.
fn random_closed_odd_class<R: Rng + ?Sized>(alg: &AlgebraRef, rng: &mut R, k_max: usize) -> Result<AbClass> {
    let mut w = UForm::zero(alg);
    for k in 0..k_max {
        w = w.add(&random_form(alg, rng, 2 * k, 2));
    }
    project_ab(&w)?.differential()
}

fn random_generator<R: Rng + ?Sized>(alg: &AlgebraRef, rng: &mut R, k_max: usize) -> Result<KHatGen> {
    let p = random_idempotent(alg, module_size(alg), rng)?;
    let conn = random_connection(&p, rng)?;
    KHatGen::new(conn, random_odd_class(alg, rng, k_max)?)
}

fn graded(classes: &[AbClass], alg: &AlgebraRef) -> AbClass {
    classes.iter().fold(AbClass::zero(alg), |acc, c| acc.add(c))
}

/// Runs one named hexagon identity on `CASES` random inputs drawn from
/// `seed`. `psi` is the map used by the naturality check; without one that
/// check is skipped and reported as passing with zero cases.
pub fn hexagon_check(name: &str, alg: &AlgebraRef, psi: Option<&AlgebraHom>, seed: u64, k_max: usize) -> Result<IdentityCheck> {
    let index = HEXAGON_IDENTITIES.iter().position(|&n| n == name).ok_or_else(|| Error::Invalid(format!("unknown hexagon identity {name:?}")))?;
    if k_max == 0 {
        return Err(Error::Invalid("k_max must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ index as u64);
    let rng = &mut rng;
    match index {
        0 => r_after_a(alg, rng, k_max),
        1 => pr_after_r(alg, rng, k_max),
        2 => a_after_r(alg, rng, k_max),
        3 => beta_is_i_after_incl(alg, rng, k_max),
        _ => naturality(alg, psi, rng, k_max),
    }
}

/// Every identity of [`HEXAGON_IDENTITIES`] on one algebra.
pub fn hexagon_suite(alg: &AlgebraRef, psi: Option<&AlgebraHom>, seed: u64, k_max: usize) -> Result<Vec<IdentityCheck>> {
    HEXAGON_IDENTITIES.iter().map(|name| hexagon_check(name, alg, psi, seed, k_max)).collect()
}

/// `R(a(ω)) = d̄ω` exactly.
fn r_after_a(alg: &AlgebraRef, rng: &mut ChaCha8Rng, k_max: usize) -> Result<IdentityCheck> {
    let mut out = IdentityCheck::new(HEXAGON_IDENTITIES[0], k_max, false);
    for case in 0..CASES {
        let omega = random_odd_class(alg, rng, k_max)?;
        let (g1, g0) = map_a(alg, &omega)?;
        let (r1, r0) = (map_r(&g1, k_max)?, map_r(&g0, k_max)?);
        let d_omega = omega.differential()?;
        for k in 0..=k_max {
            if r1[k].sub(&r0[k]) != d_omega.part(2 * k) {
                out.fail(format!("case {case}: R(a(ω)) and d̄ω differ in degree {}", 2 * k));
            }
        }
        out.cases += 1;
    }
    Ok(out)
}

/// `R(g) − ch(I(g))` is exact, with a primitive per degree.
fn pr_after_r(alg: &AlgebraRef, rng: &mut ChaCha8Rng, k_max: usize) -> Result<IdentityCheck> {
    let mut out = IdentityCheck::new(HEXAGON_IDENTITIES[1], k_max, false);
    for case in 0..CASES {
        let g = random_generator(alg, rng, k_max)?;
        let r = map_r(&g, k_max)?;
        let ch = grassmann(&map_i(&g)).chern(k_max)?;
        for k in 0..=k_max {
            let cert = DegreeCertificate::decide(2 * k, r[k].sub(&ch[k]))?;
            if !cert.is_exact() || !cert.check()? {
                out.fail(format!("case {case}: R(g) − ch(I(g)) is not exact in degree {}", 2 * k));
            }
            out.certificates.push(cert);
        }
        out.cases += 1;
    }
    Ok(out)
}

/// For closed `ω`, `α[ω]` and `a(r[ω])` are the same generator pair and it
/// lies in `MK(A)`.
fn a_after_r(alg: &AlgebraRef, rng: &mut ChaCha8Rng, k_max: usize) -> Result<IdentityCheck> {
    let mut out = IdentityCheck::new(HEXAGON_IDENTITIES[2], k_max, true);
    for case in 0..CASES {
        let omega = random_closed_odd_class(alg, rng, k_max)?;
        let alpha = (KHatGen::zero_module(alg, omega.clone())?, KHatGen::zero_module(alg, AbClass::zero(alg))?);
        let a_r = map_a(alg, &omega)?;
        if alpha != a_r {
            out.fail(format!("case {case}: α and a∘r give different generators"));
        }
        if !in_mk(&alpha.0, &alpha.1, k_max)? {
            out.fail(format!("case {case}: α(ω) is not in ker R"));
        }
        out.cases += 1;
    }
    Ok(out)
}

/// For `(p, D₀, 0) − (p, D₁, KCS(D₁, D₀)) ∈ MK(A)`, `β` and `I∘incl` both
/// return `[p] − [p]`.
fn beta_is_i_after_incl(alg: &AlgebraRef, rng: &mut ChaCha8Rng, k_max: usize) -> Result<IdentityCheck> {
    let mut out = IdentityCheck::new(HEXAGON_IDENTITIES[3], k_max, false);
    for case in 0..CASES {
        let p = random_idempotent(alg, module_size(alg), rng)?;
        let (d0, d1): (Connection, Connection) = (random_connection(&p, rng)?, random_connection(&p, rng)?);
        let g0 = KHatGen::new(d0.clone(), AbClass::zero(alg))?;
        let g1 = KHatGen::new(d1.clone(), graded(&kcs_between(&d1, &d0, k_max)?, alg))?;
        if !in_mk(&g0, &g1, k_max)? {
            out.fail(format!("case {case}: constructed pair is not in ker R"));
        }
        let beta = (g0.p().clone(), g1.p().clone());
        if beta != (map_i(&g0), map_i(&g1)) {
            out.fail(format!("case {case}: β and I∘incl disagree"));
        }
        out.cases += 1;
    }
    Ok(out)
}

/// `R`, `I` and `a` commute with extension of scalars along `psi`.
fn naturality(alg: &AlgebraRef, psi: Option<&AlgebraHom>, rng: &mut ChaCha8Rng, k_max: usize) -> Result<IdentityCheck> {
    let mut out = IdentityCheck::new(HEXAGON_IDENTITIES[4], k_max, false);
    let Some(psi) = psi else {
        return Ok(out);
    };
    for case in 0..CASES {
        let g = random_generator(alg, rng, k_max)?;
        let pushed = g.extend_scalars(psi)?;
        let r_pushed = map_r(&pushed, k_max)?;
        let pushed_r = map_r(&g, k_max)?.iter().map(|c| psi.apply_class(c)).collect::<Result<Vec<_>>>()?;
        if r_pushed != pushed_r {
            out.fail(format!("case {case}: R does not commute with ψ"));
        }
        if map_i(&pushed) != map_i(&g).extend_scalars(psi)? {
            out.fail(format!("case {case}: I does not commute with ψ"));
        }
        let (a1, a0) = map_a(alg, g.omega())?;
        if map_a(psi.target(), &psi.apply_class(g.omega())?)? != (a1.extend_scalars(psi)?, a0.extend_scalars(psi)?) {
            out.fail(format!("case {case}: a does not commute with ψ"));
        }
        out.cases += 1;
    }
    Ok(out)
}
