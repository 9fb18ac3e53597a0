//! Property suites behind `kchern verify`. Each identity runs on seeded
//! random inputs per fixture and reports exact pass/fail with timing.

use std::time::Instant;

use kchern_core::algebra::{AlgebraHom, AlgebraRef};
use kchern_core::connections::{
    grassmann, random_automorphism, random_conjugate, random_connection, random_form, random_idempotent, trace_ab, Connection,
    FormMatrix, Idempotent, ModuleIso,
};
use kchern_core::exactmath::{rat, ratio, Poly1, Poly2, Rational};
use kchern_core::fixtures::{fixture, sample_hom, FIXTURE_NAMES};
use kchern_core::khat::{
    chain_witnesses, hexagon_check, matching_omega, odd_chern, odd_chern_with, verify_kcs_equivalence, DegreeCertificate, K1Pair,
    KCSWitness, KHatGen, HEXAGON_IDENTITIES,
};
use kchern_core::transgression::{
    bigon_straight, kcs_between, straight_line, three_point_path, BiForm, ClosedFormKcs, PolyPath, TForm,
};
use kchern_core::uforms::{abelianization, de_rham_homology, dimension, project_ab, AbClass, GradedForm, UForm};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::io::{certificate_to_json, CertificateJson};
use crate::CliError;

pub const SUITES: [&str; 4] = ["dga", "chern", "transgression", "hexagon"];

/// Random-input counts and limits for one run.
#[derive(Clone, Debug, PartialEq)]
pub struct SuiteConfig {
    pub seed: u64,
    pub k_max: usize,
    pub degree_cap: usize,
    /// Random forms per DGA identity and fixture.
    pub dga_cases: usize,
    /// Random `(p, θ)` per Chern identity and fixture.
    pub chern_cases: usize,
    /// Random paths, pairs or triples per transgression identity and fixture.
    pub path_cases: usize,
    /// Paths per fixture in the closed-form comparison.
    pub closed_form_cases: usize,
    /// Cylinder forms per fixture in the homotopy formula.
    pub homotopy_cases: usize,
    /// Restricts the run to these fixtures; empty means all.
    pub fixtures: Vec<String>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 7,
            k_max: 2,
            degree_cap: 6,
            dga_cases: 200,
            chern_cases: 25,
            path_cases: 10,
            closed_form_cases: 25,
            homotopy_cases: 34,
            fixtures: Vec::new(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub name: String,
    pub status: Status,
    pub cases: usize,
    pub degrees: Vec<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub certificates: Vec<CertificateJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub elapsed_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SectionReport {
    pub suite: String,
    pub fixture: String,
    pub identities: Vec<IdentityReport>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub seed: u64,
    pub k_max: usize,
    pub degree_cap: usize,
    pub passed: bool,
    pub sections: Vec<SectionReport>,
    pub elapsed_ms: f64,
}

impl Report {
    /// Names of failed identities as `suite/fixture/name`.
    pub fn failures(&self) -> Vec<String> {
        self.sections
            .iter()
            .flat_map(|s| s.identities.iter().filter(|i| i.status == Status::Fail).map(move |i| format!("{}/{}/{}", s.suite, s.fixture, i.name)))
            .collect()
    }
}

/// Accumulates one identity's outcome.
struct Check {
    degrees: Vec<usize>,
    cases: usize,
    certificates: Vec<CertificateJson>,
    counterexample: Option<String>,
    note: Option<String>,
}

impl Check {
    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok && self.counterexample.is_none() {
            self.counterexample = Some(what());
        }
    }

    /// Records exactness certificates; keeps the primitives of the first
    /// case only so reports stay readable.
    fn certify(&mut self, certs: &[DegreeCertificate], label: &str) -> Result<(), CliError> {
        for c in certs {
            let ok = c.is_exact() && c.check()?;
            self.expect(ok, || format!("{label}: residual in degree {} is not exact", c.degree));
        }
        if self.certificates.is_empty() {
            self.certificates = certs.iter().map(certificate_to_json).collect::<Result<_, _>>()?;
        }
        Ok(())
    }
}

fn identity(name: &str, degrees: Vec<usize>, f: impl FnOnce(&mut Check) -> Result<(), CliError>) -> IdentityReport {
    let start = Instant::now();
    let mut c = Check { degrees, cases: 0, certificates: Vec::new(), counterexample: None, note: None };
    if let Err(e) = f(&mut c) {
        c.counterexample.get_or_insert_with(|| format!("error: {e}"));
    }
    IdentityReport {
        name: name.into(),
        status: if c.counterexample.is_none() { Status::Pass } else { Status::Fail },
        cases: c.cases,
        degrees: c.degrees,
        certificates: c.certificates,
        counterexample: c.counterexample,
        note: c.note,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    }
}

/// Per-fixture context with a stable RNG stream per identity.
pub struct Ctx<'a> {
    pub name: &'static str,
    pub alg: AlgebraRef,
    pub cfg: &'a SuiteConfig,
}

impl Ctx<'_> {
    fn rng(&self, identity: &str) -> ChaCha8Rng {
        // FNV-1a over the fixture and identity names, mixed with the seed.
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for b in self.name.bytes().chain([0]).chain(identity.bytes()) {
            h = (h ^ b as u64).wrapping_mul(0x0100_0000_01b3);
        }
        ChaCha8Rng::seed_from_u64(h ^ self.cfg.seed.wrapping_mul(0x9e37_79b9_7f4a_7c15))
    }

    /// Matrix size for random modules: 2 over the small algebras, 1 otherwise.
    fn size(&self) -> usize {
        if self.alg.dim() > 2 {
            1
        } else {
            2
        }
    }

    fn k(&self) -> usize {
        self.cfg.k_max
    }

    fn even_degrees(&self) -> Vec<usize> {
        (0..=self.k()).map(|k| 2 * k).collect()
    }

    fn odd_degrees(&self) -> Vec<usize> {
        (1..=self.k()).map(|k| 2 * k - 1).collect()
    }

    fn connection(&self, rng: &mut ChaCha8Rng) -> Result<Connection, CliError> {
        let p = random_idempotent(&self.alg, self.size(), rng)?;
        Ok(random_connection(&p, rng)?)
    }

    fn triple(&self, rng: &mut ChaCha8Rng) -> Result<(Connection, Connection, Connection), CliError> {
        let p = random_idempotent(&self.alg, self.size(), rng)?;
        Ok((random_connection(&p, rng)?, random_connection(&p, rng)?, random_connection(&p, rng)?))
    }
}

fn sign(degree: usize) -> Rational {
    if degree.is_multiple_of(2) {
        rat(1)
    } else {
        rat(-1)
    }
}

fn sum(cs: &[AbClass], alg: &AlgebraRef) -> AbClass {
    cs.iter().fold(AbClass::zero(alg), |a, b| a.add(b))
}

fn certificates(a: &[AbClass], b: &[AbClass], degree_of: impl Fn(usize) -> usize) -> Result<Vec<DegreeCertificate>, CliError> {
    Ok(kchern_core::khat::difference_certificates(a, b, degree_of)?)
}

/// Runs `suite` (one of [`SUITES`] or `"all"`) over the configured fixtures.
pub fn run_suite(suite: &str, cfg: &SuiteConfig) -> Result<Report, CliError> {
    let suites: Vec<&str> = match suite {
        "all" => SUITES.to_vec(),
        s if SUITES.contains(&s) => vec![s],
        s => return Err(CliError::Validation(format!("unknown suite {s:?}; expected one of {}, all", SUITES.join(", ")))),
    };
    for f in &cfg.fixtures {
        if !FIXTURE_NAMES.contains(&f.as_str()) {
            return Err(CliError::Validation(format!("unknown fixture {f:?}; expected one of {}", FIXTURE_NAMES.join(", "))));
        }
    }
    if cfg.k_max == 0 || cfg.degree_cap < 2 * cfg.k_max + 2 {
        return Err(CliError::Validation(format!(
            "k_max = {} needs a degree cap of at least {}",
            cfg.k_max,
            2 * cfg.k_max + 2
        )));
    }
    let start = Instant::now();
    let mut sections = Vec::new();
    for s in suites {
        for name in FIXTURE_NAMES {
            if !cfg.fixtures.is_empty() && !cfg.fixtures.iter().any(|f| f == name) {
                continue;
            }
            let ctx = Ctx { name, alg: fixture(name, cfg.degree_cap)?, cfg };
            let identities = match s {
                "dga" => dga(&ctx),
                "chern" => chern(&ctx),
                "transgression" => transgression(&ctx),
                _ => hexagon(&ctx)?,
            };
            sections.push(SectionReport { suite: s.into(), fixture: name.into(), identities });
        }
    }
    let passed = sections.iter().all(|s| s.identities.iter().all(|i| i.status == Status::Pass));
    Ok(Report {
        suite: suite.into(),
        seed: cfg.seed,
        k_max: cfg.k_max,
        degree_cap: cfg.degree_cap,
        passed,
        sections,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

// ---------------------------------------------------------------- dga

/// Degree triples with `p + q + r ≤ 5`, so products and their
/// differentials stay under a cap of 6.
fn small_degrees(rng: &mut ChaCha8Rng, count: usize) -> Vec<usize> {
    loop {
        let ds: Vec<usize> = (0..count).map(|_| rng.random_range(0..=5)).collect();
        if ds.iter().sum::<usize>() <= 5 {
            return ds;
        }
    }
}

pub fn dga(ctx: &Ctx) -> Vec<IdentityReport> {
    let a = &ctx.alg;
    let n = ctx.cfg.dga_cases;
    let top = ctx.cfg.degree_cap.min(6);
    vec![
        identity("word_count", (0..=top).collect(), |c| {
            let m = a.dim();
            for d in 0..=top {
                let expected = m * (m - 1).pow(d as u32);
                c.expect(dimension(m, d) == expected, || format!("dim Ω^u_{d} ≠ m(m−1)^{d}"));
                if d < ctx.cfg.degree_cap && d <= 4 {
                    c.expect(abelianization(a, d)?.ambient_dim() == expected, || format!("word basis of degree {d} has the wrong size"));
                }
                c.cases += 1;
            }
            Ok(())
        }),
        identity("homology", (0..=4).collect(), |c| {
            let mut dims = Vec::new();
            for d in 0..=4usize.min(ctx.cfg.degree_cap - 1) {
                let h = de_rham_homology(a, d)?;
                for r in &h.representatives {
                    c.expect(project_ab(&r.differential())?.is_zero(), || format!("representative in degree {d} is not closed"));
                    c.expect(!project_ab(r)?.is_exact()?, || format!("representative in degree {d} is exact"));
                }
                dims.push(h.dimension);
                c.cases += 1;
            }
            if ctx.name == "Q" {
                c.expect(dims.iter().enumerate().all(|(d, &h)| h == usize::from(d == 0)), || format!("H(ℚ) = {dims:?}"));
            }
            c.note = Some(format!("dims {dims:?}"));
            Ok(())
        }),
        identity("d_squared_is_zero", (0..=4).collect(), |c| {
            let mut rng = ctx.rng("d_squared_is_zero");
            for i in 0..n {
                let d = rng.random_range(0..=4);
                let w = random_form(a, &mut rng, d, 3);
                c.expect(w.differential().differential().is_zero(), || format!("case {i}: d²ω ≠ 0 in degree {d}"));
                c.cases += 1;
            }
            Ok(())
        }),
        identity("graded_leibniz", (0..=5).collect(), |c| {
            let mut rng = ctx.rng("graded_leibniz");
            for i in 0..n {
                let ds = small_degrees(&mut rng, 2);
                let (x, y) = (random_form(a, &mut rng, ds[0], 3), random_form(a, &mut rng, ds[1], 3));
                let lhs = x.mul(&y)?.differential();
                let rhs = x.differential().mul(&y)?.add(&x.mul(&y.differential())?.scale(&sign(ds[0])));
                c.expect(lhs == rhs, || format!("case {i}: Leibniz fails in degrees {ds:?}"));
                c.cases += 1;
            }
            Ok(())
        }),
        identity("associativity", (0..=5).collect(), |c| {
            let mut rng = ctx.rng("associativity");
            for i in 0..n {
                let ds = small_degrees(&mut rng, 3);
                let f: Vec<UForm> = ds.iter().map(|&d| random_form(a, &mut rng, d, 3)).collect();
                let ok = f[0].mul(&f[1])?.mul(&f[2])? == f[0].mul(&f[1].mul(&f[2])?)?;
                c.expect(ok, || format!("case {i}: (xy)z ≠ x(yz) in degrees {ds:?}"));
                c.cases += 1;
            }
            Ok(())
        }),
        identity("unit", (0..=5).collect(), |c| {
            let mut rng = ctx.rng("unit");
            let one = UForm::one(a);
            for i in 0..n {
                let deg = rng.random_range(0..=5);
                let w = random_form(a, &mut rng, deg, 3);
                c.expect(one.mul(&w)? == w && w.mul(&one)? == w, || format!("case {i}: 1 is not a two-sided unit"));
                c.cases += 1;
            }
            Ok(())
        }),
    ]
}

// ---------------------------------------------------------------- chern

fn random_matrix(a: &AlgebraRef, n: usize, degree: usize, rng: &mut ChaCha8Rng) -> FormMatrix {
    FormMatrix::from_fn(a, n, n, |_, _| random_form(a, rng, degree, 2))
}

pub fn chern(ctx: &Ctx) -> Vec<IdentityReport> {
    let a = &ctx.alg;
    let n = ctx.cfg.chern_cases;
    let k = ctx.k();
    vec![
        identity("curvature_is_square_of_connection", vec![2], |c| {
            let mut rng = ctx.rng("curvature_is_square_of_connection");
            for i in 0..n {
                let conn = ctx.connection(&mut rng)?;
                let deg = rng.random_range(0..=1);
                let x = conn.p().matrix().mul(&random_matrix(a, conn.size(), deg, &mut rng))?;
                let ok = conn.apply(&conn.apply(&x)?)? == conn.curvature()?.mul(&x)?;
                c.expect(ok, || format!("case {i}: D²X ≠ R·X"));
                c.cases += 1;
            }
            Ok(())
        }),
        identity("trace_cyclicity", (0..=4).collect(), |c| {
            let mut rng = ctx.rng("trace_cyclicity");
            for i in 0..n {
                let (p, q) = (rng.random_range(0..=2), rng.random_range(0..=2));
                let (x, y) = (random_matrix(a, 2, p, &mut rng), random_matrix(a, 2, q, &mut rng));
                let ok = trace_ab(&x.mul(&y)?)? == trace_ab(&y.mul(&x)?)?.scale(&sign(p * q));
                c.expect(ok, || format!("case {i}: tr(XY) ≠ ±tr(YX) in degrees ({p}, {q})"));
                c.cases += 1;
            }
            Ok(())
        }),
        identity("chern_is_closed", ctx.even_degrees(), |c| {
            let mut rng = ctx.rng("chern_is_closed");
            for i in 0..n {
                for (j, ch) in ctx.connection(&mut rng)?.chern(k)?.iter().enumerate() {
                    c.expect(ch.differential()?.is_zero(), || format!("case {i}: d̄ ch_{j} ≠ 0"));
                }
                c.cases += 1;
            }
            Ok(())
        }),
        identity("chern_is_additive", ctx.even_degrees(), |c| {
            let mut rng = ctx.rng("chern_is_additive");
            for i in 0..n {
                let (c1, c2) = (ctx.connection(&mut rng)?, ctx.connection(&mut rng)?);
                let (x, y, s) = (c1.chern(k)?, c2.chern(k)?, c1.direct_sum(&c2)?.chern(k)?);
                for j in 0..=k {
                    c.expect(s[j] == x[j].add(&y[j]), || format!("case {i}: ch_{j}(D ⊕ D′) ≠ ch_{j}(D) + ch_{j}(D′)"));
                }
                c.cases += 1;
            }
            Ok(())
        }),
        identity("ch0_is_trace_of_p", vec![0], |c| {
            let mut rng = ctx.rng("ch0_is_trace_of_p");
            for i in 0..n {
                let p = random_idempotent(a, ctx.size(), &mut rng)?;
                let diag = (0..p.size()).fold(UForm::zero(a), |acc, j| acc.add(p.matrix().get(j, j)));
                let ok = grassmann(&p).chern(0)?[0] == project_ab(&diag)? && random_connection(&p, &mut rng)?.chern(0)?[0] == project_ab(&diag)?;
                c.expect(ok, || format!("case {i}: ch₀ ≠ [Σ p_ii]"));
                c.cases += 1;
            }
            Ok(())
        }),
        identity("chern_independent_of_connection", ctx.even_degrees(), |c| {
            let mut rng = ctx.rng("chern_independent_of_connection");
            for i in 0..n {
                let p = random_idempotent(a, ctx.size(), &mut rng)?;
                let x = random_connection(&p, &mut rng)?.chern(k)?;
                let y = random_connection(&p, &mut rng)?.chern(k)?;
                c.certify(&certificates(&x, &y, |j| 2 * j)?, &format!("case {i}"))?;
                c.cases += 1;
            }
            Ok(())
        }),
        identity("chern_pullback_invariance", ctx.even_degrees(), |c| {
            let mut rng = ctx.rng("chern_pullback_invariance");
            for i in 0..n {
                let p = random_idempotent(a, ctx.size(), &mut rng)?;
                let phi = random_conjugate(&p, &mut rng)?;
                let conn = random_connection(phi.target(), &mut rng)?;
                c.expect(conn.pullback(&phi)?.chern(k)? == conn.chern(k)?, || format!("case {i}: ch(φ*D) ≠ ch(D)"));
                c.cases += 1;
            }
            Ok(())
        }),
        identity("chern_naturality", ctx.even_degrees(), |c| {
            let psi = sample_hom(ctx.name, ctx.cfg.degree_cap)?;
            let mut rng = ctx.rng("chern_naturality");
            for i in 0..n {
                let conn = ctx.connection(&mut rng)?;
                let mapped = conn.chern(k)?.iter().map(|x| psi.apply_class(x)).collect::<Result<Vec<_>, _>>()?;
                c.expect(conn.extend_scalars(&psi)?.chern(k)? == mapped, || format!("case {i}: ch(ψ_*D) ≠ ψ(ch D)"));
                c.cases += 1;
            }
            Ok(())
        }),
    ]
}

// ---------------------------------------------------------------- transgression

fn random_poly(rng: &mut ChaCha8Rng, c: &Rational) -> Poly1 {
    Poly1::new((0..3).map(|_| rat(rng.random_range(-2..=2)) * c).collect())
}

fn random_tform(a: &AlgebraRef, rng: &mut ChaCha8Rng, degree: usize) -> Result<TForm, CliError> {
    let base = random_form(a, rng, degree, 2);
    let dt = if degree > 0 { random_form(a, rng, degree - 1, 2) } else { UForm::zero(a) };
    let base = base.map_coeffs(|_, c| random_poly(rng, c));
    let dt = dt.map_coeffs(|_, c| random_poly(rng, c));
    Ok(TForm::new(base, dt)?)
}

fn random_square_biform(a: &AlgebraRef, rng: &mut ChaCha8Rng, degree: usize) -> BiForm {
    let top = random_form(a, rng, degree, 3).map_coeffs(|_, c| {
        let mut q = Poly2::constant(rat(0));
        for _ in 0..3 {
            q = q + Poly2::monomial(c * rat(rng.random_range(-2..=2)), rng.random_range(0..3), rng.random_range(0..3));
        }
        q
    });
    let z = UForm::zero(a);
    BiForm { one: z.clone(), ds: z.clone(), dt: z, dsdt: top }
}

pub fn transgression(ctx: &Ctx) -> Vec<IdentityReport> {
    let a = &ctx.alg;
    let n = ctx.cfg.path_cases;
    let k = ctx.k();
    let odd = || ctx.odd_degrees();
    vec![
        identity("homotopy_formula", (0..=4).collect(), |c| {
            let mut rng = ctx.rng("homotopy_formula");
            for i in 0..ctx.cfg.homotopy_cases {
                let deg = rng.random_range(1..=4);
                let w = random_tform(a, &mut rng, deg)?;
                let lhs = w.differential().homotopy_k().add(&w.homotopy_k().differential());
                c.expect(lhs == w.ev(&rat(1)).sub(&w.ev(&rat(0))), || format!("case {i}: (Kd + dK)φ ≠ φ(1) − φ(0)"));
                c.cases += 1;
            }
            Ok(())
        }),
        identity("kcs_differential_is_chern_difference", ctx.even_degrees(), |c| {
            let mut rng = ctx.rng("kcs_differential_is_chern_difference");
            for i in 0..n {
                let (c0, c1, c2) = ctx.triple(&mut rng)?;
                let path = if i % 2 == 0 { straight_line(&c0, &c1)? } else { three_point_path(&c0, &c2, &c1)? };
                let kcs = path.kcs(k)?;
                let (ch0, ch1) = (c0.chern(k)?, c1.chern(k)?);
                for j in 1..=k {
                    c.expect(kcs[j - 1].differential()? == ch1[j].sub(&ch0[j]), || format!("case {i}: d KCS_{j} ≠ ch_{j}(D₁) − ch_{j}(D₀)"));
                }
                c.cases += 1;
            }
            Ok(())
        }),
        identity("reversal_negates", odd(), |c| {
            let mut rng = ctx.rng("reversal_negates");
            for i in 0..n {
                let (c0, c1, _) = ctx.triple(&mut rng)?;
                let path = straight_line(&c0, &c1)?;
                let back: Vec<AbClass> = path.reverse().kcs(k)?;
                c.expect(back == path.kcs(k)?.iter().map(AbClass::neg).collect::<Vec<_>>(), || format!("case {i}: KCS(D̄) ≠ −KCS(D)"));
                c.cases += 1;
            }
            Ok(())
        }),
        identity("constant_path_vanishes", odd(), |c| {
            let mut rng = ctx.rng("constant_path_vanishes");
            for i in 0..n {
                let conn = ctx.connection(&mut rng)?;
                c.expect(PolyPath::constant(&conn).kcs(k)?.iter().all(AbClass::is_zero), || format!("case {i}: KCS of a constant path ≠ 0"));
                c.cases += 1;
            }
            Ok(())
        }),
        identity("direct_sum_additivity", odd(), |c| {
            let mut rng = ctx.rng("direct_sum_additivity");
            for i in 0..n {
                let (a0, a1, _) = ctx.triple(&mut rng)?;
                let (b0, b1, _) = ctx.triple(&mut rng)?;
                let (pa, pb) = (straight_line(&a0, &a1)?, straight_line(&b0, &b1)?);
                let (x, y, s) = (pa.kcs(k)?, pb.kcs(k)?, pa.direct_sum(&pb)?.kcs(k)?);
                c.expect((0..k).all(|j| s[j] == x[j].add(&y[j])), || format!("case {i}: KCS(D ⊕ D′) ≠ KCS(D) + KCS(D′)"));
                c.cases += 1;
            }
            Ok(())
        }),
        identity("pullback_invariance", odd(), |c| {
            let mut rng = ctx.rng("pullback_invariance");
            for i in 0..n {
                let p = random_idempotent(a, ctx.size(), &mut rng)?;
                let phi = random_conjugate(&p, &mut rng)?;
                let q = phi.target();
                let path = straight_line(&random_connection(q, &mut rng)?, &random_connection(q, &mut rng)?)?;
                c.expect(path.pullback(&phi)?.kcs(k)? == path.kcs(k)?, || format!("case {i}: KCS(φ*D) ≠ KCS(D)"));
                let square = Poly1::new(vec![rat(0), rat(0), rat(1)]);
                c.expect(path.reparametrize(&square).kcs(k)? == path.kcs(k)?, || format!("case {i}: KCS changes under t ↦ t²"));
                c.cases += 1;
            }
            Ok(())
        }),
        identity("hom_naturality", odd(), |c| {
            let psi: AlgebraHom = sample_hom(ctx.name, ctx.cfg.degree_cap)?;
            let mut rng = ctx.rng("hom_naturality");
            for i in 0..n {
                let (c0, c1, _) = ctx.triple(&mut rng)?;
                let path = straight_line(&c0, &c1)?;
                let mapped = path.kcs(k)?.iter().map(|x| psi.apply_class(x)).collect::<Result<Vec<_>, _>>()?;
                c.expect(path.induced(&psi)?.kcs(k)? == mapped, || format!("case {i}: KCS(ψ_*D) ≠ ψ(KCS D)"));
                c.cases += 1;
            }
            Ok(())
        }),
        identity("ev_compatibility", ctx.even_degrees(), |c| {
            let mut rng = ctx.rng("ev_compatibility");
            for i in 0..n {
                let (c0, c1, c2) = ctx.triple(&mut rng)?;
                let path = three_point_path(&c0, &c1, &c2)?;
                let cyl = path.cylinder_chern(k)?;
                for (t, conn) in [(rat(0), &c0), (ratio(1, 2), &c1), (rat(1), &c2)] {
                    let ch = conn.chern(k)?;
                    c.expect((0..=k).all(|j| cyl[j].ev(&t) == ch[j]), || format!("case {i}: ev_{t} ch(D̃) ≠ ch(D_{t})"));
                }
                c.cases += 1;
            }
            Ok(())
        }),
        identity("secondary_transgression", odd(), |c| {
            let mut rng = ctx.rng("secondary_transgression");
            for i in 0..n {
                let (c0, c1, c2) = ctx.triple(&mut rng)?;
                let (p1, p2) = (straight_line(&c0, &c1)?, three_point_path(&c0, &c2, &c1)?);
                let pot = bigon_straight(&p1, &p2)?.secondary_transgression(k)?;
                let (k1, k2) = (p1.kcs(k)?, p2.kcs(k)?);
                for j in 0..k {
                    c.expect(pot[j].differential()? == k1[j].sub(&k2[j]), || format!("case {i}: d(KK₁ch) ≠ KCS(path₁) − KCS(path₂) for k = {}", j + 1));
                }
                c.cases += 1;
            }
            Ok(())
        }),
        identity("iterated_homotopies_commute", (0..=3).collect(), |c| {
            let mut rng = ctx.rng("iterated_homotopies_commute");
            for i in 0..n {
                let deg = rng.random_range(0..=3);
                let b = random_square_biform(a, &mut rng, deg);
                c.expect(b.k1().homotopy_k() == b.k2().homotopy_k(), || format!("case {i}: KK₁ ≠ KK₂"));
                c.cases += 1;
            }
            Ok(())
        }),
        identity("triangle_mod_exact", odd(), |c| {
            let mut rng = ctx.rng("triangle_mod_exact");
            for i in 0..n {
                let (c1, c2, c3) = ctx.triple(&mut rng)?;
                let direct = kcs_between(&c1, &c3, k)?;
                let via: Vec<AbClass> = kcs_between(&c1, &c2, k)?.iter().zip(kcs_between(&c2, &c3, k)?).map(|(x, y)| x.add(&y)).collect();
                // The three-point path through D₂ bounds the same bigon.
                let through = three_point_path(&c1, &c2, &c3)?.kcs(k)?;
                c.certify(&certificates(&direct, &via, |j| 2 * j + 1)?, &format!("case {i}"))?;
                c.certify(&certificates(&through, &direct, |j| 2 * j + 1)?, &format!("case {i} (quadratic path)"))?;
                c.cases += 1;
            }
            Ok(())
        }),
        identity("closed_form_agreement", odd(), |c| {
            let closed = ClosedFormKcs::calibrate(k)?;
            c.note = Some(format!("calibrated signs {:?}", closed.signs()));
            let mut rng = ctx.rng("closed_form_agreement");
            for i in 0..ctx.cfg.closed_form_cases {
                let (c0, c1, c2) = ctx.triple(&mut rng)?;
                let path = if i % 2 == 0 { straight_line(&c0, &c1)? } else { three_point_path(&c0, &c2, &c1)? };
                c.expect(closed.evaluate(&path, k)? == path.kcs(k)?, || format!("case {i}: closed form ≠ KCS"));
                c.cases += 1;
            }
            Ok(())
        }),
    ]
}

// ---------------------------------------------------------------- hexagon

fn random_odd_class(a: &AlgebraRef, rng: &mut ChaCha8Rng, k_max: usize) -> Result<AbClass, CliError> {
    let w = (1..=k_max).fold(UForm::zero(a), |acc, j| acc.add(&random_form(a, rng, 2 * j - 1, 2)));
    Ok(project_ab(&w)?)
}

fn random_generator(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Result<KHatGen, CliError> {
    let conn = ctx.connection(rng)?;
    Ok(KHatGen::new(conn, random_odd_class(&ctx.alg, rng, ctx.k())?)?)
}

/// `φ = c ⊕ id: M₀ ⊕ N → gM₀g⁻¹ ⊕ N` with `N` free of rank one and the
/// target connection random; `ω₁` is chosen to make the pair equivalent.
fn stabilized(ctx: &Ctx, rng: &mut ChaCha8Rng, g0: &KHatGen) -> Result<(KHatGen, KCSWitness), CliError> {
    let a = &ctx.alg;
    let conj = random_conjugate(g0.p(), rng)?;
    let n = if rng.random_bool(0.5) { Idempotent::identity(a, 1) } else { random_idempotent(a, 1, rng)? };
    let stab = random_connection(&n, rng)?;
    let w = KCSWitness::new(stab, conj.direct_sum(&ModuleIso::identity(&n))?)?;
    let d1 = random_connection(conj.target(), rng)?;
    let omega1 = matching_omega(g0, &d1, &w, ctx.k())?;
    Ok((KHatGen::new(d1, omega1)?, w))
}

fn exact_difference(x: &[AbClass], y: &[AbClass]) -> Result<bool, CliError> {
    for (a, b) in x.iter().zip(y) {
        if !a.sub(b).is_exact()? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn hexagon(ctx: &Ctx) -> Result<Vec<IdentityReport>, CliError> {
    let a = &ctx.alg;
    let k = ctx.k();
    let n = ctx.cfg.path_cases.clamp(1, 4);
    let psi = sample_hom(ctx.name, ctx.cfg.degree_cap)?;
    let mut out = Vec::new();
    for name in HEXAGON_IDENTITIES {
        let start = Instant::now();
        let report = match hexagon_check(name, a, Some(&psi), ctx.cfg.seed, k) {
            Ok(check) => IdentityReport {
                name: check.name.clone(),
                status: if check.passed { Status::Pass } else { Status::Fail },
                cases: check.cases,
                degrees: check.degrees.clone(),
                certificates: check.certificates.iter().take(k + 1).map(certificate_to_json).collect::<Result<_, _>>()?,
                counterexample: check.counterexample.clone(),
                note: None,
                elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
            },
            Err(e) => IdentityReport {
                name: name.into(),
                status: Status::Fail,
                cases: 0,
                degrees: Vec::new(),
                certificates: Vec::new(),
                counterexample: Some(format!("error: {e}")),
                note: None,
                elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
            },
        };
        out.push(report);
    }
    let odd = ctx.odd_degrees();
    out.push(identity("kcs_equivalence_reflexive", odd.clone(), |c| {
        let mut rng = ctx.rng("kcs_equivalence_reflexive");
        for i in 0..n {
            let g = random_generator(ctx, &mut rng)?;
            let v = verify_kcs_equivalence(&g, &g, &KCSWitness::trivial(g.p()), k)?;
            c.expect(v.accepted, || format!("case {i}: g ∼ g rejected"));
            c.cases += 1;
        }
        Ok(())
    }));
    out.push(identity("kcs_equivalence_constructed_omega", odd.clone(), |c| {
        let mut rng = ctx.rng("kcs_equivalence_constructed_omega");
        for i in 0..n {
            let d0 = ctx.connection(&mut rng)?;
            let d1 = random_connection(d0.p(), &mut rng)?;
            let g0 = KHatGen::new(d0.clone(), AbClass::zero(a))?;
            let g1 = KHatGen::new(d1.clone(), sum(&kcs_between(&d0, &d1, k)?, a).neg())?;
            let w = KCSWitness::trivial(d0.p());
            let v = verify_kcs_equivalence(&g0, &g1, &w, k)?;
            c.expect(v.accepted, || format!("case {i}: (p, D, 0) ∼ (p, D′, −KCS(D, D′)) rejected"));
            c.certify(&v.degrees, &format!("case {i}"))?;
            c.expect(verify_kcs_equivalence(&g1, &g0, &w.inverse(), k)?.accepted, || format!("case {i}: symmetric relation rejected"));
            c.cases += 1;
        }
        Ok(())
    }));
    out.push(identity("kcs_equivalence_stabilized", odd.clone(), |c| {
        let mut rng = ctx.rng("kcs_equivalence_stabilized");
        for i in 0..n {
            let g0 = random_generator(ctx, &mut rng)?;
            let (g1, w) = stabilized(ctx, &mut rng, &g0)?;
            let v = verify_kcs_equivalence(&g0, &g1, &w, k)?;
            c.expect(v.accepted, || format!("case {i}: stabilized witness rejected"));
            c.certify(&v.degrees, &format!("case {i}"))?;
            c.cases += 1;
        }
        Ok(())
    }));
    out.push(identity("kcs_equivalence_chained", odd.clone(), |c| {
        let mut rng = ctx.rng("kcs_equivalence_chained");
        for i in 0..n {
            let g0 = random_generator(ctx, &mut rng)?;
            let (g1, w01) = stabilized(ctx, &mut rng, &g0)?;
            let (g2, w12) = stabilized(ctx, &mut rng, &g1)?;
            let w02 = chain_witnesses(&g1, &g2, &w01, &w12)?;
            let v = verify_kcs_equivalence(&g0, &g2, &w02, k)?;
            c.expect(v.accepted, || format!("case {i}: chained witness rejected"));
            c.certify(&v.degrees, &format!("case {i}"))?;
            c.cases += 1;
        }
        Ok(())
    }));
    out.push(identity("nonexact_perturbation_rejected", odd.clone(), |c| perturbation(ctx, c)));
    out.push(identity("odd_chern_laws", odd, |c| {
        let mut rng = ctx.rng("odd_chern_laws");
        let size = ctx.size();
        let free = |rng: &mut ChaCha8Rng, s: usize| -> Result<K1Pair, CliError> { Ok(K1Pair::new(random_automorphism(a, s, rng)?)?) };
        let add = |x: Vec<AbClass>, y: Vec<AbClass>| -> Vec<AbClass> { x.iter().zip(&y).map(|(p, q)| p.add(q)).collect() };
        for i in 0..n {
            let id = K1Pair::new(ModuleIso::identity(&Idempotent::identity(a, size)))?;
            c.expect(odd_chern(&id, k)?.iter().all(|x| x.is_exact().unwrap_or(false)), || format!("case {i}: ch(1) is not exact"));
            let (u1, u2, v) = (free(&mut rng, size)?, free(&mut rng, size)?, free(&mut rng, 1)?);
            let ok = exact_difference(&odd_chern(&u1.compose(&u2)?, k)?, &add(odd_chern(&u1, k)?, odd_chern(&u2, k)?))?;
            c.expect(ok, || format!("case {i}: ch(uv) ≢ ch(u) + ch(v)"));
            let ok = exact_difference(&odd_chern(&u1.direct_sum(&v)?, k)?, &add(odd_chern(&u1, k)?, odd_chern(&v, k)?))?;
            c.expect(ok, || format!("case {i}: ch(u ⊕ v) ≢ ch(u) + ch(v)"));
            let other = random_connection(u1.p(), &mut rng)?;
            let ok = exact_difference(&odd_chern(&u1, k)?, &odd_chern_with(&u1, &other, k)?)?;
            c.expect(ok, || format!("case {i}: odd character depends on the connection"));
            c.cases += 1;
        }
        Ok(())
    }));
    Ok(out)
}

/// Adds a non-exact form to an accepted `ω` and expects the relation to
/// fail. Every fixture has zero odd homology, so no closed non-exact odd
/// form exists; over `ℚ[x]/(x³)` and `M₂` the perturbation is a non-exact
/// odd class, and over `ℚ×ℚ` and `ℚ[C₂]` it is the closed non-exact even
/// class `ch₁(e)`, which the generator constructor must refuse.
fn perturbation(ctx: &Ctx, c: &mut Check) -> Result<(), CliError> {
    let a = &ctx.alg;
    let k = ctx.k();
    let mut rng = ctx.rng("nonexact_perturbation_rejected");
    match ctx.name {
        "trunc3" | "M2" => {
            let n = ctx.cfg.path_cases.clamp(1, 4);
            for i in 0..n {
                let g0 = random_generator(ctx, &mut rng)?;
                let (g1, w) = stabilized(ctx, &mut rng, &g0)?;
                let bump = (0..64)
                    .map(|_| random_odd_class(a, &mut rng, k))
                    .find(|x| x.as_ref().map(|x| !x.is_exact().unwrap_or(true)).unwrap_or(false))
                    .transpose()?;
                let Some(bump) = bump else {
                    c.expect(false, || format!("case {i}: no non-exact odd class found"));
                    continue;
                };
                let perturbed = KHatGen::new(g1.conn().clone(), g1.omega().add(&bump))?;
                let v = verify_kcs_equivalence(&g0, &perturbed, &w, k)?;
                c.expect(!v.accepted, || format!("case {i}: perturbed ω accepted"));
                c.expect(v.degrees.iter().any(|d| !d.is_exact()), || format!("case {i}: no degree flagged"));
                c.cases += 1;
            }
            c.note = Some("odd homology vanishes, so the perturbation is a non-exact odd class that is not closed".into());
        }
        "QxQ" | "QC2" => {
            // e = (1, 0) in ℚ×ℚ and (1 + g)/2 in ℚ[C₂].
            let e = if ctx.name == "QxQ" { vec![rat(0), rat(1)] } else { vec![ratio(1, 2), ratio(1, 2)] };
            let p = Idempotent::from_elements(a, 1, &[kchern_core::algebra::AlgElement::new(e)])?;
            let ch1 = grassmann(&p).chern(1)?[1].clone();
            c.expect(ch1.differential()?.is_zero() && !ch1.is_exact()?, || "ch₁ of the idempotent is not a nonzero class in H₂".into());
            let g0 = random_generator(ctx, &mut rng)?;
            let refused = KHatGen::new(g0.conn().clone(), g0.omega().add(&ch1)).is_err();
            c.expect(refused, || "generator with even perturbation accepted".into());
            c.note = Some("no closed non-exact odd form exists here; the non-exact class ch₁ lies in H₂ and is refused as an ω component".into());
            c.cases += 1;
        }
        _ => {
            c.note = Some("every odd class is exact here, so no perturbation exists".into());
        }
    }
    Ok(())
}
