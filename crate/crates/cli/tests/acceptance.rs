//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. Runs without the test harness so the lines always show.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use kchern::suites::{run_suite, IdentityReport, Report, SuiteConfig, Status};
use kchern_core::fixtures::{fixture, FIXTURE_NAMES};
use kchern_core::uforms::{de_rham_homology, dimension};
use serde_json::Value;

struct Criterion {
    number: usize,
    title: &'static str,
    elapsed: Duration,
    limit: Option<Duration>,
    problems: Vec<String>,
}

impl Criterion {
    fn passed(&self) -> bool {
        self.problems.is_empty() && self.limit.is_none_or(|l| self.elapsed <= l)
    }

    fn print(&self) {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        let limit = self.limit.map(|l| format!(" / {}s", l.as_secs())).unwrap_or_default();
        println!("criterion {}: {verdict} ({:.2}s{limit}) {}", self.number, self.elapsed.as_secs_f64(), self.title);
        for p in self.problems.iter().take(10) {
            println!("    {p}");
        }
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn suite(name: &str, seed: u64) -> (Report, Duration) {
    let cfg = SuiteConfig { seed, ..SuiteConfig::default() };
    let (r, t) = timed(|| run_suite(name, &cfg));
    (r.unwrap_or_else(|e| panic!("{name} suite did not run: {e}")), t)
}

/// Every fixture section must contain each named identity, passing, with at
/// least `min_cases` cases.
fn require(report: &Report, names: &[&str], min_cases: usize, problems: &mut Vec<String>) {
    for section in &report.sections {
        for &name in names {
            match section.identities.iter().find(|i| i.name == name) {
                None => problems.push(format!("{}: {name} missing", section.fixture)),
                Some(i) => check(&section.fixture, i, min_cases, problems),
            }
        }
    }
    if report.sections.len() != FIXTURE_NAMES.len() {
        problems.push(format!("{} of {} fixtures ran", report.sections.len(), FIXTURE_NAMES.len()));
    }
}

fn check(fixture: &str, i: &IdentityReport, min_cases: usize, problems: &mut Vec<String>) {
    if i.status != Status::Pass {
        problems.push(format!("{fixture}: {} failed: {}", i.name, i.counterexample.as_deref().unwrap_or("")));
    }
    if i.cases < min_cases {
        problems.push(format!("{fixture}: {} ran {} cases, need {min_cases}", i.name, i.cases));
    }
}

fn find<'a>(report: &'a Report, fixture: &str, name: &str) -> Option<&'a IdentityReport> {
    report.sections.iter().find(|s| s.fixture == fixture)?.identities.iter().find(|i| i.name == name)
}

fn strip_timing(v: &mut Value) {
    match v {
        Value::Object(m) => {
            m.remove("elapsed_ms");
            m.values_mut().for_each(strip_timing);
        }
        Value::Array(a) => a.iter_mut().for_each(strip_timing),
        _ => {}
    }
}

fn main() -> ExitCode {
    let mut results = Vec::new();
    let secs = Duration::from_secs;

    let (dga, t_dga) = suite("dga", 7);
    let mut p = Vec::new();
    require(&dga, &["d_squared_is_zero", "graded_leibniz", "associativity"], 200, &mut p);
    for s in &dga.sections {
        for i in s.identities.iter().filter(|i| i.name != "word_count") {
            if i.degrees.iter().any(|&d| d > 5) {
                p.push(format!("{}: {} reaches degree above 5", s.fixture, i.name));
            }
        }
    }
    results.push(Criterion { number: 1, title: "d∘d = 0, Leibniz, associativity on 200 forms per fixture", elapsed: t_dga, limit: Some(secs(30)), problems: p });

    let mut p = Vec::new();
    let start = Instant::now();
    require(&dga, &["word_count", "homology"], 1, &mut p);
    for name in FIXTURE_NAMES {
        let a = fixture(name, 6).unwrap();
        let m = a.dim();
        for n in 0..=6 {
            let expected = m * (m - 1).pow(n as u32);
            let got = dimension(m, n);
            if got != expected {
                p.push(format!("{name}: degree {n} has {got} words, expected {expected}"));
            }
        }
    }
    let q = fixture("Q", 6).unwrap();
    let dims: Vec<usize> = (0..=4).map(|n| de_rham_homology(&q, n).unwrap().dimension).collect();
    if dims != [1, 0, 0, 0, 0] {
        p.push(format!("H(Q) = {dims:?}"));
    }
    results.push(Criterion { number: 2, title: "dimension law m(m−1)^n for n ≤ 6, H(Q) = Q in degree 0", elapsed: start.elapsed(), limit: None, problems: p });

    let (chern, t_chern) = suite("chern", 7);
    let mut p = Vec::new();
    require(
        &chern,
        &["trace_cyclicity", "chern_is_closed", "chern_is_additive", "ch0_is_trace_of_p", "chern_independent_of_connection"],
        25,
        &mut p,
    );
    if chern.k_max != 2 {
        p.push(format!("k_max = {}", chern.k_max));
    }
    results.push(Criterion { number: 3, title: "trace and Chern identities on 25 (p, θ) per fixture, k_max = 2", elapsed: t_chern, limit: Some(secs(120)), problems: p });

    let (tr, t_tr) = suite("transgression", 7);
    let mut p = Vec::new();
    require(
        &tr,
        &[
            "homotopy_formula",
            "kcs_differential_is_chern_difference",
            "reversal_negates",
            "constant_path_vanishes",
            "direct_sum_additivity",
            "pullback_invariance",
            "hom_naturality",
            "ev_compatibility",
        ],
        1,
        &mut p,
    );
    if tr.degree_cap != 6 {
        p.push(format!("degree cap {}", tr.degree_cap));
    }
    results.push(Criterion { number: 4, title: "transgression identities with degree cap 6", elapsed: t_tr, limit: Some(secs(180)), problems: p });

    let mut p = Vec::new();
    require(&tr, &["secondary_transgression"], 10, &mut p);
    require(&tr, &["iterated_homotopies_commute"], 1, &mut p);
    let t5: f64 = ["secondary_transgression", "iterated_homotopies_commute"]
        .iter()
        .flat_map(|n| FIXTURE_NAMES.iter().filter_map(|f| find(&tr, f, n)))
        .map(|i| i.elapsed_ms)
        .sum();
    results.push(Criterion { number: 5, title: "secondary transgression on 10 path pairs, KK₁ = KK₂", elapsed: Duration::from_secs_f64(t5 / 1e3), limit: None, problems: p });

    let mut p = Vec::new();
    require(&tr, &["triangle_mod_exact"], 10, &mut p);
    for f in FIXTURE_NAMES {
        if let Some(i) = find(&tr, f, "triangle_mod_exact") {
            if i.certificates.is_empty() || i.certificates.iter().any(|c| !c.exact || c.primitive.is_none()) {
                p.push(format!("{f}: triangle residual lacks a primitive"));
            }
        }
    }
    let t6: f64 = FIXTURE_NAMES.iter().filter_map(|f| find(&tr, f, "triangle_mod_exact")).map(|i| i.elapsed_ms).sum();
    results.push(Criterion { number: 6, title: "triangle law mod Im d with primitive certificates", elapsed: Duration::from_secs_f64(t6 / 1e3), limit: None, problems: p });

    let mut p = Vec::new();
    let mut t7 = Duration::ZERO;
    for seed in [1, 7, 42] {
        let (hex, t) = suite("hexagon", seed);
        t7 += t;
        let mut q = Vec::new();
        require(
            &hex,
            &[
                "R_after_a_is_d",
                "Pr_after_R_is_ch_after_I",
                "a_after_r_is_incl_after_alpha",
                "beta_is_I_after_incl",
                "naturality",
                "kcs_equivalence_reflexive",
                "kcs_equivalence_constructed_omega",
                "kcs_equivalence_stabilized",
                "kcs_equivalence_chained",
                "nonexact_perturbation_rejected",
                "odd_chern_laws",
            ],
            0,
            &mut q,
        );
        if find(&hex, "QxQ", "nonexact_perturbation_rejected").is_none_or(|i| i.cases == 0) {
            q.push("no perturbation was tried on QxQ".into());
        }
        p.extend(q.into_iter().map(|m| format!("seed {seed}: {m}")));
    }
    results.push(Criterion { number: 7, title: "K̂₀ hexagon, KCS-equivalence witnesses and odd Chern laws, seeds 1, 7, 42", elapsed: t7, limit: None, problems: p });

    let mut p = Vec::new();
    require(&tr, &["closed_form_agreement"], 25, &mut p);
    let t8: f64 = FIXTURE_NAMES.iter().filter_map(|f| find(&tr, f, "closed_form_agreement")).map(|i| i.elapsed_ms).sum();
    results.push(Criterion { number: 8, title: "closed form agrees with the path integral on 25 paths", elapsed: Duration::from_secs_f64(t8 / 1e3), limit: None, problems: p });

    let mut p = Vec::new();
    let mut runs = Vec::new();
    let mut t9 = Duration::ZERO;
    for _ in 0..2 {
        let (out, t) = timed(|| Command::new(env!("CARGO_BIN_EXE_kchern")).args(["verify", "--suite", "all", "--seed", "7"]).output().unwrap());
        t9 = t9.max(t);
        if out.status.code() != Some(0) {
            p.push(format!("exit code {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr)));
        }
        match serde_json::from_slice::<Value>(&out.stdout) {
            Ok(mut v) => {
                strip_timing(&mut v);
                runs.push(v);
            }
            Err(e) => p.push(format!("output is not JSON: {e}")),
        }
    }
    if runs.len() == 2 && runs[0] != runs[1] {
        p.push("two runs differ beyond timing fields".into());
    }
    results.push(Criterion { number: 9, title: "`kchern verify --suite all --seed 7` is deterministic", elapsed: t9, limit: Some(secs(600)), problems: p });

    for c in &results {
        c.print();
    }
    if results.iter().all(Criterion::passed) {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
