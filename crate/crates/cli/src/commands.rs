//! Command dispatch shared by the binary and the tests.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use kchern_core::algebra::AlgebraRef;
use kchern_core::fixtures::fixture;
use kchern_core::khat::DegreeCertificate;
use kchern_core::transgression::straight_line;
use kchern_core::uforms::de_rham_homology;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::io::{
    algebra_from_json, algebra_to_json, certificate_to_json, class_to_json, connection_from_json, form_to_json, path_from_json,
    AlgebraJson, CertificateJson, ClassJson, TermJson,
};
use crate::suites::{run_suite, Report, SuiteConfig};
use crate::CliError;

#[derive(Debug, Parser)]
#[command(name = "kchern", version, about = "Exact Karoubi-Chern characters and Chern-Simons transgressions over rational algebras")]
pub struct Cli {
    /// Highest form degree any computation may reach.
    #[arg(long, global = true, default_value_t = 8)]
    pub degree_cap: usize,
    /// Highest Chern index k; KCS components run over k = 1..=kmax.
    #[arg(long = "kmax", global = true, default_value_t = 2)]
    pub k_max: usize,
    #[arg(long, global = true, default_value_t = 7)]
    pub seed: u64,
    /// Write the JSON result here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Builtin algebra (Q, dual, trunc3, QxQ, M2, QC2); repeatable for verify.
    #[arg(long, global = true)]
    pub fixture: Vec<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validates unitality and associativity of a multiplication table.
    AlgebraCheck {
        /// Algebra JSON file; omit to check the builtin given by --fixture.
        file: Option<PathBuf>,
    },
    /// Noncommutative de Rham homology in degrees 0..=degree.
    Homology {
        #[arg(long)]
        algebra: Option<PathBuf>,
        #[arg(long)]
        degree: usize,
    },
    /// Chern character forms ch_0..ch_kmax of a connection.
    Chern {
        #[arg(long)]
        algebra: Option<PathBuf>,
        #[arg(long)]
        connection: PathBuf,
    },
    /// Chern-Simons transgression of a path, or of the straight line
    /// between two connections.
    Kcs {
        #[arg(long)]
        algebra: Option<PathBuf>,
        #[arg(long, conflicts_with_all = ["from", "to"])]
        path: Option<PathBuf>,
        #[arg(long, requires = "to")]
        from: Option<PathBuf>,
        #[arg(long, requires = "from")]
        to: Option<PathBuf>,
        /// Traverse the path backwards.
        #[arg(long)]
        reverse: bool,
    },
    /// Runs a property suite on the builtin fixtures.
    Verify {
        /// dga, chern, transgression, hexagon or all.
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlgebraCheckReport {
    pub valid: bool,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unital: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub associative: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub commutative: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failing_triple: Option<[usize; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<AlgebraJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HomologyReport {
    pub dims: Vec<usize>,
    /// Per degree, forms whose classes span the homology.
    pub representatives: Vec<Vec<Vec<TermJson>>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChernReport {
    pub k_max: usize,
    pub classes: Vec<ClassJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResidualJson {
    pub degree: usize,
    /// `d̄ KCS_k − (ch_k(D₁) − ch_k(D₀))` vanishes.
    pub zero: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KcsReport {
    pub k_max: usize,
    pub reversed: bool,
    pub classes: Vec<ClassJson>,
    /// Whether each component is itself exact, with a primitive if so.
    pub certificates: Vec<CertificateJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residual: Option<Vec<ResidualJson>>,
}

/// A finished command: JSON text and the exit code to report.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub json: String,
    pub code: i32,
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

fn load_algebra(cli: &Cli, file: Option<&Path>) -> Result<AlgebraRef, CliError> {
    match (file, cli.fixture.as_slice()) {
        (Some(path), []) => algebra_from_json(&read_json(path)?, cli.degree_cap),
        (None, [name]) => Ok(fixture(name, cli.degree_cap)?),
        (Some(_), _) => Err(CliError::Validation("give either an algebra file or --fixture, not both".into())),
        (None, []) => Err(CliError::Validation("no algebra: pass a file or --fixture NAME".into())),
        (None, _) => Err(CliError::Validation("this command takes a single --fixture".into())),
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    Ok(serde_json::to_string_pretty(value).map_err(|e| CliError::Parse(e.to_string()))? + "\n")
}

fn check_caps(cli: &Cli) -> Result<(), CliError> {
    if cli.degree_cap == 0 || cli.k_max == 0 {
        return Err(CliError::Validation("--degree-cap and --kmax must be positive".into()));
    }
    Ok(())
}

pub fn algebra_check(cli: &Cli, file: Option<&Path>) -> Result<Outcome, CliError> {
    check_caps(cli)?;
    let (dim, result) = match file {
        Some(path) => {
            let j: AlgebraJson = read_json(path)?;
            (j.dim, algebra_from_json(&j, cli.degree_cap))
        }
        None => {
            let a = load_algebra(cli, None)?;
            (a.dim(), Ok(a))
        }
    };
    let report = match result {
        Ok(a) => AlgebraCheckReport {
            valid: true,
            dim,
            unital: Some(true),
            associative: Some(true),
            commutative: Some(a.is_commutative()),
            failing_triple: None,
            message: None,
            algebra: Some(algebra_to_json(&a)),
        },
        Err(CliError::Validation(message)) => {
            let mut r = AlgebraCheckReport {
                valid: false,
                dim,
                unital: None,
                associative: None,
                commutative: None,
                failing_triple: None,
                message: Some(message.clone()),
                algebra: None,
            };
            if message.starts_with("unit must be") {
                r.unital = Some(false);
            } else if message.starts_with("multiplication table is not associative") {
                r.unital = Some(true);
                r.associative = Some(false);
                r.failing_triple = triple_in(&message);
            }
            r
        }
        Err(e) => return Err(e),
    };
    let code = if report.valid { 0 } else { 3 };
    Ok(Outcome { json: to_json(&report)?, code })
}

/// Reads `(e{i}*e{j})*e{k}` back out of the associativity error.
fn triple_in(message: &str) -> Option<[usize; 3]> {
    let nums: Vec<usize> = message.split(|c: char| !c.is_ascii_digit()).filter(|s| !s.is_empty()).filter_map(|s| s.parse().ok()).collect();
    match nums.as_slice() {
        [i, j, k] => Some([*i, *j, *k]),
        _ => None,
    }
}

pub fn homology(cli: &Cli, algebra: Option<&Path>, degree: usize) -> Result<Outcome, CliError> {
    check_caps(cli)?;
    let a = load_algebra(cli, algebra)?;
    let mut report = HomologyReport { dims: Vec::new(), representatives: Vec::new() };
    for n in 0..=degree {
        let h = de_rham_homology(&a, n)?;
        report.dims.push(h.dimension);
        report.representatives.push(h.representatives.iter().map(form_to_json).collect());
    }
    Ok(Outcome { json: to_json(&report)?, code: 0 })
}

pub fn chern(cli: &Cli, algebra: Option<&Path>, connection: &Path) -> Result<Outcome, CliError> {
    check_caps(cli)?;
    let a = load_algebra(cli, algebra)?;
    let conn = connection_from_json(&a, &read_json(connection)?)?;
    let ch = conn.chern(cli.k_max)?;
    let classes = ch.iter().enumerate().map(|(k, c)| class_to_json(c, 2 * k)).collect::<Result<_, _>>()?;
    Ok(Outcome { json: to_json(&ChernReport { k_max: cli.k_max, classes })?, code: 0 })
}

pub fn kcs(cli: &Cli, algebra: Option<&Path>, path: Option<&Path>, ends: Option<(&Path, &Path)>, reverse: bool) -> Result<Outcome, CliError> {
    check_caps(cli)?;
    let a = load_algebra(cli, algebra)?;
    let k = cli.k_max;
    let (mut p, endpoints) = match (path, ends) {
        (Some(file), None) => (path_from_json(&a, &read_json(file)?)?, None),
        (None, Some((f0, f1))) => {
            let c0 = connection_from_json(&a, &read_json(f0)?)?;
            let c1 = connection_from_json(&a, &read_json(f1)?)?;
            (straight_line(&c0, &c1)?, Some((c0, c1)))
        }
        _ => return Err(CliError::Validation("give --path FILE or both --from FILE and --to FILE".into())),
    };
    if reverse {
        p = p.reverse();
    }
    let classes_raw = p.kcs(k)?;
    let classes = classes_raw.iter().enumerate().map(|(j, c)| class_to_json(c, 2 * j + 1)).collect::<Result<_, _>>()?;
    let certificates = classes_raw
        .iter()
        .enumerate()
        .map(|(j, c)| DegreeCertificate::decide(2 * j + 1, c.clone()).map_err(CliError::from).and_then(|d| certificate_to_json(&d)))
        .collect::<Result<_, _>>()?;
    let mut code = 0;
    let residual = match endpoints {
        Some((c0, c1)) => {
            let (start, end) = if reverse { (c1, c0) } else { (c0, c1) };
            let (ch0, ch1) = (start.chern(k)?, end.chern(k)?);
            let mut out = Vec::new();
            for j in 1..=k {
                let zero = classes_raw[j - 1].differential()? == ch1[j].sub(&ch0[j]);
                if !zero {
                    code = 4;
                }
                out.push(ResidualJson { degree: 2 * j, zero });
            }
            Some(out)
        }
        None => None,
    };
    Ok(Outcome { json: to_json(&KcsReport { k_max: k, reversed: reverse, classes, certificates, residual })?, code })
}

pub fn verify(cli: &Cli, suite: &str) -> Result<(Report, Outcome), CliError> {
    check_caps(cli)?;
    let cfg = SuiteConfig { seed: cli.seed, k_max: cli.k_max, degree_cap: cli.degree_cap, fixtures: cli.fixture.clone(), ..SuiteConfig::default() };
    let report = run_suite(suite, &cfg)?;
    let code = if report.passed { 0 } else { 4 };
    let json = to_json(&report)?;
    Ok((report, Outcome { json, code }))
}

/// Runs the parsed command and writes its JSON to `--out` or returns it.
pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let outcome = match &cli.command {
        Command::AlgebraCheck { file } => algebra_check(cli, file.as_deref())?,
        Command::Homology { algebra, degree } => homology(cli, algebra.as_deref(), *degree)?,
        Command::Chern { algebra, connection } => chern(cli, algebra.as_deref(), connection)?,
        Command::Kcs { algebra, path, from, to, reverse } => {
            let ends = from.as_deref().zip(to.as_deref());
            kcs(cli, algebra.as_deref(), path.as_deref(), ends, *reverse)?
        }
        Command::Verify { suite } => verify(cli, suite)?.1,
    };
    if let Some(out) = &cli.out {
        fs::write(out, &outcome.json).map_err(|e| CliError::Validation(format!("{}: {e}", out.display())))?;
        return Ok(Outcome { json: String::new(), code: outcome.code });
    }
    Ok(outcome)
}
