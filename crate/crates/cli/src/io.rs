//! JSON formats. Rationals travel as `"num/den"` strings so nothing is lost.

use std::collections::BTreeMap;

use kchern_core::algebra::{AlgElement, Algebra, AlgebraRef};
use kchern_core::connections::{Connection, FormMatrix, Idempotent, ModuleIso};
use kchern_core::exactmath::{format_rational, parse_rational, Poly1, Rational};
use kchern_core::khat::{DegreeCertificate, KCSWitness, KHatGen};
use kchern_core::transgression::PolyPath;
use kchern_core::uforms::{abelianization, project_ab, AbClass, UForm, Word};
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
    pub mul: Vec<Vec<Vec<String>>>,
}

/// A coefficient: a rational, or a polynomial in `t` keyed `"t^k"`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoeffJson {
    Rational(String),
    Poly(BTreeMap<String, String>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    pub degree: usize,
    pub word: Vec<usize>,
    pub coeff: CoeffJson,
}

/// Row-major matrix of algebra elements, each a coefficient array.
pub type ElementMatrixJson = Vec<Vec<Vec<String>>>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConnectionJson {
    pub p: ElementMatrixJson,
    pub theta: Vec<Vec<Vec<TermJson>>>,
}

/// Same layout as a connection; `θ` coefficients are polynomials in `t`.
pub type PathJson = ConnectionJson;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IsoJson {
    pub source: ElementMatrixJson,
    pub target: ElementMatrixJson,
    pub u: ElementMatrixJson,
    pub v: ElementMatrixJson,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratorJson {
    pub connection: ConnectionJson,
    pub omega: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub stab: ConnectionJson,
    pub iso: IsoJson,
}

/// One homogeneous class of `Ω_ab`, in the coordinates of the quotient basis
/// listed in `basis`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassJson {
    pub degree: usize,
    pub coords: Vec<String>,
    pub basis: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub degree: usize,
    pub exact: bool,
    pub residual: Vec<TermJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub primitive: Option<Vec<TermJson>>,
}

fn parse(s: &str) -> Result<Rational, CliError> {
    parse_rational(s).map_err(CliError::from)
}

fn parse_all(v: &[String]) -> Result<Vec<Rational>, CliError> {
    v.iter().map(|s| parse(s)).collect()
}

fn format_all(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

pub fn algebra_to_json(a: &AlgebraRef) -> AlgebraJson {
    let mul = a.mul_table().iter().map(|row| row.iter().map(|v| format_all(v)).collect()).collect();
    AlgebraJson { dim: a.dim(), names: a.names().map(<[String]>::to_vec), mul }
}

pub fn algebra_from_json(j: &AlgebraJson, degree_cap: usize) -> Result<AlgebraRef, CliError> {
    let mul = j.mul.iter().map(|row| row.iter().map(|v| parse_all(v)).collect::<Result<Vec<_>, _>>()).collect::<Result<Vec<_>, _>>()?;
    Ok(Algebra::new(j.dim, j.names.clone(), mul)?.with_degree_cap(degree_cap)?)
}

fn word_of(a: &AlgebraRef, t: &TermJson) -> Result<Word, CliError> {
    if t.word.len() != t.degree + 1 {
        return Err(CliError::Parse(format!("word {:?} does not have degree {}", t.word, t.degree)));
    }
    Word::from_letters(a.dim(), &t.word)
        .ok_or_else(|| CliError::Parse(format!("word {:?} is not a basis word: letters after the first must lie in 1..{}", t.word, a.dim())))
}

pub fn form_to_json(w: &UForm) -> Vec<TermJson> {
    let m = w.algebra().dim();
    w.terms()
        .iter()
        .map(|(word, c)| TermJson { degree: word.degree, word: word.letters(m), coeff: CoeffJson::Rational(format_rational(c)) })
        .collect()
}

pub fn form_from_json(a: &AlgebraRef, terms: &[TermJson]) -> Result<UForm, CliError> {
    let mut out = UForm::zero(a);
    for t in terms {
        let c = match &t.coeff {
            CoeffJson::Rational(s) => parse(s)?,
            CoeffJson::Poly(_) => return Err(CliError::Parse("expected a rational coefficient, found a polynomial".into())),
        };
        out.add_term(word_of(a, t)?, c);
    }
    Ok(out)
}

pub fn poly_to_json(p: &Poly1) -> BTreeMap<String, String> {
    p.coeffs().iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (format!("t^{k}"), format_rational(c))).collect()
}

pub fn poly_from_json(c: &CoeffJson) -> Result<Poly1, CliError> {
    match c {
        CoeffJson::Rational(s) => Ok(Poly1::constant(parse(s)?)),
        CoeffJson::Poly(map) => {
            let mut coeffs = Vec::new();
            for (key, value) in map {
                let k: usize = key
                    .strip_prefix("t^")
                    .and_then(|e| e.parse().ok())
                    .ok_or_else(|| CliError::Parse(format!("polynomial key {key:?} is not of the form \"t^k\"")))?;
                if coeffs.len() <= k {
                    coeffs.resize(k + 1, Rational::zero());
                }
                coeffs[k] += parse(value)?;
            }
            Ok(Poly1::new(coeffs))
        }
    }
}

pub fn poly_form_to_json(w: &UForm<Poly1>) -> Vec<TermJson> {
    let m = w.algebra().dim();
    w.terms().iter().map(|(word, c)| TermJson { degree: word.degree, word: word.letters(m), coeff: CoeffJson::Poly(poly_to_json(c)) }).collect()
}

pub fn poly_form_from_json(a: &AlgebraRef, terms: &[TermJson]) -> Result<UForm<Poly1>, CliError> {
    let mut out = UForm::zero(a);
    for t in terms {
        out.add_term(word_of(a, t)?, poly_from_json(&t.coeff)?);
    }
    Ok(out)
}

pub fn elements_to_json(m: &FormMatrix) -> ElementMatrixJson {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| format_all(m.element(i, j).coeffs())).collect()).collect()
}

/// Reads a `rows × cols` matrix; `cols` is needed when `rows` is zero.
pub fn elements_from_json(a: &AlgebraRef, j: &ElementMatrixJson, cols: Option<usize>) -> Result<FormMatrix, CliError> {
    let rows = j.len();
    let cols = cols.or_else(|| j.first().map(Vec::len)).unwrap_or(0);
    let mut elements = Vec::with_capacity(rows * cols);
    for (i, row) in j.iter().enumerate() {
        if row.len() != cols {
            return Err(CliError::Parse(format!("row {i} has {} entries, expected {cols}", row.len())));
        }
        for entry in row {
            if entry.len() != a.dim() {
                return Err(CliError::Parse(format!("algebra element with {} coordinates, expected {}", entry.len(), a.dim())));
            }
            elements.push(AlgElement::new(parse_all(entry)?));
        }
    }
    Ok(FormMatrix::from_elements(a, rows, cols, &elements)?)
}

pub fn idempotent_from_json(a: &AlgebraRef, j: &ElementMatrixJson) -> Result<Idempotent, CliError> {
    Ok(Idempotent::new(elements_from_json(a, j, Some(j.len()))?)?)
}

fn check_square<T>(rows: &[Vec<T>], n: usize, what: &str) -> Result<(), CliError> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(CliError::Parse(format!("{what} must be {n}×{n}")));
    }
    Ok(())
}

pub fn connection_to_json(c: &Connection) -> ConnectionJson {
    let th = c.theta();
    ConnectionJson {
        p: elements_to_json(c.p().matrix()),
        theta: (0..th.rows()).map(|i| (0..th.cols()).map(|j| form_to_json(th.get(i, j))).collect()).collect(),
    }
}

pub fn connection_from_json(a: &AlgebraRef, j: &ConnectionJson) -> Result<Connection, CliError> {
    let p = idempotent_from_json(a, &j.p)?;
    let n = p.size();
    check_square(&j.theta, n, "theta")?;
    let entries = j.theta.iter().flatten().map(|t| form_from_json(a, t)).collect::<Result<Vec<_>, _>>()?;
    Ok(Connection::new(p, FormMatrix::from_entries(a, n, n, entries)?)?)
}

pub fn path_to_json(path: &PolyPath) -> PathJson {
    let th = path.theta();
    ConnectionJson {
        p: elements_to_json(path.p().matrix()),
        theta: (0..th.rows()).map(|i| (0..th.cols()).map(|j| poly_form_to_json(th.get(i, j))).collect()).collect(),
    }
}

pub fn path_from_json(a: &AlgebraRef, j: &PathJson) -> Result<PolyPath, CliError> {
    let p = idempotent_from_json(a, &j.p)?;
    let n = p.size();
    check_square(&j.theta, n, "theta")?;
    let entries = j.theta.iter().flatten().map(|t| poly_form_from_json(a, t)).collect::<Result<Vec<_>, _>>()?;
    Ok(PolyPath::new(p, kchern_core::connections::Matrix::from_entries(a, n, n, entries)?)?)
}

pub fn iso_to_json(phi: &ModuleIso) -> IsoJson {
    IsoJson {
        source: elements_to_json(phi.source().matrix()),
        target: elements_to_json(phi.target().matrix()),
        u: elements_to_json(phi.u()),
        v: elements_to_json(phi.v()),
    }
}

pub fn iso_from_json(a: &AlgebraRef, j: &IsoJson) -> Result<ModuleIso, CliError> {
    let p0 = idempotent_from_json(a, &j.source)?;
    let p1 = idempotent_from_json(a, &j.target)?;
    let u = elements_from_json(a, &j.u, Some(p0.size()))?;
    let v = elements_from_json(a, &j.v, Some(p1.size()))?;
    Ok(ModuleIso::new(p0, p1, u, v)?)
}

pub fn class_form_to_json(c: &AbClass) -> Result<Vec<TermJson>, CliError> {
    Ok(form_to_json(&c.lift()?))
}

pub fn class_form_from_json(a: &AlgebraRef, terms: &[TermJson]) -> Result<AbClass, CliError> {
    Ok(project_ab(&form_from_json(a, terms)?)?)
}

pub fn generator_to_json(g: &KHatGen) -> Result<GeneratorJson, CliError> {
    Ok(GeneratorJson { connection: connection_to_json(g.conn()), omega: class_form_to_json(g.omega())? })
}

pub fn generator_from_json(a: &AlgebraRef, j: &GeneratorJson) -> Result<KHatGen, CliError> {
    Ok(KHatGen::new(connection_from_json(a, &j.connection)?, class_form_from_json(a, &j.omega)?)?)
}

pub fn witness_to_json(w: &KCSWitness) -> WitnessJson {
    WitnessJson { stab: connection_to_json(w.stab_conn()), iso: iso_to_json(w.iso()) }
}

pub fn witness_from_json(a: &AlgebraRef, j: &WitnessJson) -> Result<KCSWitness, CliError> {
    Ok(KCSWitness::new(connection_from_json(a, &j.stab)?, iso_from_json(a, &j.iso)?)?)
}

/// The degree-`degree` part of `c`, with its quotient-basis legend.
pub fn class_to_json(c: &AbClass, degree: usize) -> Result<ClassJson, CliError> {
    let a = c.algebra();
    let proj = abelianization(a, degree)?;
    let m = a.dim();
    let basis: Vec<Vec<usize>> = proj.selected().iter().map(|&i| Word::new(degree, i).letters(m)).collect();
    let coords = match c.component(degree) {
        Some(v) => format_all(v),
        None => vec![format_rational(&Rational::zero()); basis.len()],
    };
    Ok(ClassJson { degree, coords, basis })
}

pub fn class_from_json(a: &AlgebraRef, j: &ClassJson) -> Result<AbClass, CliError> {
    let proj = abelianization(a, j.degree)?;
    let m = a.dim();
    let expected: Vec<Vec<usize>> = proj.selected().iter().map(|&i| Word::new(j.degree, i).letters(m)).collect();
    if expected != j.basis {
        return Err(CliError::Validation(format!("degree-{} basis does not match this algebra's quotient basis", j.degree)));
    }
    Ok(AbClass::from_component(a, j.degree, parse_all(&j.coords)?)?)
}

pub fn certificate_to_json(c: &DegreeCertificate) -> Result<CertificateJson, CliError> {
    Ok(CertificateJson {
        degree: c.degree,
        exact: c.is_exact(),
        residual: class_form_to_json(&c.residual)?,
        primitive: c.primitive.as_ref().map(class_form_to_json).transpose()?,
    })
}

pub fn certificate_from_json(a: &AlgebraRef, j: &CertificateJson) -> Result<DegreeCertificate, CliError> {
    let residual = class_form_from_json(a, &j.residual)?;
    let primitive = j.primitive.as_ref().map(|p| class_form_from_json(a, p)).transpose()?;
    if primitive.is_some() != j.exact {
        return Err(CliError::Validation("certificate marks exactness inconsistently with its primitive".into()));
    }
    Ok(DegreeCertificate { degree: j.degree, residual, primitive })
}
