use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::form::UForm;
use super::word::{dimension, Word};
use crate::algebra::{same_algebra, AlgebraRef};
use crate::error::{Error, Result};
use crate::exactmath::{kernel_basis, ColumnSolver, Echelon, QuotientMap, RatMatrix, Rational, Scalar, SparseVec};

/// Quotient of `Ω^u_n(A)` by the graded commutator span.
///
/// The quotient basis consists of the surviving word coordinates; `image(w)`
/// expresses any word in that basis.
#[derive(Clone, Debug)]
pub struct AbProjection {
    degree: usize,
    ambient_dim: usize,
    map: QuotientMap,
    span: Vec<SparseVec>,
}

impl AbProjection {
    fn from_span(degree: usize, ambient_dim: usize, vectors: impl IntoIterator<Item = SparseVec>) -> Self {
        let mut ech = Echelon::new(ambient_dim);
        for v in vectors {
            ech.insert(v);
        }
        let map = QuotientMap::from_echelon(&ech);
        AbProjection { degree, ambient_dim, map, span: ech.rows().values().cloned().collect() }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn quotient_dim(&self) -> usize {
        self.map.quotient_dim()
    }

    /// Word indices whose classes form the quotient basis.
    pub fn selected(&self) -> &[usize] {
        &self.map.selected
    }

    /// Class of the word with the given index, in quotient coordinates.
    pub fn image(&self, index: usize) -> &SparseVec {
        &self.map.images[index]
    }

    /// Echelonized basis of the commutator span.
    pub fn span(&self) -> &[SparseVec] {
        &self.span
    }

    /// `quotient_dim × ambient_dim` matrix of the projection.
    pub fn matrix(&self) -> RatMatrix {
        RatMatrix::from_columns(self.quotient_dim(), &self.map.images)
    }

    pub fn project_vector(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, c) in v.entries() {
            out.axpy(c, self.image(*i));
        }
        out
    }
}

/// The differential `Ω_ab,n → Ω_ab,n+1` in quotient coordinates.
#[derive(Clone, Debug)]
pub struct DescendedDifferential {
    degree: usize,
    rows: usize,
    columns: Vec<SparseVec>,
    solver: ColumnSolver,
}

impl DescendedDifferential {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn matrix(&self) -> RatMatrix {
        RatMatrix::from_columns(self.rows, &self.columns)
    }

    pub fn apply<S: Scalar>(&self, x: &[S]) -> Vec<S> {
        let mut out = vec![S::zero(); self.rows];
        for (j, xj) in x.iter().enumerate() {
            if xj.is_zero() {
                continue;
            }
            for (i, c) in self.columns[j].entries() {
                out[*i].add_assign_ref(&xj.scale(c));
            }
        }
        out
    }

    /// Some `x` with `d̄ x = b`.
    pub fn preimage(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        self.solver.solve(&SparseVec::from_dense(b))
    }
}

fn word_vector(f: &UForm, degree: usize) -> SparseVec {
    SparseVec::from_pairs(f.component(degree).terms().iter().map(|(w, c)| (w.index, c.clone())))
}

/// Commutators of the algebra generators `e_i`, `de_i` with every word of
/// complementary degree. Since `[xy, z] = [x, yz] ± [y, zx]`, these span
/// the full graded commutator subspace.
fn generator_commutators(alg: &AlgebraRef, n: usize) -> Result<Vec<SparseVec>> {
    let m = alg.dim();
    let mut out = Vec::new();
    for i in 1..m {
        let gens = [(0, UForm::from_letters(alg, &[i], Rational::one())), (1, UForm::from_letters(alg, &[0, i], Rational::one()))];
        for (g_deg, g) in &gens {
            if *g_deg > n {
                continue;
            }
            for index in 0..dimension(m, n - g_deg) {
                let w = UForm::word(alg, Word::new(n - g_deg, index), Rational::one());
                let c = g.graded_commutator(&w)?;
                out.push(word_vector(&c, n));
            }
        }
    }
    Ok(out)
}

/// The commutator span built from every pair of basis words with degrees
/// summing to `n`. Quadratic in the number of words; kept as a reference
/// for the generator-based construction.
pub fn all_pairs_commutator_span(alg: &AlgebraRef, n: usize) -> Result<Vec<SparseVec>> {
    alg.check_degree(n)?;
    let m = alg.dim();
    let mut out = Vec::new();
    for i in 0..=n / 2 {
        let j = n - i;
        for a in 0..dimension(m, i) {
            let u = UForm::word(alg, Word::new(i, a), Rational::one());
            let start = if i == j { a } else { 0 };
            for b in start..dimension(m, j) {
                let v = UForm::word(alg, Word::new(j, b), Rational::one());
                out.push(word_vector(&u.graded_commutator(&v)?, n));
            }
        }
    }
    Ok(out)
}

/// The projection `Ω^u_n(A) → Ω^u_n(A)_ab`, memoized on the algebra.
pub fn abelianization(alg: &AlgebraRef, n: usize) -> Result<&AbProjection> {
    alg.check_degree(n)?;
    let slot = alg.cache.ab_slot(n).expect("cache sized to the degree cap");
    if let Some(p) = slot.get() {
        return Ok(p);
    }
    let span = generator_commutators(alg, n)?;
    Ok(slot.get_or_init(|| Box::new(AbProjection::from_span(n, dimension(alg.dim(), n), span))))
}

/// `d̄_n: Ω_ab,n → Ω_ab,n+1`, memoized on the algebra.
pub fn descended_differential(alg: &AlgebraRef, n: usize) -> Result<&DescendedDifferential> {
    alg.check_degree(n + 1)?;
    let slot = alg.cache.dbar_slot(n).expect("cache sized to the degree cap");
    if let Some(d) = slot.get() {
        return Ok(d);
    }
    let (src, dst) = (abelianization(alg, n)?, abelianization(alg, n + 1)?);
    let columns: Vec<SparseVec> = src
        .selected()
        .iter()
        .map(|&idx| {
            let dw = UForm::word(alg, Word::new(n, idx), Rational::one()).differential();
            dst.project_vector(&word_vector(&dw, n + 1))
        })
        .collect();
    let solver = ColumnSolver::new(&columns);
    Ok(slot.get_or_init(|| Box::new(DescendedDifferential { degree: n, rows: dst.quotient_dim(), columns, solver })))
}

/// Graded element of `Ω_ab(A)` in quotient coordinates; zero components are
/// not stored.
#[derive(Clone, Debug)]
pub struct AbClass<S = Rational> {
    algebra: AlgebraRef,
    components: BTreeMap<usize, Vec<S>>,
}

impl<S: Scalar> PartialEq for AbClass<S> {
    fn eq(&self, other: &Self) -> bool {
        self.components == other.components && same_algebra(&self.algebra, &other.algebra)
    }
}

impl<S: Scalar> AbClass<S> {
    pub fn zero(algebra: &AlgebraRef) -> Self {
        AbClass { algebra: algebra.clone(), components: BTreeMap::new() }
    }

    /// Class with a single component; checks the length against the quotient.
    pub fn from_component(algebra: &AlgebraRef, degree: usize, coords: Vec<S>) -> Result<Self> {
        let q = abelianization(algebra, degree)?.quotient_dim();
        if coords.len() != q {
            return Err(Error::DimensionMismatch(alloc::format!(
                "{} coordinates for a degree-{degree} quotient of dimension {q}",
                coords.len()
            )));
        }
        let mut c = Self::zero(algebra);
        c.set(degree, coords);
        Ok(c)
    }

    fn set(&mut self, degree: usize, coords: Vec<S>) {
        if coords.iter().all(Zero::is_zero) {
            self.components.remove(&degree);
        } else {
            self.components.insert(degree, coords);
        }
    }

    pub fn algebra(&self) -> &AlgebraRef {
        &self.algebra
    }

    pub fn components(&self) -> &BTreeMap<usize, Vec<S>> {
        &self.components
    }

    pub fn component(&self, degree: usize) -> Option<&[S]> {
        self.components.get(&degree).map(Vec::as_slice)
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.components.keys().copied().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    /// Restriction to one degree.
    pub fn part(&self, degree: usize) -> Self {
        let mut out = Self::zero(&self.algebra);
        if let Some(v) = self.components.get(&degree) {
            out.components.insert(degree, v.clone());
        }
        out
    }

    fn combine(&self, other: &Self, sign: bool) -> Self {
        let mut out = self.clone();
        for (d, v) in &other.components {
            let mut acc = out.components.remove(d).unwrap_or_else(|| vec![S::zero(); v.len()]);
            for (a, b) in acc.iter_mut().zip(v) {
                if sign {
                    a.add_assign_ref(b);
                } else {
                    a.sub_assign_ref(b);
                }
            }
            out.set(*d, acc);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, true)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, false)
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(Scalar::neg_ref)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        self.map_coeffs(|c| c.scale(r))
    }

    pub fn map_coeffs<T: Scalar>(&self, mut f: impl FnMut(&S) -> T) -> AbClass<T> {
        let mut out = AbClass::zero(&self.algebra);
        for (d, v) in &self.components {
            out.set(*d, v.iter().map(&mut f).collect());
        }
        out
    }

    /// Canonical lift: the combination of quotient-basis words.
    pub fn lift(&self) -> Result<UForm<S>> {
        let mut out = UForm::zero(&self.algebra);
        for (d, v) in &self.components {
            let proj = abelianization(&self.algebra, *d)?;
            for (j, c) in v.iter().enumerate() {
                out.add_term(Word::new(*d, proj.selected()[j]), c.clone());
            }
        }
        Ok(out)
    }

    /// `d̄` applied in every degree.
    pub fn differential(&self) -> Result<Self> {
        let mut out = Self::zero(&self.algebra);
        for (d, v) in &self.components {
            let dv = descended_differential(&self.algebra, *d)?.apply(v);
            out.set(d + 1, dv);
        }
        Ok(out)
    }
}

impl AbClass<Rational> {
    /// A class `η` with `d̄η = self`, degree by degree, if one exists.
    pub fn exact_primitive(&self) -> Result<Option<AbClass>> {
        let mut out = AbClass::zero(&self.algebra);
        for (d, v) in &self.components {
            if *d == 0 {
                return Ok(None);
            }
            match descended_differential(&self.algebra, d - 1)?.preimage(v) {
                Some(x) => out.set(d - 1, x),
                None => return Ok(None),
            }
        }
        Ok(Some(out))
    }

    pub fn is_exact(&self) -> Result<bool> {
        Ok(self.exact_primitive()?.is_some())
    }
}

/// Image of a form in `Ω_ab`, degree by degree.
pub fn project_ab<S: Scalar>(w: &UForm<S>) -> Result<AbClass<S>> {
    let alg = w.algebra();
    let mut out = AbClass::zero(alg);
    for d in w.degrees() {
        let proj = abelianization(alg, d)?;
        let mut acc = vec![S::zero(); proj.quotient_dim()];
        for (word, c) in w.component(d).terms() {
            for (j, r) in proj.image(word.index).entries() {
                acc[*j].add_assign_ref(&c.scale(r));
            }
        }
        out.set(d, acc);
    }
    Ok(out)
}

/// Decides whether the class of the homogeneous degree-`n` form `w` is
/// `d̄`-exact, returning a primitive form when it is.
pub fn is_exact_in_ab(w: &UForm, n: usize) -> Result<Option<UForm>> {
    if w.degrees().iter().any(|&d| d != n) {
        return Err(Error::Invalid(alloc::format!("form is not homogeneous of degree {n}")));
    }
    let class = project_ab(w)?;
    if n == 0 {
        return Ok(class.is_zero().then(|| UForm::zero(w.algebra())));
    }
    descended_differential(w.algebra(), n - 1)?;
    match class.exact_primitive()? {
        Some(p) => Ok(Some(p.lift()?)),
        None => Ok(None),
    }
}

/// Noncommutative de Rham homology in one degree.
#[derive(Clone, Debug)]
pub struct Homology {
    pub degree: usize,
    pub dimension: usize,
    /// Forms whose classes form a basis of the homology.
    pub representatives: Vec<UForm>,
}

/// `ker(d̄_n) / im(d̄_{n-1})`.
pub fn de_rham_homology(alg: &AlgebraRef, n: usize) -> Result<Homology> {
    let dn = descended_differential(alg, n)?;
    let proj = abelianization(alg, n)?;
    let q = proj.quotient_dim();
    let mut ech = Echelon::new(q);
    if n > 0 {
        for col in &descended_differential(alg, n - 1)?.columns {
            ech.insert(col.clone());
        }
    }
    let mut representatives = Vec::new();
    for z in kernel_basis(&dn.matrix()) {
        if ech.insert(SparseVec::from_dense(&z)).is_some() {
            representatives.push(AbClass::from_component(alg, n, z)?.lift()?);
        }
    }
    Ok(Homology { degree: n, dimension: representatives.len(), representatives })
}
