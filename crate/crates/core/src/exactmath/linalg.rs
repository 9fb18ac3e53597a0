//! Exact sparse linear algebra over ℚ.
//!
//! Everything is built on [`Echelon`], an incrementally maintained reduced
//! row echelon form. Pivots are always the first nonzero column, so the
//! bases produced here are reproducible.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::rational::Rational;
use crate::error::{Error, Result};

/// Sparse vector: strictly increasing indices, no stored zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseVec {
    entries: Vec<(usize, Rational)>,
}

impl SparseVec {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_dense(v: &[Rational]) -> Self {
        SparseVec {
            entries: v
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i, c.clone()))
                .collect(),
        }
    }

    /// Accepts unsorted input with repeats; sums duplicates.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, Rational)>) -> Self {
        let mut map: BTreeMap<usize, Rational> = BTreeMap::new();
        for (i, c) in pairs {
            *map.entry(i).or_insert_with(Rational::zero) += c;
        }
        SparseVec { entries: map.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    pub fn unit(i: usize) -> Self {
        SparseVec { entries: vec![(i, Rational::one())] }
    }

    pub fn to_dense(&self, len: usize) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); len];
        for (i, c) in &self.entries {
            out[*i] = c.clone();
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[(usize, Rational)] {
        &self.entries
    }

    pub fn get(&self, i: usize) -> Option<&Rational> {
        self.entries
            .binary_search_by_key(&i, |(j, _)| *j)
            .ok()
            .map(|k| &self.entries[k].1)
    }

    pub fn leading(&self) -> Option<(usize, &Rational)> {
        self.entries.first().map(|(i, c)| (*i, c))
    }

    pub fn scale(&mut self, a: &Rational) {
        if a.is_zero() {
            self.entries.clear();
            return;
        }
        for (_, c) in &mut self.entries {
            *c *= a;
        }
    }

    /// `self += a * other`
    pub fn axpy(&mut self, a: &Rational, other: &SparseVec) {
        if a.is_zero() || other.is_zero() {
            return;
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let mut x = core::mem::take(&mut self.entries).into_iter().peekable();
        let mut y = other.entries.iter().peekable();
        loop {
            match (x.peek(), y.peek()) {
                (Some((i, _)), Some((j, _))) if i < j => out.push(x.next().unwrap()),
                (Some((i, _)), Some((j, _))) if i > j => {
                    let (j, c) = y.next().unwrap();
                    out.push((*j, a * c));
                }
                (Some(_), Some(_)) => {
                    let (i, mut c) = x.next().unwrap();
                    let (_, d) = y.next().unwrap();
                    c += a * d;
                    if !c.is_zero() {
                        out.push((i, c));
                    }
                }
                (Some(_), None) => out.push(x.next().unwrap()),
                (None, Some(_)) => {
                    let (j, c) = y.next().unwrap();
                    out.push((*j, a * c));
                }
                (None, None) => break,
            }
        }
        self.entries = out;
    }

    pub fn dot_dense(&self, v: &[Rational]) -> Rational {
        self.entries.iter().fold(Rational::zero(), |acc, (i, c)| acc + c * &v[*i])
    }
}

/// Rational matrix with sparse storage.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, entries: BTreeMap::new() }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Rational>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has length {} instead of {cols}",
                    row.len()
                )));
            }
            for (j, c) in row.iter().enumerate() {
                m.set(i, j, c.clone());
            }
        }
        Ok(m)
    }

    /// Matrix whose columns are the given sparse vectors.
    pub fn from_columns(rows: usize, columns: &[SparseVec]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (i, c) in col.entries() {
                m.set(*i, j, c.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        self.entries.get(&(i, j)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn set(&mut self, i: usize, j: usize, c: Rational) {
        assert!(i < self.rows && j < self.cols, "index out of range");
        if c.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), c);
        }
    }

    pub fn nonzeros(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.entries.iter().map(|(&(i, j), c)| (i, j, c))
    }

    pub fn row_vectors(&self) -> Vec<SparseVec> {
        let mut rows = vec![Vec::new(); self.rows];
        for (&(i, j), c) in &self.entries {
            rows[i].push((j, c.clone()));
        }
        rows.into_iter().map(|entries| SparseVec { entries }).collect()
    }

    pub fn column_vectors(&self) -> Vec<SparseVec> {
        let mut cols = vec![Vec::new(); self.cols];
        for (&(i, j), c) in &self.entries {
            cols[j].push((i, c.clone()));
        }
        cols.into_iter().map(|entries| SparseVec { entries }).collect()
    }

    pub fn mul_vec(&self, x: &[Rational]) -> Result<Vec<Rational>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                x.len(),
                self.cols
            )));
        }
        let mut out = vec![Rational::zero(); self.rows];
        for (&(i, j), c) in &self.entries {
            out[i] += c * &x[j];
        }
        Ok(out)
    }

    pub fn mul_sparse(&self, x: &SparseVec) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.rows];
        for (&(i, j), c) in &self.entries {
            if let Some(v) = x.get(j) {
                out[i] += c * v;
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        let mut ech = Echelon::new(self.cols);
        for r in self.row_vectors() {
            ech.insert(r);
        }
        ech.rank()
    }
}

/// Reduced row echelon form of a growing set of vectors.
#[derive(Clone, Debug)]
pub struct Echelon {
    dim: usize,
    rows: BTreeMap<usize, SparseVec>,
}

impl Echelon {
    pub fn new(dim: usize) -> Self {
        Echelon { dim, rows: BTreeMap::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.rows.contains_key(&col)
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    /// Rows keyed by pivot column; each has a leading 1 and zeros in every
    /// other pivot column.
    pub fn rows(&self) -> &BTreeMap<usize, SparseVec> {
        &self.rows
    }

    /// Eliminates all pivot columns from `v`.
    pub fn reduce(&self, v: &mut SparseVec) {
        let hits: Vec<(usize, Rational)> = v
            .entries()
            .iter()
            .filter(|(i, _)| self.rows.contains_key(i))
            .cloned()
            .collect();
        for (p, a) in hits {
            v.axpy(&-a, &self.rows[&p]);
        }
    }

    /// Adds `v` to the span. Returns its pivot if it was independent.
    pub fn insert(&mut self, mut v: SparseVec) -> Option<usize> {
        self.reduce(&mut v);
        let (p, lead) = v.leading()?;
        let inv = lead.recip();
        v.scale(&inv);
        for row in self.rows.values_mut() {
            if let Some(a) = row.get(p).cloned() {
                row.axpy(&-a, &v);
            }
        }
        self.rows.insert(p, v);
        Some(p)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        let mut v = v.clone();
        self.reduce(&mut v);
        v.is_zero()
    }
}

/// Basis of `{x : m x = 0}`, one vector per free column.
pub fn kernel_basis(m: &RatMatrix) -> Vec<Vec<Rational>> {
    let mut ech = Echelon::new(m.cols());
    for r in m.row_vectors() {
        ech.insert(r);
    }
    let mut basis = Vec::new();
    for f in (0..m.cols()).filter(|c| !ech.is_pivot(*c)) {
        let mut x = vec![Rational::zero(); m.cols()];
        x[f] = Rational::one();
        for (p, row) in ech.rows() {
            if let Some(a) = row.get(f) {
                x[*p] = -a;
            }
        }
        basis.push(x);
    }
    basis
}

/// Some `x` with `m x = b`, choosing zero for every free variable.
pub fn solve_membership(m: &RatMatrix, b: &[Rational]) -> Result<Option<Vec<Rational>>> {
    if b.len() != m.rows() {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side of length {} against {} rows",
            b.len(),
            m.rows()
        )));
    }
    Ok(ColumnSolver::new(&m.column_vectors()).solve(&SparseVec::from_dense(b)))
}

/// Result of [`quotient_basis`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    /// Ambient coordinates that survive as the quotient basis.
    pub selected: Vec<usize>,
    /// `selected.len() × ambient_dim` projection onto the quotient.
    pub projection: RatMatrix,
}

/// Basis of `ℚ^ambient_dim / span(subspace)` by surviving coordinates.
pub fn quotient_basis(ambient_dim: usize, subspace: &[Vec<Rational>]) -> Result<Quotient> {
    let mut ech = Echelon::new(ambient_dim);
    for v in subspace {
        if v.len() != ambient_dim {
            return Err(Error::DimensionMismatch(format!(
                "subspace vector of length {} in ambient dimension {ambient_dim}",
                v.len()
            )));
        }
        ech.insert(SparseVec::from_dense(v));
    }
    let proj = QuotientMap::from_echelon(&ech);
    let projection = RatMatrix::from_columns(proj.selected.len(), &proj.images);
    Ok(Quotient { selected: proj.selected, projection })
}

/// Projection onto the quotient by an echelonized subspace, stored as the
/// image of every ambient coordinate.
#[derive(Clone, Debug)]
pub struct QuotientMap {
    pub selected: Vec<usize>,
    pub images: Vec<SparseVec>,
}

impl QuotientMap {
    pub fn from_echelon(ech: &Echelon) -> Self {
        let dim = ech.dim();
        let mut slot = vec![usize::MAX; dim];
        let mut selected = Vec::new();
        for (c, s) in slot.iter_mut().enumerate() {
            if !ech.is_pivot(c) {
                *s = selected.len();
                selected.push(c);
            }
        }
        let mut images = Vec::with_capacity(dim);
        for c in 0..dim {
            match ech.rows().get(&c) {
                None => images.push(SparseVec::unit(slot[c])),
                Some(row) => images.push(SparseVec::from_pairs(
                    row.entries().iter().filter(|(j, _)| *j != c).map(|(j, a)| (slot[*j], -a)),
                )),
            }
        }
        QuotientMap { selected, images }
    }

    pub fn quotient_dim(&self) -> usize {
        self.selected.len()
    }
}

/// Solves `m x = b` repeatedly for a fixed `m`, given by its columns.
#[derive(Clone, Debug)]
pub struct ColumnSolver {
    cols: usize,
    /// Pivot row → (reduced combination of columns, column coefficients).
    rows: BTreeMap<usize, (SparseVec, SparseVec)>,
}

impl ColumnSolver {
    pub fn new(columns: &[SparseVec]) -> Self {
        let mut s = ColumnSolver { cols: columns.len(), rows: BTreeMap::new() };
        for (j, col) in columns.iter().enumerate() {
            let mut v = col.clone();
            let mut combo = SparseVec::unit(j);
            s.reduce(&mut v, &mut combo);
            let Some((p, lead)) = v.leading() else { continue };
            let inv = lead.recip();
            v.scale(&inv);
            combo.scale(&inv);
            for (row, rc) in s.rows.values_mut() {
                if let Some(a) = row.get(p).cloned() {
                    row.axpy(&-&a, &v);
                    rc.axpy(&-a, &combo);
                }
            }
            s.rows.insert(p, (v, combo));
        }
        s
    }

    fn reduce(&self, v: &mut SparseVec, combo: &mut SparseVec) {
        let hits: Vec<(usize, Rational)> = v
            .entries()
            .iter()
            .filter(|(i, _)| self.rows.contains_key(i))
            .cloned()
            .collect();
        for (p, a) in hits {
            let (row, rc) = &self.rows[&p];
            v.axpy(&-&a, row);
            combo.axpy(&-a, rc);
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn solve(&self, b: &SparseVec) -> Option<Vec<Rational>> {
        let mut v = b.clone();
        let mut combo = SparseVec::new();
        self.reduce(&mut v, &mut combo);
        if !v.is_zero() {
            return None;
        }
        let mut x = combo;
        x.scale(&-Rational::one());
        Some(x.to_dense(self.cols))
    }
}
