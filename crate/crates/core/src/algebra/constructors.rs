use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::{Algebra, AlgebraRef, DEFAULT_DEGREE_CAP};
use crate::error::{Error, Result};
use crate::exactmath::{Rational, SparseVec};

/// `M_k(ℚ)` with basis `1`, then every matrix unit `E_ij` except `E_kk`
/// in row-major order. `E_kk = 1 - Σ_{i<k} E_ii`.
pub fn make_matrix_algebra(k: usize) -> Result<AlgebraRef> {
    if k == 0 {
        return Err(Error::Invalid("matrix size must be at least 1".into()));
    }
    let units: Vec<(usize, usize)> = (0..k)
        .flat_map(|i| (0..k).map(move |j| (i, j)))
        .filter(|&(i, j)| !(i == k - 1 && j == k - 1))
        .collect();
    let dim = k * k;
    // basis element b as a dense k×k matrix
    let as_matrix = |b: usize| -> Vec<Vec<Rational>> {
        let mut m = vec![vec![Rational::zero(); k]; k];
        if b == 0 {
            for (i, row) in m.iter_mut().enumerate() {
                row[i] = Rational::one();
            }
        } else {
            let (i, j) = units[b - 1];
            m[i][j] = Rational::one();
        }
        m
    };
    let coords = |m: &[Vec<Rational>]| -> SparseVec {
        let last = m[k - 1][k - 1].clone();
        let mut pairs = vec![(0, last.clone())];
        for (b, &(i, j)) in units.iter().enumerate() {
            let c = if i == j { &m[i][j] - &last } else { m[i][j].clone() };
            pairs.push((b + 1, c));
        }
        SparseVec::from_pairs(pairs)
    };
    let mut table = Vec::with_capacity(dim * dim);
    for a in 0..dim {
        let ma = as_matrix(a);
        for b in 0..dim {
            let mb = as_matrix(b);
            let mut prod = vec![vec![Rational::zero(); k]; k];
            for i in 0..k {
                for l in 0..k {
                    if ma[i][l].is_zero() {
                        continue;
                    }
                    for j in 0..k {
                        prod[i][j] += &ma[i][l] * &mb[l][j];
                    }
                }
            }
            table.push(coords(&prod));
        }
    }
    let names = core::iter::once(String::from("1"))
        .chain(units.iter().map(|(i, j)| format!("E{}{}", i + 1, j + 1)))
        .collect();
    Algebra::from_table(dim, Some(names), table, DEFAULT_DEGREE_CAP)
}

/// `ℚ[x]/(x^k)` with basis `1, x, …, x^{k-1}`.
pub fn make_truncated_poly(k: usize) -> Result<AlgebraRef> {
    if k == 0 {
        return Err(Error::Invalid("truncation order must be at least 1".into()));
    }
    let mut table = Vec::with_capacity(k * k);
    for i in 0..k {
        for j in 0..k {
            table.push(if i + j < k { SparseVec::unit(i + j) } else { SparseVec::new() });
        }
    }
    let names = (0..k)
        .map(|i| match i {
            0 => "1".into(),
            1 => "x".into(),
            _ => format!("x^{i}"),
        })
        .collect();
    Algebra::from_table(k, Some(names), table, DEFAULT_DEGREE_CAP)
}

/// Direct product `A × B`, rebased so that slot 0 is `(1, 1)` and slot 1 is
/// `e = (1, 0)`; the remaining slots are `(a_i, 0)` then `(0, b_j)`.
pub fn make_product(a: &Algebra, b: &Algebra) -> Result<AlgebraRef> {
    let (ma, mb) = (a.dim(), b.dim());
    let dim = ma + mb;
    // Rebased slot -> (side, index) where side 0 = A, 1 = B, and slot 0 is the unit.
    // Coordinates of a pure A-element Σ c_i a_i: (c_0) on e, c_i on slot 1 + i.
    let from_a = |v: &SparseVec| -> SparseVec {
        SparseVec::from_pairs(v.entries().iter().map(|(i, c)| (if *i == 0 { 1 } else { 1 + i }, c.clone())))
    };
    // Pure B-element Σ d_j b_j: d_0 (1 - e) + Σ_{j≥1} d_j slot (ma + j).
    let from_b = |v: &SparseVec| -> SparseVec {
        SparseVec::from_pairs(v.entries().iter().flat_map(|(j, c)| {
            if *j == 0 {
                vec![(0, c.clone()), (1, -c)]
            } else {
                vec![(ma + j, c.clone())]
            }
        }))
    };
    // Each slot as a pair (A-part, B-part) of sparse coordinates.
    let slot_parts = |s: usize| -> (SparseVec, SparseVec) {
        match s {
            0 => (SparseVec::unit(0), SparseVec::unit(0)),
            1 => (SparseVec::unit(0), SparseVec::new()),
            s if s < 1 + ma => (SparseVec::unit(s - 1), SparseVec::new()),
            s => (SparseVec::new(), SparseVec::unit(s - ma)),
        }
    };
    let mul_in = |alg: &Algebra, x: &SparseVec, y: &SparseVec| -> SparseVec {
        let mut out = SparseVec::new();
        for (i, c) in x.entries() {
            for (j, d) in y.entries() {
                out.axpy(&(c * d), alg.product(*i, *j));
            }
        }
        out
    };
    let mut table = Vec::with_capacity(dim * dim);
    for s in 0..dim {
        let (xa, xb) = slot_parts(s);
        for t in 0..dim {
            let (ya, yb) = slot_parts(t);
            let mut v = from_a(&mul_in(a, &xa, &ya));
            v.axpy(&Rational::one(), &from_b(&mul_in(b, &xb, &yb)));
            table.push(v);
        }
    }
    let names = core::iter::once(String::from("1"))
        .chain(core::iter::once(String::from("e")))
        .chain((1..ma).map(|i| format!("({},0)", a.name(i))))
        .chain((1..mb).map(|j| format!("(0,{})", b.name(j))))
        .collect();
    Algebra::from_table(dim, Some(names), table, DEFAULT_DEGREE_CAP)
}

/// Group algebra `ℚ[G]` from a Cayley table whose first row and column
/// are the identity.
pub fn make_group_algebra(cayley: &[Vec<usize>]) -> Result<AlgebraRef> {
    let n = cayley.len();
    if n == 0 {
        return Err(Error::NotAGroup("empty table".into()));
    }
    for (i, row) in cayley.iter().enumerate() {
        if row.len() != n || row.iter().any(|&x| x >= n) {
            return Err(Error::NotAGroup(format!("row {i} is not a permutation of 0..{n}")));
        }
        let mut seen = vec![false; n];
        for &x in row {
            if core::mem::replace(&mut seen[x], true) {
                return Err(Error::NotAGroup(format!("row {i} repeats element {x}")));
            }
        }
        if cayley[0][i] != i || row[0] != i {
            return Err(Error::NotAGroup("element 0 is not the identity".into()));
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if cayley[cayley[a][b]][c] != cayley[a][cayley[b][c]] {
                    return Err(Error::NotAGroup(format!("not associative at ({a},{b},{c})")));
                }
            }
        }
    }
    let table = (0..n).flat_map(|i| (0..n).map(move |j| SparseVec::unit(cayley[i][j]))).collect();
    let names = (0..n).map(|i| if i == 0 { "1".into() } else { format!("g{i}") }).collect();
    Algebra::from_table(n, Some(names), table, DEFAULT_DEGREE_CAP)
}

/// Cayley table of the cyclic group of order `n`.
pub fn cyclic_group_table(n: usize) -> Vec<Vec<usize>> {
    (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect()
}
