//! The builtin test algebras.

use alloc::vec::Vec;

use crate::algebra::{
    cyclic_group_table, make_group_algebra, make_matrix_algebra, make_product, make_truncated_poly, AlgebraHom, AlgebraRef,
};
use crate::error::{Error, Result};
use crate::exactmath::{rat, RatMatrix};

/// Names accepted by [`fixture`], in a fixed order.
pub const FIXTURE_NAMES: [&str; 6] = ["Q", "dual", "trunc3", "QxQ", "M2", "QC2"];

/// Builds a builtin algebra by name with the given degree cap.
pub fn fixture(name: &str, degree_cap: usize) -> Result<AlgebraRef> {
    let alg = match name {
        "Q" => make_matrix_algebra(1)?,
        "dual" => make_truncated_poly(2)?,
        "trunc3" => make_truncated_poly(3)?,
        "QxQ" => {
            let q = make_matrix_algebra(1)?;
            make_product(&q, &q)?
        }
        "M2" => make_matrix_algebra(2)?,
        "QC2" => make_group_algebra(&cyclic_group_table(2))?,
        _ => return Err(Error::Invalid(alloc::format!("unknown fixture {name:?}; expected one of {}", FIXTURE_NAMES.join(", ")))),
    };
    alg.with_degree_cap(degree_cap)
}

/// Every builtin algebra, paired with its name.
pub fn all_fixtures(degree_cap: usize) -> Result<Vec<(&'static str, AlgebraRef)>> {
    FIXTURE_NAMES.iter().map(|&n| Ok((n, fixture(n, degree_cap)?))).collect()
}

/// A nontrivial unital map out of each builtin algebra, used for naturality
/// checks. Both ends carry `degree_cap`.
///
/// `ℚ → M₂` is the unit, `ℚ[ε] → ℚ` kills `ε`, `ℚ[x]/(x³) → ℚ[ε]` sends
/// `x ↦ ε`, `ℚ×ℚ → M₂` sends `e ↦ E11`, `M₂ → M₂` is conjugation by
/// `[[1, 1], [0, 1]]` and `ℚ[C₂] → ℚ×ℚ` sends `g ↦ (1, −1)`.
pub fn sample_hom(name: &str, degree_cap: usize) -> Result<AlgebraHom> {
    let (target, rows): (&str, &[&[i64]]) = match name {
        "Q" => ("M2", &[&[1], &[0], &[0], &[0]]),
        "dual" => ("Q", &[&[1, 0]]),
        "trunc3" => ("dual", &[&[1, 0, 0], &[0, 1, 0]]),
        "QxQ" => ("M2", &[&[1, 0], &[0, 1], &[0, 0], &[0, 0]]),
        "M2" => ("M2", &[&[1, 0, 0, -1], &[0, 1, 0, 2], &[0, -1, 1, -1], &[0, 0, 0, 1]]),
        "QC2" => ("QxQ", &[&[1, -1], &[0, 2]]),
        _ => return Err(Error::Invalid(alloc::format!("unknown fixture {name:?}"))),
    };
    let m = RatMatrix::from_rows(&rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect::<Vec<_>>())?;
    AlgebraHom::new(fixture(name, degree_cap)?, fixture(target, degree_cap)?, &m)
}
