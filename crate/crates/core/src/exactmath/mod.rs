//! Exact arithmetic: rationals, polynomials in one and two variables, and
//! sparse linear algebra over ℚ.

pub mod linalg;
pub mod poly;
pub mod rational;
pub mod scalar;

pub use linalg::{kernel_basis, quotient_basis, solve_membership, ColumnSolver, Echelon, Quotient, QuotientMap, RatMatrix, SparseVec};
pub use poly::{Poly1, Poly2};
pub use rational::{factorial, format_rational, parse_rational, rat, ratio, Rational};
pub use scalar::Scalar;
