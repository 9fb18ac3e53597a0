//! Exact symbolic engine for universal noncommutative differential forms,
//! Karoubi–Chern characters, Chern–Simons transgression forms and the maps of
//! noncommutative differential K-theory, over finite-dimensional unital
//! ℚ-algebras given by structure constants.
//!
//! Everything is exact: coefficients are arbitrary-precision rationals and
//! every identity is checked as literal equality.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod algebra;
pub mod connections;
pub mod error;
pub mod exactmath;
pub mod fixtures;
pub mod khat;
pub mod transgression;
pub mod uforms;

pub use error::{Error, Result};
