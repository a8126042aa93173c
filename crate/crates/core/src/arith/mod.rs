//! Exact arithmetic: runtime fields, univariate polynomials, factorization
//! and linear algebra.

pub mod factor;
pub mod field;
pub mod linalg;
pub mod upoly;

pub use field::{Elem, Field, Rat};
