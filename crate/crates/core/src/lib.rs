//! Graded commutative algebra over split graded fields, valuations on them,
//! and Tate algebras over non-archimedean fields, with exact arithmetic.

pub mod arith;
pub mod corpoid;
pub mod degree;
pub mod graded_ideal;
pub mod error;
pub mod poly;
pub mod sympathique;
pub mod tate;
pub mod valuation;

pub use error::{Error, Result};
