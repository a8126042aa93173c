//! Multivariate polynomials, Groebner bases and ideal operations.

pub mod components;
pub mod decomp;
pub mod geometric;
pub mod groebner;
pub mod ideal;
pub mod mfactor;
pub mod mpoly;
pub mod parse;

pub use ideal::Ideal;
pub use mpoly::{MonomialOrder, Mono, Poly, PolyRing};
