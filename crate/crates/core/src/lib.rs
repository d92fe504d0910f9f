//! Exact Hilbert series of invariant subspaces of graded `GL_n`-representations.
//!
//! The pipeline runs formal characters through a Schur expansion, applies
//! the linear map `D` sending each irreducible character to the dimension of
//! its `G`-fixed space, and reconstructs a closed form `P(q) / prod (1 - q^d)`
//! from the resulting integer series. All arithmetic is exact.

pub mod error;
pub mod invariants;
mod json;
pub mod laurent;
pub mod nice_rational;
pub mod reconstruct;
pub mod schur;
pub mod worked;

pub use error::{Error, Result};
pub use json::JsonInt;
pub use laurent::{CharacterSeries, Exponent, IntSeries, LaurentPoly, DEFAULT_ORDER};
pub use nice_rational::{Decomposition, DecompositionTerm, DenomFactor, NiceRational};
pub use schur::{
    e_factor, kostka, schur_expand, schur_poly, schur_poly_bialternant, EFactor, GenPartition,
    SchurExpansion,
};
