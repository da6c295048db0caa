//! Boolean and vectorial bent functions, their translation and addition designs,
//! design invariants, and the classification pipeline for small n.

pub mod affine;
pub mod classify;
pub mod constructions;
pub mod designs;
pub mod error;
pub mod function;
pub mod gf2;
pub mod invariants;
pub mod suites;
pub mod walsh;

pub use error::{Error, Result};
pub use function::{Anf, BooleanFunction, VectorialFunction};
