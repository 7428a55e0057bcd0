//! Generalized local cohomology and the depth and cohomological dimension of
//! pairs of finitely generated graded modules over `GF(p)[x_1..x_n]/J`.

pub mod cache;
pub mod dsl;
pub mod error;
pub mod field;
pub mod graded;
pub mod homological;
pub mod groebner;
pub mod linalg;
pub mod local_cohomology;
pub mod module;
pub mod pair;
pub mod monomial;
pub mod poly;
pub mod polyparse;
pub mod ring;
pub mod verifier;

pub use error::{Error, Result};
