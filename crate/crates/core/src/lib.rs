//! Exact-arithmetic workbench for subgroups of the affine group of a line:
//! growth statistics, positive-independence diameters, and free-semigroup
//! certificates over number fields and the rational function field.

pub mod affine;
pub mod cli;
pub mod error;
pub mod field;
pub mod freeness;
pub mod growth;
pub mod interval;
pub mod jsonio;
pub mod mahler;
pub mod places;
pub mod poly;
pub mod rat;
pub mod roots;

pub use error::{Error, Result};
