//! Octon algebra over the complex numbers, operators built from left
//! multiplication, their eigenstructure and matrix representations, and the
//! first-order relativistic wave equations built from them.

pub mod algebra;
pub mod dynamics;
pub mod eigen;
pub mod error;
pub mod exec;
pub mod fields;
pub mod linalg;
pub mod operators;
pub mod report;
pub mod repr;
pub mod transforms;
pub mod verify;

pub use algebra::{Basis, Grade, Octon, C64, XI};
pub use error::{Error, Result};
