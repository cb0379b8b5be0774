//! Finite-dimensional algebras given by quivers with relations: normal
//! forms, representations and complexes of projective modules.

pub mod algebra;
pub mod analysis;
pub mod error;
pub mod field;
pub mod homotopy;
pub mod linalg;
pub mod presets;
pub mod quiver;
pub mod rep;
pub mod report;
pub mod rewrite;

pub use error::{Error, Result};
