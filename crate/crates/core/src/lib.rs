//! Exact computation of dg module structures over the Tate construction of an
//! artinian local ring, and their descent to `Q/(f)`.

pub mod algebra;
pub mod complex;
pub mod descent;
pub mod dg;
pub mod error;
pub mod field;
pub mod groebner;
pub mod linalg;
pub mod poly;
pub mod problem;
pub mod report;
pub mod tate;

pub use error::{Error, Result};
