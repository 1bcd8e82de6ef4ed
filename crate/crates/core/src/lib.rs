//! Exact finite-field engine: rational points avoiding hypersurfaces in affine,
//! projective and Grassmannian spaces, points on plane curves off a divisor,
//! explicit extension-degree and rank bounds, and a genus-0 lab for the
//! cohomological semistability criterion.

pub mod algebra;
pub mod avoid;
pub mod bounds;
pub mod curvepoint;
pub mod error;
pub mod gen;
pub mod p1lab;

pub use error::{Error, Result};
