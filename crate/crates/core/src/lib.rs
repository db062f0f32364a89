//! Koszul cohomology of paracanonical rational nodal curves over prime fields.
//!
//! The crate computes graded Betti numbers of curves glued from the
//! projective line. It does this with dense linear algebra over F_p, either
//! directly from Koszul complexes or after an artinian reduction by two
//! sections. It also evaluates the divisor-class formulas on the moduli space
//! of level curves with exact rational arithmetic.

pub mod curve;
pub mod error;
pub mod ff;
pub mod linalg;
pub mod poly;
pub mod rng;

pub use curve::{LineBundleData, NodalRationalCurve, SectionSpace};
pub use error::{Result, SyzError};
pub use ff::FieldParams;
pub use linalg::MatrixFp;
pub use poly::Poly;
pub mod artinian;
pub mod betti;
pub mod divclass;
pub mod koszul;
