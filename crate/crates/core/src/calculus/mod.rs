//! Vector fields on `M` in the coordinate basis `(∂x, ∂y, ∂u1, ∂u2)`, Lie
//! brackets, and linear algebra over the scalar field.

pub mod field;
pub mod frame;
pub mod linalg;

pub use field::VectorField;
pub use frame::{expand_in_frame, FrameMatrix};
pub use linalg::{determinant, inverse, solve, solve_many, Elim, LinalgError};
