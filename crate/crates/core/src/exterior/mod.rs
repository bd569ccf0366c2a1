//! Differential forms on the bundle `M × {a ≠ 0}` with coefficients that are
//! Laurent polynomials in the fiber coordinate `a`.
//!
//! Forms are stored over a basis `(da, θ¹, …, θ⁴)` fixed by a
//! [`FrameCalculus`]: either the coordinate coframe or the coframe dual to a
//! frame of vector fields.

pub mod calculus;
pub mod coframe;
pub mod form;
pub mod scalar;

pub use calculus::{
    conj_form, coordinate_one_form, coordinate_vector, d_scalar, ext_d, CoordinateCalculus, DualFrameCalculus, FrameCalculus,
};
pub use coframe::Coframe;
pub use form::{indices_of, mask_of, BundleForm, Mask, DIM};
pub use scalar::BundleScalar;
