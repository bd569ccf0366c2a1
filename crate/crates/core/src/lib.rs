//! Exact engine for the biholomorphic invariants of Engel CR-manifolds
//! `M ⊂ ℂ³` given as graphs `v₁ = φ₁(x, y, u₁, u₂)`, `v₂ = φ₂(x, y, u₁, u₂)`.

#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod calculus;
pub mod corpus;
pub mod error;
pub mod exterior;
pub mod pipeline;
pub mod scalar;

pub use algebra::{Branch, ExtScalar, GaussianRational, Polynomial, RationalFunction, SqrtContext, Var};
pub use error::{AlgebraError, ParseError, PipelineError};
pub use scalar::{Domain, ExactDomain, Scalar};
