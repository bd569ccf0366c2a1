//! The scalar interface shared by the exact field and numeric jets.
//!
//! The pipeline is written once against [`Scalar`] and [`Domain`], then run
//! exactly over [`ExtScalar`] or numerically over truncated Taylor jets.

use std::fmt::{Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::algebra::{Branch, ExtScalar, GaussianRational, Polynomial, SqrtContext, Var};
use crate::error::{AlgebraError, PipelineError};

/// A commutative field element with conjugation and partial derivatives in
/// the real coordinates `x, y, u1, u2`.
pub trait Scalar:
    Clone + Debug + Display + Send + Sync + 'static + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    fn constant(c: GaussianRational) -> Self;

    fn zero() -> Self {
        Self::constant(GaussianRational::from_integer(0))
    }

    fn one() -> Self {
        Self::constant(GaussianRational::from_integer(1))
    }

    fn scale(&self, c: &GaussianRational) -> Self;

    fn try_inv(&self) -> Result<Self, AlgebraError>;

    /// Structural zero test: exact for the field, bitwise for jets.
    fn is_zero(&self) -> bool;

    fn conj(&self) -> Self;

    fn partial(&self, v: Var) -> Self;

    /// Preference for elimination pivots, lower is better; `None` rules the
    /// element out as a pivot.
    fn pivot_cost(&self) -> Option<f64>;
}

/// Factory for lifting input polynomials and adjoining `B^{1/2}`.
pub trait Domain {
    type Scalar: Scalar;

    fn lift(&self, p: &Polynomial) -> Self::Scalar;

    /// Returns `B^{1/2}` on the configured branch, together with `B`
    /// re-expressed in the extended field.
    fn adjoin_sqrt(&self, b: &Self::Scalar) -> Result<(Self::Scalar, Self::Scalar), PipelineError>;

    /// Rejects a value that must be nonzero for the computation to proceed.
    fn require_nonzero(&self, s: &Self::Scalar, what: &str) -> Result<(), PipelineError>;

    /// Whether identity residuals are meaningful (exact arithmetic).
    fn is_exact(&self) -> bool;
}

impl Scalar for ExtScalar {
    fn constant(c: GaussianRational) -> Self {
        ExtScalar::constant(c)
    }

    fn scale(&self, c: &GaussianRational) -> Self {
        ExtScalar::scale(self, c)
    }

    fn try_inv(&self) -> Result<Self, AlgebraError> {
        ExtScalar::try_inv(self)
    }

    fn is_zero(&self) -> bool {
        ExtScalar::is_zero(self)
    }

    fn conj(&self) -> Self {
        ExtScalar::conj(self)
    }

    fn partial(&self, v: Var) -> Self {
        ExtScalar::partial(self, v)
    }

    fn pivot_cost(&self) -> Option<f64> {
        (!self.is_zero()).then(|| self.size() as f64)
    }
}

/// The exact domain: Gaussian-rational functions extended by `B^{1/2}`.
#[derive(Clone, Copy, Debug, Default)]
pub struct ExactDomain {
    pub branch: Branch,
}

impl Domain for ExactDomain {
    type Scalar = ExtScalar;

    fn lift(&self, p: &Polynomial) -> ExtScalar {
        ExtScalar::from_polynomial(p.clone())
    }

    fn adjoin_sqrt(&self, b: &ExtScalar) -> Result<(ExtScalar, ExtScalar), PipelineError> {
        if !b.q().is_zero() {
            return Err(PipelineError::Consistency { check: "radicand lies in the base field".into(), residual: b.to_string() });
        }
        let ctx = SqrtContext::new(b.p().clone(), self.branch).ok_or(AlgebraError::DivisionByZero)?;
        let ctx = Arc::new(ctx);
        Ok((ExtScalar::sqrt_of_radicand(&ctx), b.in_context(&ctx)?))
    }

    fn require_nonzero(&self, s: &ExtScalar, _what: &str) -> Result<(), PipelineError> {
        if s.is_zero() {
            Err(AlgebraError::DivisionByZero.into())
        } else {
            Ok(())
        }
    }

    fn is_exact(&self) -> bool {
        true
    }
}

/// `a / b` for scalars, failing on a zero divisor.
pub fn div<S: Scalar>(a: S, b: &S) -> Result<S, AlgebraError> {
    Ok(a * b.try_inv()?)
}

/// Shorthand for the Gaussian rational `n/d`.
pub fn q(n: i64, d: i64) -> GaussianRational {
    GaussianRational::from_ratio(n, d)
}

/// Shorthand for `(n/d)·i`.
pub fn qi(n: i64, d: i64) -> GaussianRational {
    &GaussianRational::from_ratio(n, d) * &GaussianRational::i()
}

/// The scalar constant `n/d`.
pub fn rational<S: Scalar>(n: i64, d: i64) -> S {
    S::constant(q(n, d))
}

/// The scalar constant `(n/d)·i`.
pub fn imaginary<S: Scalar>(n: i64, d: i64) -> S {
    S::constant(qi(n, d))
}
