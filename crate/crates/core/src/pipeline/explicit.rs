//! Closed-form invariants, used as a cross-check on the structural route.

use crate::calculus::{inverse, LinalgError};
use crate::error::PipelineError;
use crate::scalar::{imaginary, rational, Scalar};

use super::bundle::{InvariantSet, Route};
use super::frame::Frame;
use super::normalize::Normalizations;
use super::structure::StructureFunctions;
use super::tower::BaseCoframe;

/// Derivatives along the frame on `M` dual to `ω₃`.
struct DualDerivative<S> {
    /// `columns[j][i]`: coefficient of `E_i` in the field dual to `ω₃[j]`.
    columns: Vec<Vec<S>>,
}

impl<S: Scalar> DualDerivative<S> {
    fn new(omega3: &BaseCoframe<S>) -> Result<Self, PipelineError> {
        let m: Vec<Vec<S>> = (0..4).map(|k| (0..4).map(|i| omega3[k].coeff(&[i + 1]).coeff(0)).collect()).collect();
        let inv = inverse(&m).map_err(|e| match e {
            LinalgError::Singular => PipelineError::Consistency { check: "omega3 is invertible".into(), residual: "singular".into() },
            LinalgError::Algebra(a) => a.into(),
        })?;
        Ok(Self { columns: (0..4).map(|j| (0..4).map(|i| inv[i][j].clone()).collect()).collect() })
    }

    fn along(&self, frame: &Frame<S>, j: usize, f: &S) -> S {
        let mut acc = S::zero();
        for (i, c) in self.columns[j].iter().enumerate() {
            if !c.is_zero() {
                acc = acc + c.clone() * frame.field(i).apply(f);
            }
        }
        acc
    }
}

/// `I₀, …, I₅` from the closed forms, with `(·)_ζ` read along the frame
/// dual to `ω₃`.
pub fn invariants_explicit<S: Scalar>(
    frame: &Frame<S>,
    sf: &StructureFunctions<S>,
    n: &Normalizations<S>,
    omega3: &BaseCoframe<S>,
) -> Result<InvariantSet<S>, PipelineError> {
    let StructureFunctions { a, b, p, q, beta, .. } = sf;
    let Normalizations { c0, b0, d0, .. } = n;
    let l = |f: &S| frame.l(f);
    let lb = |f: &S| frame.l_bar(f);
    let k = |n: i64, d: i64| imaginary::<S>(n, d);
    let r = |n: i64, d: i64| rational::<S>(n, d);
    let inv_b = b.try_inv()?;
    let inv_beta = beta.try_inv()?;
    let beta3 = b.clone() * beta.clone();
    let inv_beta3 = inv_b.clone() * inv_beta.clone();

    let l_b = l(b);
    let ll_b = l(&l_b);
    let lll_b = l(&ll_b);
    let l_q = l(q);
    let ll_q = l(&l_q);
    let l_p = l(p);
    let l_a = l(a);
    let lb_b = lb(b);
    let lb_q = lb(q);
    let lb_l_b = lb(&l_b);
    let l_lb_b = l(&lb_b);

    let i2_bar = k(1, 8) * q.clone() * l_b.clone() * l_b.clone() * inv_beta.clone()
        - k(1, 8) * beta.clone() * l_b.clone() * q.clone() * q.clone()
        - k(3, 4) * ll_b.clone() * l_b.clone() * inv_beta.clone()
        + k(1, 4) * beta.clone() * l_b.clone() * l_q.clone()
        - k(1, 2) * beta.clone() * p.clone() * l_b.clone()
        - k(1, 4) * beta.clone() * q.clone() * ll_b.clone()
        - k(1, 4) * beta.clone() * q.clone() * ll_b.clone()
        - k(3, 4) * beta3.clone() * q.clone() * l_q.clone()
        + k(1, 2) * beta3.clone() * p.clone() * q.clone()
        + k(3, 8) * l_b.clone() * l_b.clone() * l_b.clone() * inv_beta3.clone()
        + k(1, 8) * beta3.clone() * q.clone() * q.clone() * q.clone()
        + k(1, 2) * beta3.clone() * ll_q.clone()
        + k(1, 2) * beta.clone() * lll_b
        - k(1, 1) * beta3 * l_p;

    let i3 = -(d0.clone() * c0.clone())
        + l_b.clone() * inv_beta.clone() * d0.clone()
        + beta.clone() * q.clone() * d0.clone()
        + a.clone() * inv_beta.clone() * d0.clone()
        - lb(d0) * inv_beta.clone()
        - k(1, 1) * b0.clone() * d0.clone()
        + k(1, 1) * b0.clone() * b0.clone() * c0.clone()
        - a.clone() * inv_beta.clone() * b0.clone() * c0.clone()
        + b0.clone() * l_a.clone()
        + b.clone() * p.clone() * b0.clone()
        + lb(b0) * inv_beta.clone() * c0.clone()
        + r(1, 2) * lb_b.clone() * inv_beta3 * b0.clone() * c0.clone();

    let i4_bar = k(3, 4) * l_b.clone() * l_b.clone() * inv_b.clone()
        + k(1, 6) * l_b.clone() * q.clone()
        + k(11, 36) * b.clone() * q.clone() * q.clone()
        - k(1, 1) * ll_b.clone()
        - k(2, 3) * b.clone() * l_q.clone()
        + k(1, 1) * b.clone() * p.clone();

    let i5_bar = k(1, 3) * l_a + k(1, 3) * lb_q - k(1, 1) * lb_l_b * inv_b.clone() + k(5, 12) * l_b.clone() * l_b.clone() * inv_b.clone()
        - k(1, 3) * b.clone() * l_q
        + k(11, 36) * b.clone() * q.clone() * q.clone()
        + k(1, 1) * b.clone() * p.clone()
        + k(2, 3) * l_lb_b * inv_b.clone()
        - k(1, 3) * ll_b
        + k(1, 3) * a.clone() * l_b.clone() * inv_b.clone()
        + k(7, 18) * l_b * q.clone()
        - k(1, 9) * lb_b * q.clone() * inv_b
        + k(1, 9) * a.clone() * q.clone();

    let i2 = i2_bar.conj();
    let dual = DualDerivative::new(omega3)?;
    let (zeta, zeta_bar) = (2, 3);
    let i1 = k(2, 3) * dual.along(frame, zeta, &i3) - k(2, 3) * dual.along(frame, zeta_bar, &i2);
    let i0 = r(-1, 2) * dual.along(frame, zeta, &i1) - r(1, 2) * dual.along(frame, zeta_bar, &i1.conj());
    Ok(InvariantSet { values: [i0, i1, i2, i3, i4_bar.conj(), i5_bar.conj()], route: Route::Explicit })
}
