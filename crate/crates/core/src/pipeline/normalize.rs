use crate::error::PipelineError;
use crate::scalar::{imaginary, rational, Scalar};

use super::checks::CheckLog;
use super::frame::Frame;
use super::structure::StructureFunctions;

/// The group normalizations `c = a²C₀`, `b = aB₀`, `d = aD₀`, `d̄ = aD̄₀`.
#[derive(Clone, Debug)]
pub struct Normalizations<S> {
    pub c0: S,
    pub b0: S,
    pub d0: S,
    /// The closed form for `conj(D₀)`, including the `(i/3)·B·Q²` term.
    pub d0_bar: S,
}

/// Evaluates the closed forms and checks them against conjugation.
pub fn compute_normalizations<S: Scalar>(
    frame: &Frame<S>,
    sf: &StructureFunctions<S>,
    log: &mut CheckLog,
) -> Result<Normalizations<S>, PipelineError> {
    let StructureFunctions { a, b, p, q, beta, .. } = sf;
    let l = |f: &S| frame.l(f);
    let lb = |f: &S| frame.l_bar(f);
    let k = |n: i64, d: i64| imaginary::<S>(n, d);
    let inv_b = b.try_inv()?;
    let inv_beta = beta.try_inv()?;
    let l_b = l(b);
    let lb_b = lb(b);
    let l_a = l(a);

    let c0 = l_b.clone() * inv_beta.clone() * rational(1, 2) + q.clone() * beta.clone() * rational(1, 2);
    let b0 = k(1, 3) * lb_b.clone() * inv_b.clone() * inv_beta.clone()
        - k(1, 3) * a.clone() * inv_beta.clone()
        - k(1, 6) * beta.clone() * q.clone()
        - k(1, 6) * l_b.clone() * inv_beta.clone();
    let d0 = -(k(2, 3) * l_b.clone() * q.clone()) - k(1, 6) * l_b.clone() * a.clone() * inv_b.clone() - k(1, 6) * a.clone() * q.clone()
        + k(1, 6) * lb_b.clone() * q.clone() * inv_b.clone()
        - k(1, 3) * l_b.clone() * l_b.clone() * inv_b.clone()
        - k(1, 3) * b.clone() * q.clone() * q.clone()
        - k(1, 1) * l_a.clone()
        - k(1, 3) * lb_b.clone() * l_b.clone() * inv_b.clone() * inv_b.clone()
        + k(1, 2) * lb(&l_b) * inv_b.clone()
        + k(1, 2) * lb(q)
        - k(1, 1) * b.clone() * p.clone();
    let d0_bar_short = k(1, 2) * l_b.clone() * l_b.clone() * inv_b.clone() + k(1, 3) * q.clone() * l_b.clone()
        - k(1, 2) * l(&l_b)
        - k(1, 2) * b.clone() * l(q)
        + k(1, 2) * a.clone() * l_b.clone() * inv_b
        + k(1, 6) * a.clone() * q.clone()
        + k(1, 1) * b.clone() * p.clone();
    let d0_bar = d0_bar_short.clone() + k(1, 3) * b.clone() * q.clone() * q.clone();

    log.require_zero("coherency: conj(D0) = D0bar", || d0.conj() - d0_bar.clone());
    log.compare("coherency: conj(D0) against D0bar without the B Q^2 term", || d0.conj() - d0_bar_short);
    log.require_zero("conj(C0) = C0 + A / B^(1/2)", || c0.conj() - c0.clone() - a.clone() * inv_beta.clone());
    Ok(Normalizations { c0, b0, d0, d0_bar })
}
