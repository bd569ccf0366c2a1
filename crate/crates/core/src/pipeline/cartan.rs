use crate::exterior::{BundleForm, BundleScalar, DIM};
use crate::scalar::Scalar;

use super::bundle::{BundleCoframe, LAMBDA, RHO, SIGMA, ZETA, ZETA_BAR};
use super::checks::CheckLog;
use super::frame::Frame;
use super::model::ModelAlgebra;

const NAMES: [&str; DIM] = ["Lambda", "sigma", "rho", "zeta", "conj(zeta)"];

/// `a ∂/∂a` over the calculus basis `(da, σ₀, ρ₀, ζ₀, ζ̄₀)`.
fn vertical_field<S: Scalar>() -> [BundleScalar<S>; DIM] {
    std::array::from_fn(|k| if k == 0 { BundleScalar::a_pow(1) } else { BundleScalar::zero() })
}

/// Verticality, equivariance against `−ad_{e_α}` of the flat model, and
/// nondegeneracy of `(Λ, σ, ρ, ζ, ζ̄)` over `(da, dx, dy, du₁, du₂)`.
pub fn verify_cartan_connection<S: Scalar>(frame: &Frame<S>, bundle: &BundleCoframe<S>, log: &mut CheckLog) {
    if !log.enabled() {
        return;
    }
    let v = vertical_field::<S>();
    let forms = bundle.coframe.forms();
    for (k, name) in NAMES.iter().enumerate() {
        let expected = if k == LAMBDA { BundleScalar::one() } else { BundleScalar::zero() };
        log.require_zero_form(&format!("vertical: {name}(a d/da) = {}", u8::from(k == LAMBDA)), || {
            forms[k].interior(&v).sub(&BundleForm::scalar(expected))
        });
    }

    let model = ModelAlgebra::flat_model();
    for (k, name) in NAMES.iter().enumerate() {
        let mut expected = BundleForm::<S>::zero(1);
        for j in 0..DIM {
            let c = -model.bracket(LAMBDA, j)[k].clone();
            expected = expected.add(&BundleForm::basis(j).scale(&BundleScalar::constant(c)));
        }
        log.require_zero_form(&format!("equivariant: (a d/da) contracted into d({name}) is -ad(e_alpha)"), || {
            bundle.coframe.expand(&bundle.d[k].interior(&v)).sub(&expected)
        });
    }
    let weights = [(SIGMA, 3), (RHO, 2), (ZETA, 1), (ZETA_BAR, 1)];
    log.require_that(
        "equivariant: weights are (0, 3, 2, 1, 1)",
        || weights.iter().all(|&(j, w)| model.bracket(LAMBDA, j)[j] == crate::GaussianRational::from_integer(-w)),
        || model.to_string(),
    );

    let det = bundle.coframe.determinant();
    log.require_that(
        "nondegenerate: coframe determinant over (da, dx, dy, du1, du2) is nonzero",
        || matches!(&det, Ok(d) if !d.is_zero()) && !frame.det().is_zero(),
        || format!("{det:?}"),
    );
}
