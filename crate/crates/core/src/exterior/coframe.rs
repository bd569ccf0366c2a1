use crate::calculus::{determinant, inverse, LinalgError};
use crate::error::AlgebraError;
use crate::scalar::Scalar;

use super::form::{BundleForm, DIM};
use super::scalar::BundleScalar;

/// Five 1-forms expressed over a calculus basis, with the inverse change of
/// basis cached.
#[derive(Clone, Debug)]
pub struct Coframe<S> {
    forms: [BundleForm<S>; DIM],
    matrix: Vec<Vec<BundleScalar<S>>>,
    inverse: Vec<Vec<BundleScalar<S>>>,
    from_basis: [BundleForm<S>; DIM],
}

impl<S: Scalar> Coframe<S> {
    /// Fails with [`LinalgError::Singular`] when the forms are dependent, or
    /// when elimination would need a pivot that is not a single `a`-weight.
    pub fn new(forms: [BundleForm<S>; DIM]) -> Result<Self, LinalgError> {
        assert!(forms.iter().all(|f| f.degree() == 1 || f.is_zero()), "coframe of non-1-forms");
        let matrix: Vec<Vec<BundleScalar<S>>> = forms.iter().map(|f| (0..DIM).map(|c| f.coeff(&[c])).collect()).collect();
        let inverse = inverse(&matrix)?;
        let from_basis = std::array::from_fn(|i| BundleForm::one_form(&inverse[i]));
        Ok(Self { forms, matrix, inverse, from_basis })
    }

    /// The identity coframe of the basis itself.
    pub fn identity() -> Self {
        Self::new(std::array::from_fn(BundleForm::basis)).expect("identity is invertible")
    }

    pub fn forms(&self) -> &[BundleForm<S>; DIM] {
        &self.forms
    }

    pub fn form(&self, i: usize) -> &BundleForm<S> {
        &self.forms[i]
    }

    /// Rewrites `w`, given over the basis, in the wedge basis of the coframe.
    pub fn expand(&self, w: &BundleForm<S>) -> BundleForm<S> {
        w.substitute(&self.from_basis)
    }

    /// Inverse of [`Coframe::expand`].
    pub fn recombine(&self, w: &BundleForm<S>) -> BundleForm<S> {
        w.substitute(&self.forms)
    }

    /// Pairings `θⁱ(Vⱼ)` of the basis with the vector `Vⱼ` dual to form `j`.
    pub fn dual_vector(&self, j: usize) -> [BundleScalar<S>; DIM] {
        std::array::from_fn(|i| self.inverse[i][j].clone())
    }

    /// Determinant of the coefficient matrix over the basis.
    pub fn determinant(&self) -> Result<BundleScalar<S>, AlgebraError> {
        determinant(&self.matrix)
    }
}
