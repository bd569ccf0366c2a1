use crate::algebra::Var;
use crate::calculus::{FrameMatrix, VectorField};
use crate::scalar::Scalar;

use super::form::{indices_of, BundleForm, DIM};
use super::scalar::BundleScalar;

/// A basis `(θ¹, …, θ⁴)` of 1-forms on the base together with what `d`
/// needs: derivatives along the dual vector fields and the differentials of
/// the basis forms. Index 0 of a [`BundleForm`] is always `da`.
pub trait FrameCalculus<S: Scalar> {
    /// Derivative of a base function along the field dual to `θ^{i+1}`.
    fn derive(&self, i: usize, f: &S) -> S;

    /// `d θ^{i+1}` as a base 2-form.
    fn d_basis(&self, i: usize) -> &BundleForm<S>;

    /// The conjugate of `θ^{i+1}` expanded in the basis.
    fn conj_basis(&self, i: usize) -> &BundleForm<S>;
}

/// The coordinate coframe `(da, dx, dy, du1, du2)`.
pub struct CoordinateCalculus<S> {
    zero: BundleForm<S>,
    basis: [BundleForm<S>; 4],
}

impl<S: Scalar> CoordinateCalculus<S> {
    pub fn new() -> Self {
        Self { zero: BundleForm::zero(2), basis: std::array::from_fn(|i| BundleForm::basis(i + 1)) }
    }
}

impl<S: Scalar> Default for CoordinateCalculus<S> {
    fn default() -> Self {
        Self::new()
    }
}

impl<S: Scalar> FrameCalculus<S> for CoordinateCalculus<S> {
    fn derive(&self, i: usize, f: &S) -> S {
        f.partial(Var::from_index(i))
    }

    fn d_basis(&self, _i: usize) -> &BundleForm<S> {
        &self.zero
    }

    fn conj_basis(&self, i: usize) -> &BundleForm<S> {
        &self.basis[i]
    }
}

/// The coframe dual to a frame `(E₁, …, E₄)` of vector fields.
///
/// Functions are differentiated along the `Eⱼ`; the basis differentials come
/// from `dθⁱ(Eⱼ, Eₖ) = −θⁱ([Eⱼ, Eₖ])`.
pub struct DualFrameCalculus<S> {
    frame: FrameMatrix<S>,
    brackets: [[[S; 4]; 4]; 4],
    conj_fields: [[S; 4]; 4],
    d_basis: [BundleForm<S>; 4],
    conj_basis: [BundleForm<S>; 4],
}

impl<S: Scalar> DualFrameCalculus<S> {
    pub fn new(frame: FrameMatrix<S>) -> Self {
        let mut brackets: [[[S; 4]; 4]; 4] = std::array::from_fn(|_| std::array::from_fn(|_| std::array::from_fn(|_| S::zero())));
        for j in 0..4 {
            for k in j + 1..4 {
                let c = frame.expand(&frame.field(j).bracket(frame.field(k)));
                brackets[k][j] = c.clone().map(|x| -x);
                brackets[j][k] = c;
            }
        }
        let conj_fields: [[S; 4]; 4] = std::array::from_fn(|j| frame.expand(&frame.field(j).conj()));
        let d_basis = std::array::from_fn(|i| {
            let mut w = BundleForm::zero(2);
            for j in 0..4 {
                for k in j + 1..4 {
                    let c = -brackets[j][k][i].clone();
                    w = w.add(&BundleForm::monomial(&[j + 1, k + 1], BundleScalar::from_base(c)));
                }
            }
            w
        });
        let conj_basis = std::array::from_fn(|i| {
            let coeffs: Vec<BundleScalar<S>> =
                std::iter::once(BundleScalar::zero()).chain((0..4).map(|j| BundleScalar::from_base(conj_fields[j][i].conj()))).collect();
            BundleForm::one_form(&coeffs)
        });
        Self { frame, brackets, conj_fields, d_basis, conj_basis }
    }

    pub fn frame(&self) -> &FrameMatrix<S> {
        &self.frame
    }

    /// Coefficients of `[Eⱼ, Eₖ]` in the frame.
    pub fn bracket(&self, j: usize, k: usize) -> &[S; 4] {
        &self.brackets[j][k]
    }

    /// Coefficients of `conj(Eⱼ)` in the frame.
    pub fn conj_field(&self, j: usize) -> &[S; 4] {
        &self.conj_fields[j]
    }

    /// `θ^{i+1}` in the coordinate coframe `(dx, dy, du1, du2)`.
    pub fn dual_form(&self, i: usize) -> [S; 4] {
        self.frame.dual(i)
    }
}

impl<S: Scalar> FrameCalculus<S> for DualFrameCalculus<S> {
    fn derive(&self, i: usize, f: &S) -> S {
        self.frame.field(i).apply(f)
    }

    fn d_basis(&self, i: usize) -> &BundleForm<S> {
        &self.d_basis[i]
    }

    fn conj_basis(&self, i: usize) -> &BundleForm<S> {
        &self.conj_basis[i]
    }
}

/// `df = ∂ₐf da + Σ Eᵢ(f) θⁱ` for a bundle scalar.
pub fn d_scalar<S: Scalar, C: FrameCalculus<S> + ?Sized>(f: &BundleScalar<S>, calc: &C) -> BundleForm<S> {
    let mut coeffs = Vec::with_capacity(DIM);
    coeffs.push(f.d_a());
    for i in 0..4 {
        coeffs.push(f.map(|c| calc.derive(i, c)));
    }
    BundleForm::one_form(&coeffs)
}

fn d_basis_monomial<S: Scalar, C: FrameCalculus<S> + ?Sized>(indices: &[usize], calc: &C) -> BundleForm<S> {
    let mut out = BundleForm::zero(indices.len() + 1);
    for (pos, &k) in indices.iter().enumerate() {
        if k == 0 {
            continue;
        }
        let dk = calc.d_basis(k - 1);
        if dk.is_zero() {
            continue;
        }
        let before = BundleForm::monomial(&indices[..pos], BundleScalar::one());
        let after = BundleForm::monomial(&indices[pos + 1..], BundleScalar::one());
        let term = before.wedge(dk).wedge(&after);
        out = if pos % 2 == 0 { out.add(&term) } else { out.sub(&term) };
    }
    out
}

/// Exterior derivative relative to the calculus' basis.
pub fn ext_d<S: Scalar, C: FrameCalculus<S> + ?Sized>(w: &BundleForm<S>, calc: &C) -> BundleForm<S> {
    let mut out = BundleForm::zero(w.degree() + 1);
    for (m, f) in w.terms() {
        let indices = indices_of(m);
        let basis = BundleForm::monomial(&indices, BundleScalar::one());
        out = out.add(&d_scalar(f, calc).wedge(&basis));
        let db = d_basis_monomial(&indices, calc);
        if !db.is_zero() {
            out = out.add(&db.scale(f));
        }
    }
    out
}

/// Complex conjugate of a form; `da` is real.
pub fn conj_form<S: Scalar, C: FrameCalculus<S> + ?Sized>(w: &BundleForm<S>, calc: &C) -> BundleForm<S> {
    let images: [BundleForm<S>; DIM] = std::array::from_fn(|i| if i == 0 { BundleForm::basis(0) } else { calc.conj_basis(i - 1).clone() });
    w.map_coeffs(BundleScalar::conj).substitute(&images)
}

/// The base 1-form `Σ cᵥ dv` as a bundle form over the coordinate coframe.
pub fn coordinate_one_form<S: Scalar>(coeffs: &[S; 4]) -> BundleForm<S> {
    let c: Vec<BundleScalar<S>> =
        std::iter::once(BundleScalar::zero()).chain(coeffs.iter().cloned().map(BundleScalar::from_base)).collect();
    BundleForm::one_form(&c)
}

/// Pairing vector of a base field for [`BundleForm::interior`] in the
/// coordinate coframe.
pub fn coordinate_vector<S: Scalar>(v: &VectorField<S>) -> [BundleScalar<S>; DIM] {
    std::array::from_fn(|i| if i == 0 { BundleScalar::zero() } else { BundleScalar::from_base(v.coeffs[i - 1].clone()) })
}
