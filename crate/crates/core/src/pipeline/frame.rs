use crate::calculus::{FrameMatrix, LinalgError, VectorField};
use crate::error::PipelineError;
use crate::exterior::DualFrameCalculus;
use crate::scalar::{Domain, Scalar};

use super::graph::Generator;

/// Positions of the frame fields; `θ^{i+1}` of the dual coframe is dual to
/// field `i`.
pub const S_FIELD: usize = 0;
pub const T_FIELD: usize = 1;
pub const L_FIELD: usize = 2;
pub const LBAR_FIELD: usize = 3;

/// The frame `(S, T, L, L̄)` with `T = i[L, L̄]` and `S = [L, T]`, and the
/// exterior calculus of its dual coframe `ω₀ = (σ₀, ρ₀, ζ₀, ζ̄₀)`.
pub struct Frame<S> {
    pub calculus: DualFrameCalculus<S>,
}

impl<S: Scalar> Frame<S> {
    pub fn field(&self, i: usize) -> &VectorField<S> {
        self.calculus.frame().field(i)
    }

    pub fn l(&self, f: &S) -> S {
        self.field(L_FIELD).apply(f)
    }

    pub fn l_bar(&self, f: &S) -> S {
        self.field(LBAR_FIELD).apply(f)
    }

    /// Determinant of the rows `(S, T, L, L̄)` over the coordinate basis.
    pub fn det(&self) -> &S {
        self.calculus.frame().det()
    }
}

/// Builds the frame, failing with `NotClassII` when the four fields are
/// dependent as functions.
pub fn build_frame<D: Domain>(generator: &Generator<D::Scalar>, dom: &D) -> Result<Frame<D::Scalar>, PipelineError> {
    let l = generator.field.clone();
    let l_bar = l.conj();
    let t = l.bracket(&l_bar).scale_const(&crate::GaussianRational::i());
    let s = l.bracket(&t);
    let matrix = match FrameMatrix::new([s, t, l, l_bar]) {
        Ok(m) => m,
        Err(LinalgError::Singular) if dom.is_exact() => {
            return Err(PipelineError::NotClassII {
                reason: "L, conj(L), [L, conj(L)] and [L, [L, conj(L)]] are linearly dependent".into(),
                locus: None,
            })
        }
        Err(LinalgError::Singular) => return Err(PipelineError::VanishingValue { what: "frame determinant".into() }),
        Err(LinalgError::Algebra(e)) => return Err(e.into()),
    };
    Ok(Frame { calculus: DualFrameCalculus::new(matrix) })
}
