use crate::scalar::Scalar;

use super::field::VectorField;
use super::linalg::{determinant, inverse, LinalgError};

/// A frame of four vector fields with the inverse of its coefficient matrix
/// cached, so that expanding a field in the frame is a matrix product.
#[derive(Clone, Debug)]
pub struct FrameMatrix<S> {
    fields: [VectorField<S>; 4],
    inverse: Vec<Vec<S>>,
    det: S,
}

impl<S: Scalar> FrameMatrix<S> {
    /// Fails when the fields are linearly dependent.
    pub fn new(fields: [VectorField<S>; 4]) -> Result<Self, LinalgError> {
        let rows: Vec<Vec<S>> = fields.iter().map(|f| f.coeffs.to_vec()).collect();
        let det = determinant(&rows)?;
        if det.is_zero() {
            return Err(LinalgError::Singular);
        }
        let inverse = inverse(&rows)?;
        Ok(Self { fields, inverse, det })
    }

    pub fn fields(&self) -> &[VectorField<S>; 4] {
        &self.fields
    }

    pub fn field(&self, i: usize) -> &VectorField<S> {
        &self.fields[i]
    }

    /// Determinant of the matrix whose rows are the frame fields.
    pub fn det(&self) -> &S {
        &self.det
    }

    /// Coordinates `(dx, dy, du1, du2)` of the 1-form dual to field `i`.
    pub fn dual(&self, i: usize) -> [S; 4] {
        std::array::from_fn(|k| self.inverse[k][i].clone())
    }

    /// Coefficients `c` with `v = Σ cᵢ eᵢ`.
    pub fn expand(&self, v: &VectorField<S>) -> [S; 4] {
        std::array::from_fn(|i| {
            let mut acc = S::zero();
            for k in 0..4 {
                let a = &v.coeffs[k];
                let b = &self.inverse[k][i];
                if !a.is_zero() && !b.is_zero() {
                    acc = acc + a.clone() * b.clone();
                }
            }
            acc
        })
    }
}

/// One-shot expansion of `v` in the frame `fields`.
pub fn expand_in_frame<S: Scalar>(v: &VectorField<S>, fields: &[VectorField<S>; 4]) -> Result<[S; 4], LinalgError> {
    Ok(FrameMatrix::new(fields.clone())?.expand(v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_polynomial, ExtScalar, Var};

    fn s(t: &str) -> ExtScalar {
        ExtScalar::from_polynomial(parse_polynomial(t).unwrap())
    }

    #[test]
    fn expansion_recombines() {
        let e0 = VectorField::new([s("1"), s("x"), s("0"), s("u1")]);
        let e1 = VectorField::new([s("0"), s("1"), s("y"), s("0")]);
        let e2 = VectorField::d_z();
        let e3 = VectorField::new([s("0"), s("0"), s("0"), s("1 + x^2")]);
        let frame = FrameMatrix::new([e0.clone(), e1.clone(), e2.clone(), e3.clone()]).unwrap();
        assert_eq!(frame.expand(&e1).map(|c| c.to_string()), ["0", "1", "0", "0"].map(String::from));
        let v = VectorField::new([s("x*y"), s("2"), s("i*u2"), s("y")]);
        let c = frame.expand(&v);
        let back = VectorField::combine(&c, &[&e0, &e1, &e2, &e3]);
        assert!(back.sub(&v).is_zero());
    }

    #[test]
    fn dependent_fields_rejected() {
        let a = VectorField::<ExtScalar>::coordinate(Var::X);
        let b = VectorField::coordinate(Var::Y);
        let c = a.add(&b);
        let d = VectorField::coordinate(Var::U1);
        assert!(matches!(FrameMatrix::new([a, b, c, d]), Err(LinalgError::Singular)));
    }
}
