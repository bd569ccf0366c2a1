use std::fmt;

use crate::algebra::{GaussianRational, Var};
use crate::scalar::Scalar;

/// First-order operator `Σ cᵥ ∂ᵥ` over the real coordinates.
///
/// The basis fields are real, so conjugation acts on coefficients only.
#[derive(Clone, Debug)]
pub struct VectorField<S> {
    pub coeffs: [S; 4],
}

impl<S: Scalar> VectorField<S> {
    pub fn new(coeffs: [S; 4]) -> Self {
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self::new(std::array::from_fn(|_| S::zero()))
    }

    pub fn coordinate(v: Var) -> Self {
        Self::new(std::array::from_fn(|k| if k == v.index() { S::one() } else { S::zero() }))
    }

    /// `∂z = ½(∂x − i∂y)`.
    pub fn d_z() -> Self {
        let half = GaussianRational::from_ratio(1, 2);
        let minus_half_i = &GaussianRational::from_ratio(-1, 2) * &GaussianRational::i();
        Self::new([S::constant(half), S::constant(minus_half_i), S::zero(), S::zero()])
    }

    /// `∂z̄ = ½(∂x + i∂y)`.
    pub fn d_zbar() -> Self {
        Self::d_z().conj()
    }

    pub fn coeff(&self, v: Var) -> &S {
        &self.coeffs[v.index()]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(S::is_zero)
    }

    /// `V(f) = Σ cᵥ ∂f/∂v`.
    pub fn apply(&self, f: &S) -> S {
        let mut acc = S::zero();
        for v in Var::ALL {
            let c = &self.coeffs[v.index()];
            if c.is_zero() {
                continue;
            }
            let d = f.partial(v);
            if d.is_zero() {
                continue;
            }
            acc = acc + c.clone() * d;
        }
        acc
    }

    /// `[V, W]` with coefficients `V(Wᵥ) − W(Vᵥ)`.
    pub fn bracket(&self, w: &Self) -> Self {
        Self::new(std::array::from_fn(|k| self.apply(&w.coeffs[k]) - w.apply(&self.coeffs[k])))
    }

    pub fn conj(&self) -> Self {
        Self::new(std::array::from_fn(|k| self.coeffs[k].conj()))
    }

    pub fn scale(&self, s: &S) -> Self {
        Self::new(std::array::from_fn(|k| s.clone() * self.coeffs[k].clone()))
    }

    pub fn scale_const(&self, c: &GaussianRational) -> Self {
        Self::new(std::array::from_fn(|k| self.coeffs[k].scale(c)))
    }

    pub fn add(&self, w: &Self) -> Self {
        Self::new(std::array::from_fn(|k| self.coeffs[k].clone() + w.coeffs[k].clone()))
    }

    pub fn sub(&self, w: &Self) -> Self {
        Self::new(std::array::from_fn(|k| self.coeffs[k].clone() - w.coeffs[k].clone()))
    }

    /// `Σ aⱼ Vⱼ`.
    pub fn combine(coeffs: &[S], fields: &[&Self]) -> Self {
        let mut acc = Self::zero();
        for (a, f) in coeffs.iter().zip(fields) {
            if !a.is_zero() {
                acc = acc.add(&f.scale(a));
            }
        }
        acc
    }
}

impl<S: Scalar> fmt::Display for VectorField<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in Var::ALL {
            let c = &self.coeffs[v.index()];
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({c})*d{v}")?;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_polynomial, ExtScalar};

    fn s(t: &str) -> ExtScalar {
        ExtScalar::from_polynomial(parse_polynomial(t).unwrap())
    }

    #[test]
    fn wirtinger_derivative() {
        let dz = VectorField::<ExtScalar>::d_z();
        assert_eq!(dz.apply(&s("x^2 + y^2")), s("x - i*y"));
    }

    #[test]
    fn bracket_examples() {
        let dx = VectorField::<ExtScalar>::coordinate(Var::X);
        let x_dy = VectorField::new([s("0"), s("x"), s("0"), s("0")]);
        let b = dx.bracket(&x_dy);
        assert!(b.sub(&VectorField::coordinate(Var::Y)).is_zero());
        assert!(b.add(&x_dy.bracket(&dx)).is_zero());
    }
}
