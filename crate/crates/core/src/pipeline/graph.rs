use crate::algebra::{GaussianRational, Polynomial, Var};
use crate::calculus::VectorField;
use crate::error::PipelineError;
use crate::scalar::{q, Domain, Scalar};

/// A manifold `v₁ = φ₁(x, y, u₁, u₂)`, `v₂ = φ₂(x, y, u₁, u₂)` in `ℂ³` with
/// coordinates `z = x + iy`, `wⱼ = uⱼ + ivⱼ`.
#[derive(Clone, Debug, PartialEq)]
pub struct GraphData {
    phi1: Polynomial,
    phi2: Polynomial,
}

impl GraphData {
    /// Both graphing functions must have real coefficients.
    pub fn new(phi1: Polynomial, phi2: Polynomial) -> Result<Self, PipelineError> {
        if !phi1.has_real_coefficients() {
            return Err(PipelineError::ComplexGraph { which: "phi1" });
        }
        if !phi2.has_real_coefficients() {
            return Err(PipelineError::ComplexGraph { which: "phi2" });
        }
        Ok(Self { phi1, phi2 })
    }

    pub fn phi1(&self) -> &Polynomial {
        &self.phi1
    }

    pub fn phi2(&self) -> &Polynomial {
        &self.phi2
    }
}

/// The generator `L = ∂z + A¹∂u₁ + A²∂u₂` of `T^{1,0}M`.
#[derive(Clone, Debug)]
pub struct Generator<S> {
    pub field: VectorField<S>,
    pub a1: S,
    pub a2: S,
    /// `(i + φ₁,u₁)(i + φ₂,u₂) − φ₁,u₂ φ₂,u₁`.
    pub denominator: Polynomial,
}

fn d_z(p: &Polynomial) -> Polynomial {
    let half = q(1, 2);
    let minus_half_i = &q(-1, 2) * &GaussianRational::i();
    &p.partial(Var::X).scale(&half) + &p.partial(Var::Y).scale(&minus_half_i)
}

/// Solves `L(w₁ − w̄₁ − 2iφ₁) = L(w₂ − w̄₂ − 2iφ₂) = 0` for `A¹, A²` by Cramer's rule.
pub fn build_generator<D: Domain>(graph: &GraphData, dom: &D) -> Result<Generator<D::Scalar>, PipelineError> {
    let i = Polynomial::constant(GaussianRational::i());
    let (p1, p2) = (&graph.phi1, &graph.phi2);
    let (p1_u1, p1_u2) = (p1.partial(Var::U1), p1.partial(Var::U2));
    let (p2_u1, p2_u2) = (p2.partial(Var::U1), p2.partial(Var::U2));
    let (p1_z, p2_z) = (d_z(p1), d_z(p2));

    let diag1 = &i + &p1_u1;
    let diag2 = &i + &p2_u2;
    let denominator = &(&diag1 * &diag2) - &(&p1_u2 * &p2_u1);
    if denominator.is_zero() {
        return Err(PipelineError::DegenerateGraph { denominator: denominator.to_string() });
    }
    let num1 = &(&p1_u2 * &p2_z) - &(&p1_z * &diag2);
    let num2 = &(&p1_z * &p2_u1) - &(&diag1 * &p2_z);

    let den = dom.lift(&denominator);
    dom.require_nonzero(&den, "generator denominator")?;
    let inv = den.try_inv()?;
    let a1 = dom.lift(&num1) * inv.clone();
    let a2 = dom.lift(&num2) * inv;
    let mut field = VectorField::<D::Scalar>::d_z();
    field.coeffs[2] = a1.clone();
    field.coeffs[3] = a2.clone();
    Ok(Generator { field, a1, a2, denominator })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_polynomial;
    use crate::scalar::ExactDomain;
    use crate::ExtScalar;

    fn graph(a: &str, b: &str) -> GraphData {
        GraphData::new(parse_polynomial(a).unwrap(), parse_polynomial(b).unwrap()).unwrap()
    }

    fn s(t: &str) -> ExtScalar {
        ExtScalar::from_polynomial(parse_polynomial(t).unwrap())
    }

    #[test]
    fn cubic_generator() {
        let g = build_generator(&graph("x^2 + y^2", "2*x^3 + 2*x*y^2"), &ExactDomain::default()).unwrap();
        assert_eq!(g.a1, s("y + i*x"));
        assert_eq!(g.a2, s("2*x*y + i*(3*x^2 + y^2)"));
    }

    #[test]
    fn flat_graph_has_wirtinger_generator() {
        let g = build_generator(&graph("0", "0"), &ExactDomain::default()).unwrap();
        assert!(g.a1.is_zero() && g.a2.is_zero());
        assert!(g.field.sub(&VectorField::d_z()).is_zero());
    }

    #[test]
    fn degenerate_denominator() {
        let err = build_generator(&graph("-u2", "u1"), &ExactDomain::default()).unwrap_err();
        assert!(matches!(err, PipelineError::DegenerateGraph { .. }));
    }

    #[test]
    fn complex_coefficients_rejected() {
        let err = GraphData::new(parse_polynomial("i*x").unwrap(), Polynomial::zero()).unwrap_err();
        assert_eq!(err, PipelineError::ComplexGraph { which: "phi1" });
    }
}
