//! Elements `p + q·β` of the quadratic extension by `β = B^{1/2}`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::gaussian::GaussianRational;
use super::monomial::Var;
use super::polynomial::Polynomial;
use super::rational::RationalFunction;
use super::sqrt::SqrtContext;
use crate::error::AlgebraError;

/// `p + q·β`; `ctx = None` is the trivial context, in which `q = 0`.
///
/// Values from the trivial context combine with values from any context.
#[derive(Clone)]
pub struct ExtScalar {
    p: RationalFunction,
    q: RationalFunction,
    ctx: Option<Arc<SqrtContext>>,
}

fn merge_ctx(a: &Option<Arc<SqrtContext>>, b: &Option<Arc<SqrtContext>>) -> Result<Option<Arc<SqrtContext>>, AlgebraError> {
    match (a, b) {
        (None, None) => Ok(None),
        (Some(c), None) | (None, Some(c)) => Ok(Some(c.clone())),
        (Some(c), Some(d)) if Arc::ptr_eq(c, d) => Ok(Some(c.clone())),
        _ => Err(AlgebraError::MismatchedContext),
    }
}

impl ExtScalar {
    pub fn from_rational(p: RationalFunction) -> Self {
        Self { p, q: RationalFunction::zero(), ctx: None }
    }

    pub fn from_polynomial(p: Polynomial) -> Self {
        Self::from_rational(RationalFunction::from_polynomial(p))
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::from_rational(RationalFunction::constant(c))
    }

    pub fn zero() -> Self {
        Self::from_rational(RationalFunction::zero())
    }

    pub fn one() -> Self {
        Self::from_rational(RationalFunction::one())
    }

    /// Builds `p + q·β`, folding `q` into `p` when `β` has a rational root.
    pub fn new(p: RationalFunction, q: RationalFunction, ctx: Option<Arc<SqrtContext>>) -> Self {
        match &ctx {
            None => {
                assert!(q.is_zero(), "beta part in the trivial context");
                Self { p, q, ctx }
            }
            Some(c) => match c.root() {
                Some(r) if !q.is_zero() => Self { p: &p + &(&q * r), q: RationalFunction::zero(), ctx },
                _ => Self { p, q, ctx },
            },
        }
    }

    /// The generator `branch · β` of the context.
    pub fn sqrt_of_radicand(ctx: &Arc<SqrtContext>) -> Self {
        let sign = RationalFunction::constant(GaussianRational::from_integer(ctx.branch().sign()));
        Self::new(RationalFunction::zero(), sign, Some(ctx.clone()))
    }

    /// Re-tags a trivial-context value with `ctx`.
    pub fn in_context(&self, ctx: &Arc<SqrtContext>) -> Result<Self, AlgebraError> {
        let c = merge_ctx(&self.ctx, &Some(ctx.clone()))?;
        Ok(Self { p: self.p.clone(), q: self.q.clone(), ctx: c })
    }

    pub fn p(&self) -> &RationalFunction {
        &self.p
    }

    pub fn q(&self) -> &RationalFunction {
        &self.q
    }

    pub fn context(&self) -> Option<&Arc<SqrtContext>> {
        self.ctx.as_ref()
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.p.is_one() && self.q.is_zero()
    }

    pub fn as_constant(&self) -> Option<GaussianRational> {
        if self.q.is_zero() {
            self.p.as_constant()
        } else {
            None
        }
    }

    pub fn try_add(&self, o: &Self) -> Result<Self, AlgebraError> {
        let ctx = merge_ctx(&self.ctx, &o.ctx)?;
        Ok(Self { p: &self.p + &o.p, q: &self.q + &o.q, ctx })
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self, AlgebraError> {
        let ctx = merge_ctx(&self.ctx, &o.ctx)?;
        Ok(Self { p: &self.p - &o.p, q: &self.q - &o.q, ctx })
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self, AlgebraError> {
        let ctx = merge_ctx(&self.ctx, &o.ctx)?;
        if self.q.is_zero() && o.q.is_zero() {
            return Ok(Self { p: &self.p * &o.p, q: RationalFunction::zero(), ctx });
        }
        if self.q.is_zero() {
            return Ok(Self { p: &self.p * &o.p, q: &self.p * &o.q, ctx });
        }
        if o.q.is_zero() {
            return Ok(Self { p: &self.p * &o.p, q: &self.q * &o.p, ctx });
        }
        let b = ctx.as_ref().expect("beta part implies a context").radicand();
        let p = &(&self.p * &o.p) + &(&(&self.q * &o.q) * b);
        let q = &(&self.p * &o.q) + &(&self.q * &o.p);
        Ok(Self { p, q, ctx })
    }

    pub fn try_div(&self, o: &Self) -> Result<Self, AlgebraError> {
        self.try_mul(&o.try_inv()?)
    }

    /// `1/(p + qβ) = (p − qβ)/(p² − q²B)`.
    pub fn try_inv(&self) -> Result<Self, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        if self.q.is_zero() {
            let p = self.p.inv().ok_or(AlgebraError::DivisionByZero)?;
            return Ok(Self { p, q: RationalFunction::zero(), ctx: self.ctx.clone() });
        }
        let b = self.ctx.as_ref().expect("beta part implies a context").radicand();
        let norm = &(&self.p * &self.p) - &(&(&self.q * &self.q) * b);
        let inv = norm.inv().ok_or(AlgebraError::DivisionByZero)?;
        Ok(Self { p: &self.p * &inv, q: -&(&self.q * &inv), ctx: self.ctx.clone() })
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        Self { p: self.p.scale(c), q: self.q.scale(c), ctx: self.ctx.clone() }
    }

    /// Coefficient-wise conjugation with `conj(β) = 1/β = β/B`.
    pub fn conj(&self) -> Self {
        if self.q.is_zero() {
            return Self { p: self.p.conj(), q: RationalFunction::zero(), ctx: self.ctx.clone() };
        }
        let b_inv = self.ctx.as_ref().expect("beta part implies a context").radicand().inv().expect("nonzero radicand");
        Self { p: self.p.conj(), q: &self.q.conj() * &b_inv, ctx: self.ctx.clone() }
    }

    /// `∂(p + qβ) = ∂p + (∂q + q·∂B/(2B))·β`.
    pub fn partial(&self, v: Var) -> Self {
        if self.q.is_zero() {
            return Self { p: self.p.partial(v), q: RationalFunction::zero(), ctx: self.ctx.clone() };
        }
        let ctx = self.ctx.as_ref().expect("beta part implies a context");
        let q = &self.q.partial(v) + &(&self.q * ctx.half_log_derivative(v));
        Self { p: self.p.partial(v), q, ctx: self.ctx.clone() }
    }

    /// Exact values `(p(pt), q(pt), B(pt))`; `None` at a pole.
    pub fn eval_parts(&self, pt: &[GaussianRational; 4]) -> Option<(GaussianRational, GaussianRational, GaussianRational)> {
        let p = self.p.eval(pt)?;
        let q = self.q.eval(pt)?;
        let b = match &self.ctx {
            Some(c) => c.radicand().eval(pt)?,
            None => GaussianRational::from_integer(1),
        };
        Some((p, q, b))
    }

    /// Numeric value with the formal `β` read as the principal square root.
    pub fn eval_f64(&self, pt: &[(f64, f64); 4]) -> (f64, f64) {
        let (pr, pi) = self.p.eval_f64(pt);
        if self.q.is_zero() {
            return (pr, pi);
        }
        let (qr, qi) = self.q.eval_f64(pt);
        let (br, bi) = self.ctx.as_ref().expect("beta part implies a context").radicand().eval_f64(pt);
        let s = num_complex::Complex64::new(br, bi).sqrt();
        (pr + qr * s.re - qi * s.im, pi + qr * s.im + qi * s.re)
    }

    /// Total number of stored terms.
    pub fn size(&self) -> usize {
        self.p.size() + self.q.size()
    }
}

impl PartialEq for ExtScalar {
    fn eq(&self, o: &Self) -> bool {
        self.p == o.p && self.q == o.q
    }
}

macro_rules! op_impl {
    ($tr:ident, $m:ident, $try:ident) => {
        impl $tr for &ExtScalar {
            type Output = ExtScalar;
            fn $m(self, o: &ExtScalar) -> ExtScalar {
                self.$try(o).expect("operands from different square-root contexts")
            }
        }
        impl $tr for ExtScalar {
            type Output = ExtScalar;
            fn $m(self, o: ExtScalar) -> ExtScalar {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a ExtScalar> for ExtScalar {
            type Output = ExtScalar;
            fn $m(self, o: &ExtScalar) -> ExtScalar {
                (&self).$m(o)
            }
        }
    };
}
op_impl!(Add, add, try_add);
op_impl!(Sub, sub, try_sub);
op_impl!(Mul, mul, try_mul);

impl Neg for &ExtScalar {
    type Output = ExtScalar;
    fn neg(self) -> ExtScalar {
        ExtScalar { p: -&self.p, q: -&self.q, ctx: self.ctx.clone() }
    }
}

impl Neg for ExtScalar {
    type Output = ExtScalar;
    fn neg(self) -> ExtScalar {
        -&self
    }
}

/// `p` alone when `q = 0`, otherwise `p + (q)*beta`.
impl fmt::Display for ExtScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q.is_zero() {
            write!(f, "{}", self.p)
        } else if self.p.is_zero() {
            write!(f, "({})*beta", self.q)
        } else {
            write!(f, "{} + ({})*beta", self.p, self.q)
        }
    }
}

impl fmt::Debug for ExtScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::parse_polynomial;
    use crate::algebra::sqrt::Branch;

    fn poly(s: &str) -> ExtScalar {
        ExtScalar::from_polynomial(parse_polynomial(s).unwrap())
    }

    fn ctx_for(s: &str) -> Arc<SqrtContext> {
        Arc::new(SqrtContext::new(RationalFunction::from_polynomial(parse_polynomial(s).unwrap()), Branch::Plus).unwrap())
    }

    #[test]
    fn beta_relations() {
        let c = ctx_for("x");
        let b = ExtScalar::sqrt_of_radicand(&c);
        assert_eq!(&b * &b, poly("x"));
        assert_eq!(
            b.try_inv().unwrap(),
            ExtScalar::new(
                RationalFunction::zero(),
                RationalFunction::new(parse_polynomial("1").unwrap(), parse_polynomial("x").unwrap()).unwrap(),
                Some(c.clone())
            )
        );
        assert!((&b.conj() * &b).is_one());
        assert!((&b - &b).is_zero());
    }

    #[test]
    fn norm_product() {
        let c = ctx_for("x + y");
        let b = ExtScalar::sqrt_of_radicand(&c);
        let p = poly("x^2 - i");
        let q = poly("y");
        let plus = &p + &(&q * &b);
        let minus = &p - &(&q * &b);
        assert_eq!(&plus * &minus, &(&p * &p) - &(&(&q * &q) * &poly("x + y")));
    }

    #[test]
    fn derivative_of_beta() {
        let c = ctx_for("x");
        let b = ExtScalar::sqrt_of_radicand(&c);
        let half_over_x = RationalFunction::new(parse_polynomial("1/2").unwrap(), parse_polynomial("x").unwrap()).unwrap();
        assert_eq!(b.partial(Var::X), ExtScalar::new(RationalFunction::zero(), half_over_x, Some(c)));
    }

    #[test]
    fn perfect_square_folds_beta() {
        let c = Arc::new(SqrtContext::new(RationalFunction::one(), Branch::Plus).unwrap());
        let b = ExtScalar::sqrt_of_radicand(&c);
        assert!((&b - &ExtScalar::one()).is_zero());
        assert!(b.q().is_zero());
    }

    #[test]
    fn mismatched_contexts_are_rejected() {
        let b1 = ExtScalar::sqrt_of_radicand(&ctx_for("x"));
        let b2 = ExtScalar::sqrt_of_radicand(&ctx_for("x"));
        assert_eq!(b1.try_add(&b2).unwrap_err(), AlgebraError::MismatchedContext);
        assert_eq!(ExtScalar::zero().try_inv().unwrap_err(), AlgebraError::DivisionByZero);
    }
}
