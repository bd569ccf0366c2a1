//! Exact square roots and the context adjoining `β = B^{1/2}`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::gaussian::GaussianRational;
use super::monomial::{Monomial, Var};
use super::polynomial::Polynomial;
use super::rational::RationalFunction;

fn int_sqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

fn rational_sqrt_exact(q: &BigRational) -> Option<BigRational> {
    Some(BigRational::new(int_sqrt_exact(q.numer())?, int_sqrt_exact(q.denom())?))
}

/// Square root in `ℚ(i)` if it exists; the returned root has positive real
/// part, or positive imaginary part when the real part is zero.
pub fn gaussian_sqrt(z: &GaussianRational) -> Option<GaussianRational> {
    if z.is_zero() {
        return Some(GaussianRational::zero());
    }
    let modulus = rational_sqrt_exact(&z.norm_sqr())?;
    let two = BigRational::from_integer(2.into());
    let re = rational_sqrt_exact(&((&modulus + z.re()) / &two))?;
    let mut im = rational_sqrt_exact(&((&modulus - z.re()) / &two))?;
    if z.im().is_negative() {
        im = -im;
    }
    let mut r = GaussianRational::new(re, im);
    if !has_positive_orientation(&r) {
        r = -r;
    }
    debug_assert_eq!(&r * &r, *z);
    Some(r)
}

/// True when the real part is positive, or it is zero and the imaginary part is positive.
pub fn has_positive_orientation(c: &GaussianRational) -> bool {
    c.re().is_positive() || (c.re().is_zero() && c.im().is_positive())
}

/// Exact polynomial square root by leading-term matching, if one exists.
///
/// The root's leading coefficient has positive orientation.
pub fn polynomial_sqrt(p: &Polynomial) -> Option<Polynomial> {
    if p.is_zero() {
        return Some(Polynomial::zero());
    }
    let (lm, lc) = p.leading_term()?.clone();
    if lm.0.iter().any(|e| e % 2 == 1) {
        return None;
    }
    for v in Var::ALL {
        if p.degree_in(v) % 2 == 1 {
            return None;
        }
    }
    let root_lm = Monomial(lm.0.map(|e| e / 2));
    let root_lc = gaussian_sqrt(&lc)?;
    let two_lc_inv = (&root_lc * &GaussianRational::from_integer(2)).inv()?;
    let mut root = Polynomial::monomial(root_lm, root_lc);
    let mut rem = p - &(&root * &root);
    let max_steps = p.len() * p.len() + 4;
    for _ in 0..max_steps {
        let Some((rm, rc)) = rem.leading_term().cloned() else {
            return Some(root);
        };
        let tm = rm.div(&root_lm)?;
        if tm >= root_lm {
            return None;
        }
        let t = Polynomial::monomial(tm, &rc * &two_lc_inv);
        // (R + t)² = R² + 2Rt + t²
        let two_r_plus_t = &root.scale(&GaussianRational::from_integer(2)) + &t;
        rem = &rem - &(&two_r_plus_t * &t);
        root = &root + &t;
    }
    None
}

/// Exact square root of a rational function, oriented through its numerator.
pub fn rational_sqrt(f: &RationalFunction) -> Option<RationalFunction> {
    let n = polynomial_sqrt(f.num())?;
    let d = polynomial_sqrt(f.den())?.monic();
    RationalFunction::new(n, d)
}

/// Sign selecting one of the two branches of `B^{1/2}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Branch {
    #[default]
    Plus,
    Minus,
}

impl Branch {
    pub fn sign(self) -> i64 {
        match self {
            Branch::Plus => 1,
            Branch::Minus => -1,
        }
    }

    pub fn from_sign(s: i64) -> Option<Branch> {
        match s {
            1 => Some(Branch::Plus),
            -1 => Some(Branch::Minus),
            _ => None,
        }
    }
}

/// The quadratic extension by a formal `β` with `β² = radicand`.
///
/// When the radicand is a perfect square, `β` is identified with
/// `branch · root` and extension elements never carry a `β` part. Otherwise
/// the formal `β` evaluates to the principal square root and the branch
/// sign is applied to the generator handed out by
/// [`ExtScalar::sqrt_of_radicand`](super::ExtScalar::sqrt_of_radicand).
#[derive(Debug)]
pub struct SqrtContext {
    radicand: RationalFunction,
    root: Option<RationalFunction>,
    branch: Branch,
    half_log_derivative: [RationalFunction; 4],
}

impl SqrtContext {
    /// `None` when the radicand is zero.
    pub fn new(radicand: RationalFunction, branch: Branch) -> Option<Self> {
        if radicand.is_zero() {
            return None;
        }
        let root = rational_sqrt(&radicand).map(|r| if branch == Branch::Minus { -r } else { r });
        let inv_two_b = radicand.scale(&GaussianRational::from_integer(2)).inv()?;
        let half_log_derivative = Var::ALL.map(|v| &radicand.partial(v) * &inv_two_b);
        Some(Self { radicand, root, branch, half_log_derivative })
    }

    pub fn radicand(&self) -> &RationalFunction {
        &self.radicand
    }

    pub fn is_perfect_square(&self) -> bool {
        self.root.is_some()
    }

    /// The identified root (branch sign applied) in the perfect-square case.
    pub fn root(&self) -> Option<&RationalFunction> {
        self.root.as_ref()
    }

    pub fn branch(&self) -> Branch {
        self.branch
    }

    /// `∂_v B / (2B)`, the derivative coefficient of the formal `β`.
    pub fn half_log_derivative(&self, v: Var) -> &RationalFunction {
        &self.half_log_derivative[v.index()]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::parse_polynomial;

    fn p(s: &str) -> Polynomial {
        parse_polynomial(s).unwrap()
    }

    #[test]
    fn gaussian_roots() {
        let r = gaussian_sqrt(&GaussianRational::from_integer(-1)).unwrap();
        assert_eq!(r, GaussianRational::i());
        let z = parse_polynomial("(3+4*i)").unwrap().as_constant().unwrap();
        assert_eq!(gaussian_sqrt(&z).unwrap().to_string(), "(2+i)");
        assert!(gaussian_sqrt(&GaussianRational::from_integer(2)).is_none());
        assert_eq!(gaussian_sqrt(&GaussianRational::from_ratio(9, 4)).unwrap(), GaussianRational::from_ratio(3, 2));
    }

    #[test]
    fn polynomial_roots() {
        let r = p("x^2 - 3*i*x*y + u1 - 1/2");
        assert_eq!(polynomial_sqrt(&(&r * &r)), Some(r.clone()));
        assert_eq!(polynomial_sqrt(&(&(-&r) * &(-&r))), Some(r));
        assert!(polynomial_sqrt(&p("x^2 + 1")).is_none());
        assert!(polynomial_sqrt(&p("x^2 + y")).is_none());
        assert!(polynomial_sqrt(&p("x")).is_none());
    }

    #[test]
    fn context_identifies_perfect_squares() {
        let one = SqrtContext::new(RationalFunction::one(), Branch::Plus).unwrap();
        assert_eq!(one.root(), Some(&RationalFunction::one()));
        let minus = SqrtContext::new(RationalFunction::one(), Branch::Minus).unwrap();
        assert_eq!(minus.root(), Some(&-RationalFunction::one()));
        let x = SqrtContext::new(RationalFunction::from_polynomial(p("x")), Branch::Plus).unwrap();
        assert!(!x.is_perfect_square());
        assert!(SqrtContext::new(RationalFunction::zero(), Branch::Plus).is_none());
    }
}
