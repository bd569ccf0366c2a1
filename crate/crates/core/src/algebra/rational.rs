//! Reduced rational functions over `ℚ(i)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::gaussian::GaussianRational;
use super::gcd::gcd_cofactors;
use super::monomial::Var;
use super::polynomial::Polynomial;

/// `num / den` with `gcd(num, den) = 1` and `den` monic in grevlex.
///
/// The representation is canonical, so `==` is exact equality of functions.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl Default for RationalFunction {
    fn default() -> Self {
        Self::zero()
    }
}

impl RationalFunction {
    pub fn zero() -> Self {
        Self { num: Polynomial::zero(), den: Polynomial::one() }
    }

    pub fn one() -> Self {
        Self::from_polynomial(Polynomial::one())
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::from_polynomial(Polynomial::constant(c))
    }

    pub fn from_polynomial(p: Polynomial) -> Self {
        Self { num: p, den: Polynomial::one() }
    }

    /// Reduces `num / den`; `None` when `den = 0`.
    pub fn new(num: Polynomial, den: Polynomial) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        if num.is_zero() {
            return Some(Self::zero());
        }
        let (_, n, d) = gcd_cofactors(&num, &den);
        Some(Self::normalized(n, d))
    }

    /// Makes `den` monic; inputs must already be coprime.
    fn normalized(num: Polynomial, den: Polynomial) -> Self {
        let lc = den.leading_coeff();
        if lc.is_one_value() {
            return Self { num, den };
        }
        let inv = lc.inv().expect("nonzero denominator");
        Self { num: num.scale(&inv), den: den.scale(&inv) }
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_constant(&self) -> Option<GaussianRational> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if num_traits::Zero::is_zero(c) {
            return Self::zero();
        }
        Self { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn conj(&self) -> Self {
        // Conjugating a monic denominator keeps it monic.
        Self { num: self.num.conj(), den: self.den.conj() }
    }

    pub fn partial(&self, v: Var) -> Self {
        let dn = self.num.partial(v);
        if self.den.is_one() {
            return Self::from_polynomial(dn);
        }
        let dd = self.den.partial(v);
        if dd.is_zero() {
            return Self { num: dn, den: self.den.clone() }.reduce_against_den();
        }
        // d = g·e with g = gcd(d, d'), so (n'd − nd')/d² = (n'e − n·(d'/g))/(g·e²).
        let (g, e, dg) = gcd_cofactors(&self.den, &dd);
        let num = &(&dn * &e) - &(&self.num * &dg);
        let den = &(&g * &e) * &e;
        Self::new(num, den).expect("nonzero denominator")
    }

    fn reduce_against_den(self) -> Self {
        Self::new(self.num, self.den).expect("nonzero denominator")
    }

    pub fn pow(&self, e: u32) -> Self {
        Self { num: self.num.pow(e), den: self.den.pow(e) }
    }

    pub fn eval(&self, pt: &[GaussianRational; 4]) -> Option<GaussianRational> {
        let d = self.den.eval(pt);
        d.inv().map(|di| &self.num.eval(pt) * &di)
    }

    pub fn eval_f64(&self, pt: &[(f64, f64); 4]) -> (f64, f64) {
        let (a, b) = self.num.eval_f64(pt);
        let (c, d) = self.den.eval_f64(pt);
        let n = c * c + d * d;
        ((a * c + b * d) / n, (b * c - a * d) / n)
    }

    /// Total number of stored terms, a size measure for pivot selection.
    pub fn size(&self) -> usize {
        self.num.len() + self.den.len()
    }

    pub fn has_real_coefficients(&self) -> bool {
        self.num.has_real_coefficients() && self.den.has_real_coefficients()
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, o: &RationalFunction) -> RationalFunction {
        add_sub(self, o, false)
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, o: &RationalFunction) -> RationalFunction {
        add_sub(self, o, true)
    }
}

fn add_sub(a: &RationalFunction, b: &RationalFunction, negate: bool) -> RationalFunction {
    let combine = |x: &Polynomial, y: &Polynomial| if negate { x - y } else { x + y };
    if b.is_zero() {
        return a.clone();
    }
    if a.is_zero() {
        return if negate { -b } else { b.clone() };
    }
    if a.den == b.den {
        let num = combine(&a.num, &b.num);
        if a.den.is_one() {
            return RationalFunction::from_polynomial(num);
        }
        return RationalFunction::new(num, a.den.clone()).expect("nonzero denominator");
    }
    if a.den.is_one() {
        let num = combine(&(&a.num * &b.den), &b.num);
        return RationalFunction { num, den: b.den.clone() };
    }
    if b.den.is_one() {
        let num = combine(&a.num, &(&b.num * &a.den));
        return RationalFunction { num, den: a.den.clone() };
    }
    // Henrici: with g = gcd(da, db), only g can share factors with the numerator.
    let (g, da, db) = gcd_cofactors(&a.den, &b.den);
    let num = combine(&(&a.num * &db), &(&b.num * &da));
    if num.is_zero() {
        return RationalFunction::zero();
    }
    if g.is_one() {
        return RationalFunction::normalized(num, &a.den * &db);
    }
    let (_, n2, g2) = gcd_cofactors(&num, &g);
    RationalFunction::normalized(n2, &(&da * &db) * &g2)
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, o: &RationalFunction) -> RationalFunction {
        if self.is_zero() || o.is_zero() {
            return RationalFunction::zero();
        }
        if let Some(c) = self.as_constant() {
            return o.scale(&c);
        }
        if let Some(c) = o.as_constant() {
            return self.scale(&c);
        }
        if self.den.is_one() && o.den.is_one() {
            return RationalFunction::from_polynomial(&self.num * &o.num);
        }
        // Henrici: cancel across the diagonals only.
        let (_, n1, d2) = gcd_cofactors(&self.num, &o.den);
        let (_, n2, d1) = gcd_cofactors(&o.num, &self.den);
        RationalFunction::normalized(&n1 * &n2, &d1 * &d2)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, o: RationalFunction) -> RationalFunction {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl From<Polynomial> for RationalFunction {
    fn from(p: Polynomial) -> Self {
        Self::from_polynomial(p)
    }
}

/// `num` when the denominator is 1, otherwise `(num)/(den)`.
impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::parse_polynomial;

    fn rf(n: &str, d: &str) -> RationalFunction {
        RationalFunction::new(parse_polynomial(n).unwrap(), parse_polynomial(d).unwrap()).unwrap()
    }

    #[test]
    fn reduction_is_canonical() {
        let a = rf("x^2 - y^2", "2*x + 2*y");
        assert_eq!(a, rf("1/2*x - 1/2*y", "1"));
        let b = rf("x", "3*x*y + 3");
        assert_eq!(b.den().to_string(), "x*y + 1");
        assert_eq!(b.num().to_string(), "1/3*x");
    }

    #[test]
    fn quotient_rule() {
        let a = rf("1", "x");
        assert_eq!(a.partial(Var::X), rf("-1", "x^2"));
        let b = rf("x + y", "(x - y)^2");
        let by_hand = &(&RationalFunction::from_polynomial(parse_polynomial("1").unwrap()) * &rf("1", "(x - y)^2"))
            - &(&rf("2*(x + y)", "1") * &rf("1", "(x - y)^3"));
        assert_eq!(b.partial(Var::X), by_hand);
    }

    #[test]
    fn sums_cancel() {
        let a = rf("1", "x + 1");
        let b = rf("1", "x - 1");
        let s = &a + &b;
        assert_eq!(s, rf("2*x", "x^2 - 1"));
        assert!((&s - &s).is_zero());
        assert_eq!(&(&a * &b) * &rf("x^2 - 1", "1"), RationalFunction::one());
    }
}
