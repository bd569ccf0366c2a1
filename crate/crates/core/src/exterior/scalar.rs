use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::algebra::GaussianRational;
use crate::calculus::Elim;
use crate::error::AlgebraError;
use crate::scalar::Scalar;

/// Laurent polynomial `Σ cₙ aⁿ` in the fiber coordinate `a`.
///
/// No zero coefficient is stored.
#[derive(Clone, Debug, PartialEq)]
pub struct BundleScalar<S> {
    terms: BTreeMap<i32, S>,
}

impl<S: Scalar> BundleScalar<S> {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::term(0, S::one())
    }

    /// `c · aⁿ`.
    pub fn term(n: i32, c: S) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(n, c);
        }
        Self { terms }
    }

    pub fn from_base(c: S) -> Self {
        Self::term(0, c)
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::term(0, S::constant(c))
    }

    /// `aⁿ`.
    pub fn a_pow(n: i32) -> Self {
        Self::term(n, S::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &S)> {
        self.terms.iter().map(|(n, c)| (*n, c))
    }

    /// The exponents present.
    pub fn weights(&self) -> Vec<i32> {
        self.terms.keys().copied().collect()
    }

    /// Coefficient of `aⁿ` (zero when absent).
    pub fn coeff(&self, n: i32) -> S {
        self.terms.get(&n).cloned().unwrap_or_else(S::zero)
    }

    /// `(n, c)` when the scalar is the single term `c · aⁿ`.
    pub fn single_term(&self) -> Option<(i32, &S)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(n, c)| (*n, c))
        } else {
            None
        }
    }

    /// The coefficient at weight `n`, provided no other weight occurs.
    pub fn at_weight(&self, n: i32) -> Option<S> {
        match self.terms.len() {
            0 => Some(S::zero()),
            1 => self.terms.get(&n).cloned(),
            _ => None,
        }
    }

    fn insert_add(terms: &mut BTreeMap<i32, S>, n: i32, c: S) {
        if c.is_zero() {
            return;
        }
        match terms.remove(&n) {
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    terms.insert(n, s);
                }
            }
            None => {
                terms.insert(n, c);
            }
        }
    }

    pub fn map(&self, f: impl Fn(&S) -> S) -> Self {
        let mut terms = BTreeMap::new();
        for (n, c) in &self.terms {
            let v = f(c);
            if !v.is_zero() {
                terms.insert(*n, v);
            }
        }
        Self { terms }
    }

    pub fn scale_base(&self, s: &S) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        self.map(|c| c.clone() * s.clone())
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        self.map(|x| x.scale(c))
    }

    /// Multiplies by `aᵏ`.
    pub fn shift(&self, k: i32) -> Self {
        Self { terms: self.terms.iter().map(|(n, c)| (n + k, c.clone())).collect() }
    }

    /// Conjugation; `a` is real.
    pub fn conj(&self) -> Self {
        self.map(S::conj)
    }

    /// `∂/∂a`.
    pub fn d_a(&self) -> Self {
        let mut terms = BTreeMap::new();
        for (n, c) in &self.terms {
            if *n != 0 {
                terms.insert(n - 1, c.scale(&GaussianRational::from_integer(i64::from(*n))));
            }
        }
        Self { terms }
    }

    /// Inverse of a single-term scalar.
    pub fn try_inv(&self) -> Result<Self, AlgebraError> {
        let (n, c) = self.single_term().ok_or(AlgebraError::DivisionByZero)?;
        Ok(Self::term(-n, c.try_inv()?))
    }
}

impl<S: Scalar> Add for &BundleScalar<S> {
    type Output = BundleScalar<S>;
    fn add(self, o: &BundleScalar<S>) -> BundleScalar<S> {
        let mut terms = self.terms.clone();
        for (n, c) in &o.terms {
            BundleScalar::insert_add(&mut terms, *n, c.clone());
        }
        BundleScalar { terms }
    }
}

impl<S: Scalar> Sub for &BundleScalar<S> {
    type Output = BundleScalar<S>;
    fn sub(self, o: &BundleScalar<S>) -> BundleScalar<S> {
        let mut terms = self.terms.clone();
        for (n, c) in &o.terms {
            BundleScalar::insert_add(&mut terms, *n, -c.clone());
        }
        BundleScalar { terms }
    }
}

impl<S: Scalar> Mul for &BundleScalar<S> {
    type Output = BundleScalar<S>;
    fn mul(self, o: &BundleScalar<S>) -> BundleScalar<S> {
        let mut terms = BTreeMap::new();
        for (n, c) in &self.terms {
            for (m, d) in &o.terms {
                BundleScalar::insert_add(&mut terms, n + m, c.clone() * d.clone());
            }
        }
        BundleScalar { terms }
    }
}

impl<S: Scalar> Neg for &BundleScalar<S> {
    type Output = BundleScalar<S>;
    fn neg(self) -> BundleScalar<S> {
        self.map(|c| -c.clone())
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl<S: Scalar> $tr for BundleScalar<S> {
            type Output = BundleScalar<S>;
            fn $m(self, o: BundleScalar<S>) -> BundleScalar<S> {
                $tr::$m(&self, &o)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl<S: Scalar> Neg for BundleScalar<S> {
    type Output = BundleScalar<S>;
    fn neg(self) -> BundleScalar<S> {
        -&self
    }
}

impl<S: Scalar> Elim for BundleScalar<S> {
    fn zero() -> Self {
        BundleScalar::zero()
    }
    fn one() -> Self {
        BundleScalar::one()
    }
    fn is_zero(&self) -> bool {
        BundleScalar::is_zero(self)
    }
    fn pivot_cost(&self) -> Option<f64> {
        self.single_term().and_then(|(_, c)| c.pivot_cost())
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn try_inv(&self) -> Result<Self, AlgebraError> {
        BundleScalar::try_inv(self)
    }
}

impl<S: Scalar> fmt::Display for BundleScalar<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (n, c)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            match n {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*a")?,
                _ => write!(f, "({c})*a^{n}")?,
            }
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
    fn laurent_arithmetic() {
        let f = &BundleScalar::term(3, s("x")) + &BundleScalar::term(-1, s("2"));
        let g = BundleScalar::term(1, s("y"));
        let fg = &f * &g;
        assert_eq!(fg.weights(), vec![0, 4]);
        assert_eq!(fg.coeff(4), s("x*y"));
        assert!((&f - &f).is_zero());
        assert_eq!(f.d_a().coeff(2), s("3*x"));
        assert_eq!(f.d_a().coeff(-2), s("-2"));
        let inv = g.try_inv().unwrap();
        assert!((&(&inv * &g) - &BundleScalar::one()).is_zero());
        assert!(f.try_inv().is_err());
    }
}
