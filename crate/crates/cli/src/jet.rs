//! Truncated Taylor expansions in `(x, y, u₁, u₂)` over complex doubles.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use engel_core::algebra::{GaussianRational, Var};
use engel_core::{AlgebraError, Scalar};
use num_complex::Complex64;

/// Number of real coordinates.
const VARS: usize = 4;

/// Monomial layout and product tables for jets up to a fixed total order.
#[derive(Debug)]
pub struct JetSpace {
    max_order: u32,
    floor: f64,
    /// Exponents, sorted by total degree.
    monomials: Vec<[u32; VARS]>,
    degree: Vec<u32>,
    /// `(i, j, k)` with `mᵢ·mⱼ = m_k`, sorted by `deg m_k`.
    products: Vec<(u32, u32, u32)>,
    /// `products_upto[d]`: number of product entries with `deg m_k ≤ d`.
    products_upto: Vec<usize>,
    /// Per variable: `(source, target, exponent)` with `∂m_source = exponent·m_target`.
    partials: [Vec<(u32, u32, f64)>; VARS],
}

impl JetSpace {
    /// Jets of total order `max_order`; `floor` is the smallest magnitude a
    /// value may have and still be inverted.
    pub fn new(max_order: u32, floor: f64) -> Arc<Self> {
        let mut monomials = Vec::new();
        for d in 0..=max_order {
            for a in (0..=d).rev() {
                for b in (0..=d - a).rev() {
                    for c in (0..=d - a - b).rev() {
                        monomials.push([a, b, c, d - a - b - c]);
                    }
                }
            }
        }
        let index: std::collections::HashMap<[u32; VARS], u32> = monomials.iter().enumerate().map(|(i, m)| (*m, i as u32)).collect();
        let degree: Vec<u32> = monomials.iter().map(|m| m.iter().sum()).collect();
        let mut products = Vec::new();
        for (i, mi) in monomials.iter().enumerate() {
            for (j, mj) in monomials.iter().enumerate() {
                if degree[i] + degree[j] > max_order {
                    continue;
                }
                let mk: [u32; VARS] = std::array::from_fn(|v| mi[v] + mj[v]);
                products.push((i as u32, j as u32, index[&mk]));
            }
        }
        products.sort_by_key(|&(_, _, k)| degree[k as usize]);
        let products_upto = (0..=max_order).map(|d| products.partition_point(|&(_, _, k)| degree[k as usize] <= d)).collect();
        let partials = std::array::from_fn(|v| {
            monomials
                .iter()
                .enumerate()
                .filter(|(_, m)| m[v] > 0)
                .map(|(i, m)| {
                    let mut t = *m;
                    t[v] -= 1;
                    (i as u32, index[&t], f64::from(m[v]))
                })
                .collect()
        });
        Arc::new(Self { max_order, floor, monomials, degree, products, products_upto, partials })
    }

    pub fn max_order(&self) -> u32 {
        self.max_order
    }

    pub fn floor(&self) -> f64 {
        self.floor
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    /// The coordinate `v` expanded at `value`.
    pub fn variable(self: &Arc<Self>, v: Var, value: f64) -> Jet {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); self.len()];
        coeffs[0] = Complex64::new(value, 0.0);
        if self.max_order > 0 {
            let target = std::array::from_fn(|k| u32::from(k == v.index()));
            let i = self.monomials.iter().position(|m| *m == target).expect("degree-one monomial");
            coeffs[i] = Complex64::new(1.0, 0.0);
        }
        Jet::Series(Series { space: self.clone(), order: self.max_order as i32, coeffs })
    }

    fn constant_series(self: &Arc<Self>, c: Complex64, order: i32) -> Series {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); self.len()];
        coeffs[0] = c;
        Series { space: self.clone(), order, coeffs }
    }
}

/// Coefficients valid through total degree `order`; a negative order
/// carries no information.
#[derive(Clone, Debug)]
pub struct Series {
    space: Arc<JetSpace>,
    order: i32,
    coeffs: Vec<Complex64>,
}

impl Series {
    fn zip(&self, o: &Series, f: impl Fn(Complex64, Complex64) -> Complex64) -> Series {
        let order = self.order.min(o.order);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&o.coeffs)
            .zip(&self.space.degree)
            .map(|((a, b), &d)| if d as i32 <= order { f(*a, *b) } else { Complex64::new(0.0, 0.0) })
            .collect();
        Series { space: self.space.clone(), order, coeffs }
    }

    fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Series {
        Series { space: self.space.clone(), order: self.order, coeffs: self.coeffs.iter().map(|c| f(*c)).collect() }
    }

    fn mul(&self, o: &Series) -> Series {
        let order = self.order.min(o.order);
        let mut coeffs = vec![Complex64::new(0.0, 0.0); self.space.len()];
        if order >= 0 {
            let n = self.space.products_upto[order as usize];
            for &(i, j, k) in &self.space.products[..n] {
                let (a, b) = (self.coeffs[i as usize], o.coeffs[j as usize]);
                if a.re != 0.0 || a.im != 0.0 {
                    coeffs[k as usize] += a * b;
                }
            }
        }
        Series { space: self.space.clone(), order, coeffs }
    }

    fn partial(&self, v: usize) -> Series {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); self.space.len()];
        for &(s, t, e) in &self.space.partials[v] {
            coeffs[t as usize] = self.coeffs[s as usize] * e;
        }
        let order = self.order - 1;
        for (c, &d) in coeffs.iter_mut().zip(&self.space.degree) {
            if d as i32 > order {
                *c = Complex64::new(0.0, 0.0);
            }
        }
        Series { space: self.space.clone(), order, coeffs }
    }

    fn value(&self) -> Option<Complex64> {
        (self.order >= 0).then_some(self.coeffs[0])
    }

    /// `Σₙ cₙ uⁿ` for `u = self − self(0)`, which has no constant term.
    fn compose(&self, series: impl Fn(usize) -> Complex64) -> Series {
        let mut u = self.clone();
        u.coeffs[0] = Complex64::new(0.0, 0.0);
        let mut acc = self.space.constant_series(series(0), self.order);
        let mut power = self.space.constant_series(Complex64::new(1.0, 0.0), self.order);
        for n in 1..=self.order.max(0) as usize {
            power = power.mul(&u);
            acc = acc.zip(&power.map(|c| c * series(n)), |a, b| a + b);
        }
        acc
    }
}

/// A constant, or a truncated series at the evaluation point.
#[derive(Clone, Debug)]
pub enum Jet {
    Constant(Complex64),
    Series(Series),
}

pub(crate) fn complex(c: &GaussianRational) -> Complex64 {
    let (re, im) = c.to_f64_pair();
    Complex64::new(re, im)
}

impl Jet {
    /// Value at the evaluation point, `None` when truncation lost it.
    pub fn value(&self) -> Option<Complex64> {
        match self {
            Jet::Constant(c) => Some(*c),
            Jet::Series(s) => s.value(),
        }
    }

    /// Degree through which the coefficients are valid; `None` for constants.
    pub fn order(&self) -> Option<i32> {
        match self {
            Jet::Constant(_) => None,
            Jet::Series(s) => Some(s.order),
        }
    }

    /// Coefficient of `xᵃ yᵇ u₁ᶜ u₂ᵈ` in the expansion about the point.
    pub fn coefficient(&self, exponents: [u32; VARS]) -> Complex64 {
        match self {
            Jet::Constant(c) if exponents == [0; VARS] => *c,
            Jet::Constant(_) => Complex64::new(0.0, 0.0),
            Jet::Series(s) => s.space.monomials.iter().position(|m| *m == exponents).map_or(Complex64::new(0.0, 0.0), |i| s.coeffs[i]),
        }
    }

    /// The square root whose value is nearest `hint`.
    /// A truncated jet stays truncated.
    pub fn sqrt_near(&self, hint: Complex64) -> Result<Jet, AlgebraError> {
        let Some(c0) = self.value() else { return Ok(self.clone()) };
        if c0.norm() == 0.0 {
            return Err(AlgebraError::DivisionByZero);
        }
        let mut root = c0.sqrt();
        if (root - hint).norm() > (-root - hint).norm() {
            root = -root;
        }
        match self {
            Jet::Constant(_) => Ok(Jet::Constant(root)),
            Jet::Series(s) => {
                // √(c₀ + u) = r·Σ binom(½, n)(u/c₀)ⁿ
                let inv = 1.0 / c0;
                let scaled = s.map(|c| c * inv);
                let mut binom = Vec::with_capacity(s.order.max(0) as usize + 1);
                let mut b = 1.0;
                for n in 0..=s.order.max(0) {
                    binom.push(b);
                    b *= (0.5 - f64::from(n)) / f64::from(n + 1);
                }
                Ok(Jet::Series(scaled.compose(|n| root * binom[n])))
            }
        }
    }

    fn binary(self, o: Jet, constant: impl Fn(Complex64, Complex64) -> Complex64, series: impl Fn(&Series, &Series) -> Series) -> Jet {
        match (self, o) {
            (Jet::Constant(a), Jet::Constant(b)) => Jet::Constant(constant(a, b)),
            (Jet::Series(a), Jet::Series(b)) => Jet::Series(series(&a, &b)),
            (Jet::Constant(a), Jet::Series(b)) => Jet::Series(series(&b.space.constant_series(a, b.order), &b)),
            (Jet::Series(a), Jet::Constant(b)) => {
                let bs = a.space.constant_series(b, a.order);
                Jet::Series(series(&a, &bs))
            }
        }
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, o: Jet) -> Jet {
        self.binary(o, |a, b| a + b, |a, b| a.zip(b, |x, y| x + y))
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, o: Jet) -> Jet {
        self.binary(o, |a, b| a - b, |a, b| a.zip(b, |x, y| x - y))
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, o: Jet) -> Jet {
        match (self, o) {
            (Jet::Constant(a), Jet::Constant(b)) => Jet::Constant(a * b),
            (Jet::Constant(a), Jet::Series(s)) | (Jet::Series(s), Jet::Constant(a)) => Jet::Series(s.map(|c| c * a)),
            (Jet::Series(a), Jet::Series(b)) => Jet::Series(a.mul(&b)),
        }
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        match self {
            Jet::Constant(c) => Jet::Constant(-c),
            Jet::Series(s) => Jet::Series(s.map(|c| -c)),
        }
    }
}

impl fmt::Display for Jet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Jet::Constant(c) => write!(f, "{c}"),
            Jet::Series(s) => match s.value() {
                Some(v) => write!(f, "{v} + O(h^1) [order {}]", s.order),
                None => f.write_str("<truncated>"),
            },
        }
    }
}

impl Scalar for Jet {
    fn constant(c: GaussianRational) -> Self {
        Jet::Constant(complex(&c))
    }

    fn scale(&self, c: &GaussianRational) -> Self {
        self.clone() * Jet::Constant(complex(c))
    }

    /// Fails when the value is below the space's floor (exactly zero for
    /// constants); the inverse is then numerically meaningless. A truncated
    /// jet stays truncated.
    fn try_inv(&self) -> Result<Self, AlgebraError> {
        match self {
            Jet::Constant(c) if c.norm() == 0.0 => Err(AlgebraError::DivisionByZero),
            Jet::Constant(c) => Ok(Jet::Constant(1.0 / c)),
            Jet::Series(s) => {
                let Some(c0) = s.value() else { return Ok(self.clone()) };
                if c0.norm() < s.space.floor {
                    return Err(AlgebraError::DivisionByZero);
                }
                // 1/(c₀ + u) = Σ (−1)ⁿ uⁿ / c₀ⁿ⁺¹
                let inv = 1.0 / c0;
                Ok(Jet::Series(s.compose(|n| if n % 2 == 0 { inv.powi(n as i32 + 1) } else { -inv.powi(n as i32 + 1) })))
            }
        }
    }

    /// Structural test: every stored coefficient is exactly zero.
    fn is_zero(&self) -> bool {
        match self {
            Jet::Constant(c) => c.re == 0.0 && c.im == 0.0,
            Jet::Series(s) => s.order >= 0 && s.coeffs.iter().all(|c| c.re == 0.0 && c.im == 0.0),
        }
    }

    fn conj(&self) -> Self {
        match self {
            Jet::Constant(c) => Jet::Constant(c.conj()),
            Jet::Series(s) => Jet::Series(s.map(|c| c.conj())),
        }
    }

    fn partial(&self, v: Var) -> Self {
        match self {
            Jet::Constant(_) => Jet::Constant(Complex64::new(0.0, 0.0)),
            Jet::Series(s) => Jet::Series(s.partial(v.index())),
        }
    }

    /// Larger values make better pivots; truncated jets come last.
    fn pivot_cost(&self) -> Option<f64> {
        let Some(v) = self.value() else { return Some(f64::INFINITY) };
        let floor = match self {
            Jet::Constant(_) => 0.0,
            Jet::Series(s) => s.space.floor,
        };
        (v.norm() > floor).then(|| 1.0 / v.norm())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-10 * (1.0 + b.norm())
    }

    #[test]
    fn layout_counts_monomials() {
        let s = JetSpace::new(8, 1e-8);
        assert_eq!(s.len(), 495);
        assert_eq!(s.monomials[0], [0; 4]);
    }

    #[test]
    fn product_and_derivatives_of_a_polynomial() {
        let s = JetSpace::new(4, 1e-8);
        let x = s.variable(Var::X, 2.0);
        let y = s.variable(Var::Y, -1.0);
        // f = x²y at (2, −1): value −4, ∂x = 2xy = −4, ∂y = x² = 4, ∂x∂y = 2x = 4
        let f = x.clone() * x * y;
        assert!(close(f.value().unwrap(), Complex64::new(-4.0, 0.0)));
        assert!(close(f.partial(Var::X).value().unwrap(), Complex64::new(-4.0, 0.0)));
        assert!(close(f.partial(Var::Y).value().unwrap(), Complex64::new(4.0, 0.0)));
        assert!(close(f.partial(Var::X).partial(Var::Y).value().unwrap(), Complex64::new(4.0, 0.0)));
        assert_eq!(f.order(), Some(4));
        assert_eq!(f.partial(Var::X).order(), Some(3));
    }

    #[test]
    fn inverse_and_square_root_are_series_identities() {
        let s = JetSpace::new(6, 1e-8);
        let x = s.variable(Var::X, 0.5);
        let u = s.variable(Var::U1, -0.25);
        let f = Jet::Constant(Complex64::new(1.0, 2.0)) + x.clone() * u.clone() + x.clone() * x;
        let one = f.try_inv().unwrap() * f.clone();
        let root = f.sqrt_near(Complex64::new(1.0, 1.0)).unwrap();
        let back = root.clone() * root.clone();
        for e in [[0, 0, 0, 0], [1, 0, 0, 0], [2, 0, 1, 0], [3, 0, 3, 0]] {
            let expect = if e == [0; 4] { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) };
            assert!(close(one.coefficient(e), expect), "{e:?}");
            assert!(close(back.coefficient(e), f.coefficient(e)), "{e:?}");
        }
        let other = f.sqrt_near(-root.value().unwrap()).unwrap();
        assert!(close(other.value().unwrap(), -root.value().unwrap()));
    }

    #[test]
    fn truncation_is_tracked() {
        let s = JetSpace::new(1, 1e-8);
        let x = s.variable(Var::X, 1.0);
        let second = (x.clone() * x).partial(Var::X).partial(Var::X);
        assert_eq!(second.value(), None);
        assert!(!second.is_zero());
        assert_eq!(second.try_inv().unwrap().value(), None);
        assert_eq!((second.clone() * s.variable(Var::Y, 2.0)).value(), None);
    }

    #[test]
    fn small_values_are_not_inverted() {
        let s = JetSpace::new(2, 1e-8);
        let tiny = s.variable(Var::X, 1e-12);
        assert!(tiny.try_inv().is_err());
        assert!(tiny.pivot_cost().is_none());
    }
}
