use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::GaussianRational;
use crate::scalar::Scalar;

use super::scalar::BundleScalar;

/// Number of basis 1-forms on the bundle: the fiber differential plus four
/// base forms.
pub const DIM: usize = 5;

/// Index set of a wedge monomial as a bitmask over the basis.
pub type Mask = u8;

/// Bitmask of the sorted index list.
pub fn mask_of(indices: &[usize]) -> Mask {
    indices.iter().fold(0, |m, &i| m | (1 << i))
}

/// Sorted indices of a bitmask.
pub fn indices_of(mask: Mask) -> Vec<usize> {
    (0..DIM).filter(|i| mask & (1 << i) != 0).collect()
}

/// Sign of `θ^I ∧ θ^J` relative to `θ^{I∪J}`, or `None` when they share an index.
pub fn wedge_sign(i: Mask, j: Mask) -> Option<i32> {
    if i & j != 0 {
        return None;
    }
    let mut swaps = 0;
    for b in indices_of(j) {
        swaps += (i >> (b + 1)).count_ones();
    }
    Some(if swaps % 2 == 0 { 1 } else { -1 })
}

/// A homogeneous differential form `Σ f_I θ^I` over an ordered basis of five
/// 1-forms, with Laurent coefficients in `a`.
///
/// Only increasing index sets are stored, so antisymmetry is structural.
#[derive(Clone, Debug, PartialEq)]
pub struct BundleForm<S> {
    degree: usize,
    terms: BTreeMap<Mask, BundleScalar<S>>,
}

impl<S: Scalar> BundleForm<S> {
    pub fn zero(degree: usize) -> Self {
        Self { degree, terms: BTreeMap::new() }
    }

    pub fn scalar(f: BundleScalar<S>) -> Self {
        let mut w = Self::zero(0);
        w.add_term(0, f);
        w
    }

    /// The basis 1-form `θⁱ`.
    pub fn basis(i: usize) -> Self {
        Self::monomial(&[i], BundleScalar::one())
    }

    /// `f · θ^{i₁} ∧ … ∧ θ^{i_p}` for increasing indices.
    pub fn monomial(indices: &[usize], f: BundleScalar<S>) -> Self {
        debug_assert!(indices.windows(2).all(|w| w[0] < w[1]));
        let mut w = Self::zero(indices.len());
        w.add_term(mask_of(indices), f);
        w
    }

    /// The 1-form `Σ cᵢ θⁱ`.
    pub fn one_form(coeffs: &[BundleScalar<S>]) -> Self {
        let mut w = Self::zero(1);
        for (i, c) in coeffs.iter().enumerate() {
            w.add_term(1 << i, c.clone());
        }
        w
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Mask, &BundleScalar<S>)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    /// Coefficient at the increasing index list.
    pub fn coeff(&self, indices: &[usize]) -> BundleScalar<S> {
        self.coeff_mask(mask_of(indices))
    }

    pub fn coeff_mask(&self, mask: Mask) -> BundleScalar<S> {
        self.terms.get(&mask).cloned().unwrap_or_else(BundleScalar::zero)
    }

    /// Adds `f θ^I`; zero results are dropped.
    pub fn add_term(&mut self, mask: Mask, f: BundleScalar<S>) {
        debug_assert_eq!(mask.count_ones() as usize, self.degree);
        if f.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&mask) {
            Some(old) => &old + &f,
            None => f,
        };
        if !sum.is_zero() {
            self.terms.insert(mask, sum);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        assert_eq!(self.degree, o.degree, "adding forms of different degree");
        let mut w = self.clone();
        for (m, c) in &o.terms {
            w.add_term(*m, c.clone());
        }
        w
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| -c)
    }

    pub fn map_coeffs(&self, f: impl Fn(&BundleScalar<S>) -> BundleScalar<S>) -> Self {
        let mut w = Self::zero(self.degree);
        for (m, c) in &self.terms {
            w.add_term(*m, f(c));
        }
        w
    }

    pub fn scale(&self, f: &BundleScalar<S>) -> Self {
        if f.is_zero() {
            return Self::zero(self.degree);
        }
        self.map_coeffs(|c| c * f)
    }

    pub fn scale_base(&self, s: &S) -> Self {
        self.map_coeffs(|c| c.scale_base(s))
    }

    pub fn scale_const(&self, c: &GaussianRational) -> Self {
        self.map_coeffs(|x| x.scale(c))
    }

    /// Graded-commutative product; components beyond the top degree vanish.
    pub fn wedge(&self, o: &Self) -> Self {
        let mut w = Self::zero(self.degree + o.degree);
        for (i, f) in &self.terms {
            for (j, g) in &o.terms {
                if let Some(sign) = wedge_sign(*i, *j) {
                    let c = f * g;
                    w.add_term(i | j, if sign < 0 { -c } else { c });
                }
            }
        }
        w
    }

    /// Interior product with the vector whose pairing with `θⁱ` is `v[i]`.
    pub fn interior(&self, v: &[BundleScalar<S>; DIM]) -> Self {
        assert!(self.degree > 0, "interior product of a function");
        let mut w = Self::zero(self.degree - 1);
        for (m, f) in &self.terms {
            for (pos, i) in indices_of(*m).into_iter().enumerate() {
                if v[i].is_zero() {
                    continue;
                }
                let c = f * &v[i];
                w.add_term(m & !(1 << i), if pos % 2 == 1 { -c } else { c });
            }
        }
        w
    }

    /// Replaces each basis 1-form `θⁱ` by `images[i]`.
    pub fn substitute(&self, images: &[BundleForm<S>; DIM]) -> Self {
        let mut w = Self::zero(self.degree);
        for (m, f) in &self.terms {
            let mut prod = BundleForm::scalar(f.clone());
            for i in indices_of(*m) {
                prod = prod.wedge(&images[i]);
                if prod.is_zero() {
                    break;
                }
            }
            w = w.add(&prod);
        }
        w
    }

    /// The set of `a`-exponents occurring across all coefficients.
    pub fn weights(&self) -> Vec<i32> {
        let mut ws: Vec<i32> = self.terms.values().flat_map(|c| c.weights()).collect();
        ws.sort_unstable();
        ws.dedup();
        ws
    }
}

impl<S: Scalar> fmt::Display for BundleForm<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            let idx: Vec<String> = indices_of(*m).iter().map(|i| format!("e{i}")).collect();
            if idx.is_empty() {
                write!(f, "[{c}]")?;
            } else {
                write!(f, "[{c}]*{}", idx.join("^"))?;
            }
        }
        Ok(())
    }
}
