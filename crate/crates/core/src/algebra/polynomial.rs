//! Sparse multivariate polynomials over the Gaussian rationals.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use super::gaussian::GaussianRational;
use super::monomial::{Monomial, Var};

pub type Term = (Monomial, GaussianRational);

/// Polynomial in `x, y, u1, u2` with Gaussian-rational coefficients.
///
/// Terms are sorted by strictly decreasing monomial (grevlex) and carry no
/// zero coefficients, so structural equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: Arc<Vec<Term>>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(GaussianRational::one())
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::monomial(Monomial::ONE, c)
    }

    pub fn var(v: Var) -> Self {
        Self::monomial(Monomial::var(v), GaussianRational::one())
    }

    pub fn monomial(m: Monomial, c: GaussianRational) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Self { terms: Arc::new(vec![(m, c)]) }
        }
    }

    /// Builds a polynomial from unsorted terms, combining duplicates.
    pub fn from_terms(terms: impl IntoIterator<Item = Term>) -> Self {
        let mut map: HashMap<Monomial, GaussianRational> = HashMap::new();
        for (m, c) in terms {
            *map.entry(m).or_default() += &c;
        }
        Self::from_map(map)
    }

    fn from_map(map: HashMap<Monomial, GaussianRational>) -> Self {
        let mut v: Vec<Term> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        v.sort_unstable_by_key(|t| std::cmp::Reverse(t.0));
        Self { terms: Arc::new(v) }
    }

    /// Wraps terms that are already sorted, deduplicated and nonzero.
    pub(crate) fn from_sorted(v: Vec<Term>) -> Self {
        debug_assert!(v.windows(2).all(|w| w[0].0 > w[1].0));
        debug_assert!(v.iter().all(|(_, c)| !c.is_zero()));
        Self { terms: Arc::new(v) }
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one_value()
    }

    /// Constant value if the polynomial is constant.
    pub fn as_constant(&self) -> Option<GaussianRational> {
        match self.terms.len() {
            0 => Some(GaussianRational::zero()),
            1 if self.terms[0].0.is_one() => Some(self.terms[0].1.clone()),
            _ => None,
        }
    }

    pub fn leading_term(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn leading_coeff(&self) -> GaussianRational {
        self.terms.first().map(|t| t.1.clone()).unwrap_or_default()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: Var) -> u16 {
        self.terms.iter().map(|(m, _)| m.exp(v)).max().unwrap_or(0)
    }

    /// Variables occurring with positive exponent.
    pub fn variables(&self) -> Vec<Var> {
        Var::ALL.into_iter().filter(|&v| self.degree_in(v) > 0).collect()
    }

    pub fn has_real_coefficients(&self) -> bool {
        self.terms.iter().all(|(_, c)| c.is_real())
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        if c.is_one_value() {
            return self.clone();
        }
        Self::from_sorted(self.terms.iter().map(|(m, a)| (*m, a * c)).collect())
    }

    pub fn mul_monomial(&self, mono: &Monomial, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::from_sorted(self.terms.iter().map(|(m, a)| (m.mul(mono), a * c)).collect())
    }

    /// Divides by the leading coefficient; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.terms.first() {
            None => Self::zero(),
            Some((_, c)) if c.is_one_value() => self.clone(),
            Some((_, c)) => self.scale(&c.inv().expect("nonzero leading coefficient")),
        }
    }

    /// Coefficient-wise complex conjugation (the coordinates are real).
    pub fn conj(&self) -> Self {
        if self.has_real_coefficients() {
            return self.clone();
        }
        Self::from_sorted(self.terms.iter().map(|(m, c)| (*m, c.conj())).collect())
    }

    pub fn partial(&self, v: Var) -> Self {
        let k = v.index();
        let mut out: Vec<Term> = Vec::with_capacity(self.terms.len());
        for (m, c) in self.terms.iter() {
            let e = m.0[k];
            if e == 0 {
                continue;
            }
            let mut m2 = *m;
            m2.0[k] -= 1;
            out.push((m2, c * &GaussianRational::from_integer(e as i64)));
        }
        // Differentiation in one variable can reorder grevlex terms.
        out.sort_unstable_by_key(|t| std::cmp::Reverse(t.0));
        Self::from_sorted(out)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Evaluates at a point given as `[x, y, u1, u2]`.
    pub fn eval(&self, pt: &[GaussianRational; 4]) -> GaussianRational {
        let mut powers: [Vec<GaussianRational>; 4] = Default::default();
        for v in 0..4 {
            let d = self.terms.iter().map(|(m, _)| m.0[v]).max().unwrap_or(0) as usize;
            let mut p = Vec::with_capacity(d + 1);
            p.push(GaussianRational::one());
            for j in 1..=d {
                let next = &p[j - 1] * &pt[v];
                p.push(next);
            }
            powers[v] = p;
        }
        let mut acc = GaussianRational::zero();
        for (m, c) in self.terms.iter() {
            let mut t = c.clone();
            for v in 0..4 {
                let e = m.0[v] as usize;
                if e > 0 {
                    t *= &powers[v][e];
                }
            }
            acc += &t;
        }
        acc
    }

    /// Floating-point evaluation at a complex point.
    pub fn eval_f64(&self, pt: &[(f64, f64); 4]) -> (f64, f64) {
        let mut acc = (0.0, 0.0);
        for (m, c) in self.terms.iter() {
            let mut t = c.to_f64_pair();
            for v in 0..4 {
                for _ in 0..m.0[v] {
                    t = (t.0 * pt[v].0 - t.1 * pt[v].1, t.0 * pt[v].1 + t.1 * pt[v].0);
                }
            }
            acc.0 += t.0;
            acc.1 += t.1;
        }
        acc
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Polynomial) -> Option<Polynomial> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if let Some(c) = d.as_constant() {
            return Some(self.scale(&c.inv()?));
        }
        let (dlm, dlc) = d.terms[0].clone();
        let dlc_inv = dlc.inv()?;
        // Quick rejections: degree and leading-monomial divisibility.
        if !dlm.divides(&self.terms[0].0) {
            return None;
        }
        for v in Var::ALL {
            if d.degree_in(v) > self.degree_in(v) {
                return None;
            }
        }
        let mut rem: BTreeMap<Monomial, GaussianRational> = self.terms.iter().cloned().collect();
        let mut quot: Vec<Term> = Vec::new();
        while let Some((&m, _)) = rem.iter().next_back() {
            let c = rem.remove(&m).expect("present");
            let qm = m.div(&dlm)?;
            let qc = &c * &dlc_inv;
            for (tm, tc) in d.terms.iter().skip(1) {
                let mm = tm.mul(&qm);
                let delta = tc * &qc;
                match rem.entry(mm) {
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        *e.get_mut() -= &delta;
                        if e.get().is_zero() {
                            e.remove();
                        }
                    }
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(-delta);
                    }
                }
            }
            quot.push((qm, qc));
        }
        Some(Self::from_sorted(quot))
    }

    /// Substitutes a constant for one variable.
    pub fn substitute(&self, v: Var, val: &GaussianRational) -> Self {
        let d = self.degree_in(v) as usize;
        let mut powers = vec![GaussianRational::one()];
        for j in 1..=d {
            let next = &powers[j - 1] * val;
            powers.push(next);
        }
        Self::from_terms(self.terms.iter().map(|(m, c)| {
            let e = m.exp(v) as usize;
            (m.with_exp(v, 0), c * &powers[e])
        }))
    }

    /// Number of terms summed over the polynomial, used as a size measure.
    pub fn size(&self) -> usize {
        self.terms.len()
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, o: &Polynomial) -> Polynomial {
        merge(self, o, false)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, o: &Polynomial) -> Polynomial {
        merge(self, o, true)
    }
}

fn merge(a: &Polynomial, b: &Polynomial, negate_b: bool) -> Polynomial {
    if b.is_zero() {
        return a.clone();
    }
    if a.is_zero() {
        return if negate_b { -b } else { b.clone() };
    }
    let (ta, tb) = (&a.terms, &b.terms);
    let mut out = Vec::with_capacity(ta.len() + tb.len());
    let (mut i, mut j) = (0, 0);
    while i < ta.len() && j < tb.len() {
        match ta[i].0.cmp(&tb[j].0) {
            std::cmp::Ordering::Greater => {
                out.push(ta[i].clone());
                i += 1;
            }
            std::cmp::Ordering::Less => {
                let c = if negate_b { -&tb[j].1 } else { tb[j].1.clone() };
                out.push((tb[j].0, c));
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                let c = if negate_b { &ta[i].1 - &tb[j].1 } else { &ta[i].1 + &tb[j].1 };
                if !c.is_zero() {
                    out.push((ta[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend(ta[i..].iter().cloned());
    for t in &tb[j..] {
        let c = if negate_b { -&t.1 } else { t.1.clone() };
        out.push((t.0, c));
    }
    Polynomial::from_sorted(out)
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, o: &Polynomial) -> Polynomial {
        if self.is_zero() || o.is_zero() {
            return Polynomial::zero();
        }
        if let Some(c) = self.as_constant() {
            return o.scale(&c);
        }
        if let Some(c) = o.as_constant() {
            return self.scale(&c);
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return o.mul_monomial(m, c);
        }
        if o.terms.len() == 1 {
            let (m, c) = &o.terms[0];
            return self.mul_monomial(m, c);
        }
        let mut map: HashMap<Monomial, GaussianRational> = HashMap::with_capacity(self.terms.len() * o.terms.len());
        for (ma, ca) in self.terms.iter() {
            for (mb, cb) in o.terms.iter() {
                let prod = ca * cb;
                match map.entry(ma.mul(mb)) {
                    std::collections::hash_map::Entry::Occupied(mut e) => *e.get_mut() += &prod,
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(prod);
                    }
                }
            }
        }
        Polynomial::from_map(map)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::from_sorted(self.terms.iter().map(|(m, c)| (*m, -c)).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $m(self, o: Polynomial) -> Polynomial {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $m(self, o: &Polynomial) -> Polynomial {
                (&self).$m(o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl From<GaussianRational> for Polynomial {
    fn from(c: GaussianRational) -> Self {
        Self::constant(c)
    }
}

impl From<Var> for Polynomial {
    fn from(v: Var) -> Self {
        Self::var(v)
    }
}

/// Canonical serialization: terms in decreasing grevlex order joined by
/// ` + ` / ` - `, unit coefficients omitted, e.g. `x^2 + y^2`.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.has_extractable_sign();
            let mag = if negative { -c } else { c.clone() };
            if k == 0 {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag.is_one_value() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Polynomial {
        Polynomial::var(Var::X)
    }
    fn y() -> Polynomial {
        Polynomial::var(Var::Y)
    }
    fn c(n: i64) -> Polynomial {
        Polynomial::constant(GaussianRational::from_integer(n))
    }

    #[test]
    fn arithmetic_and_display() {
        let p = &(&x() * &x()) + &(&y() * &y());
        assert_eq!(p.to_string(), "x^2 + y^2");
        let q = &(&x() + &y()) * &(&x() - &y());
        assert_eq!(q.to_string(), "x^2 - y^2");
        assert!((&q - &q).is_zero());
        let iu = Polynomial::constant(GaussianRational::i()) * Polynomial::var(Var::U1);
        let r = &iu - &Polynomial::constant(GaussianRational::from_ratio(1, 2));
        assert_eq!(r.to_string(), "i*u1 - 1/2");
    }

    #[test]
    fn partials() {
        let p = &(&x() * &x()) + &(&y() * &y());
        assert_eq!(p.partial(Var::X), &c(2) * &x());
        let q = &(&x() * &y()) * &y();
        assert_eq!(q.partial(Var::X).partial(Var::Y), q.partial(Var::Y).partial(Var::X));
    }

    #[test]
    fn exact_division() {
        let a = &x() + &y();
        let b = &(&x() * &x()) - &c(3);
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&a), Some(b.clone()));
        assert_eq!(prod.div_exact(&b), Some(a.clone()));
        assert_eq!((&prod + &c(1)).div_exact(&a), None);
    }

    #[test]
    fn evaluation() {
        let p = &(&x() * &x()) + &(&c(2) * &y());
        let pt = [GaussianRational::from_integer(3), GaussianRational::i(), Default::default(), Default::default()];
        assert_eq!(p.eval(&pt), &GaussianRational::from_integer(9) + &(&GaussianRational::i() * &GaussianRational::from_integer(2)));
    }
}
