#![allow(dead_code)]

use std::sync::{Arc, OnceLock};

use engel_core::algebra::Monomial;
use engel_core::{Branch, ExtScalar, GaussianRational, Polynomial, RationalFunction, SqrtContext};
use proptest::prelude::*;

pub fn gaussian() -> impl Strategy<Value = GaussianRational> {
    (-3i64..=3, -3i64..=3, 1i64..=3)
        .prop_map(|(re, im, d)| &GaussianRational::from_ratio(re, d) + &(&GaussianRational::from_ratio(im, d) * &GaussianRational::i()))
}

/// Sparse polynomials with up to `terms` terms in the variables selected by
/// `vars` (a bitmask over x, y, u1, u2), each exponent at most 2.
pub fn polynomial(vars: u8, terms: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((prop::array::uniform4(0u16..=2), gaussian()), 0..=terms).prop_map(move |ts| {
        Polynomial::from_terms(ts.into_iter().map(|(mut e, c)| {
            for (k, x) in e.iter_mut().enumerate() {
                if vars & (1 << k) == 0 {
                    *x = 0;
                }
            }
            (Monomial(e), c)
        }))
    })
}

pub fn nonzero_polynomial(vars: u8, terms: usize) -> impl Strategy<Value = Polynomial> {
    polynomial(vars, terms).prop_filter("nonzero", |p| !p.is_zero())
}

pub fn rational(vars: u8) -> impl Strategy<Value = RationalFunction> {
    (polynomial(vars, 3), nonzero_polynomial(vars, 2)).prop_map(|(n, d)| RationalFunction::new(n, d).unwrap())
}

pub fn ext_plain(vars: u8) -> impl Strategy<Value = ExtScalar> {
    rational(vars).prop_map(ExtScalar::from_rational)
}

/// The context `β² = (1 + i·x)/(1 − i·x)`: not a perfect square, and of unit
/// modulus so that `conj(β) = 1/β` is an involution.
pub fn beta_context() -> Arc<SqrtContext> {
    static CTX: OnceLock<Arc<SqrtContext>> = OnceLock::new();
    CTX.get_or_init(|| {
        let p = engel_core::algebra::parse_polynomial;
        let b = RationalFunction::new(p("1 + i*x").unwrap(), p("1 - i*x").unwrap()).unwrap();
        Arc::new(SqrtContext::new(b, Branch::Plus).unwrap())
    })
    .clone()
}

pub fn ext_with_beta(ctx: Arc<SqrtContext>) -> impl Strategy<Value = ExtScalar> {
    (rational(0b1111), rational(0b0011)).prop_map(move |(p, q)| ExtScalar::new(p, q, Some(ctx.clone())))
}

pub fn parse(t: &str) -> ExtScalar {
    ExtScalar::from_polynomial(engel_core::algebra::parse_polynomial(t).unwrap())
}
