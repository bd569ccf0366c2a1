mod common;

use common::*;
use engel_core::algebra::parse_polynomial;
use engel_core::{ExtScalar, RationalFunction, Var};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ring_axioms_with_beta(a in ext_with_beta(beta_context()), b in ext_with_beta(beta_context()), c in ext_with_beta(beta_context())) {
        let ctx = beta_context();
        let (a, b, c) = (a.in_context(&ctx).unwrap(), b.in_context(&ctx).unwrap(), c.in_context(&ctx).unwrap());
        let lhs = (a.clone() * b.clone()) * c.clone();
        let rhs = a.clone() * (b.clone() * c.clone());
        prop_assert!((lhs - rhs).is_zero());
        let dist = a.clone() * (b.clone() + c.clone()) - (a.clone() * b.clone() + a * c);
        prop_assert!(dist.is_zero());
    }

    #[test]
    fn reduction_is_sound(f in polynomial(0b1111, 3), g in nonzero_polynomial(0b1111, 3), h in nonzero_polynomial(0b0111, 2)) {
        let lhs = RationalFunction::new(&f * &h, &g * &h).unwrap();
        let rhs = RationalFunction::new(f, g).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn conjugation_is_an_automorphism(a in ext_with_beta(beta_context()), b in ext_with_beta(beta_context())) {
        let ctx = beta_context();
        let (a, b) = (a.in_context(&ctx).unwrap(), b.in_context(&ctx).unwrap());
        prop_assert_eq!((a.clone() * b.clone()).conj(), a.conj() * b.conj());
        prop_assert_eq!((a.clone() + b.clone()).conj(), a.conj() + b.conj());
        prop_assert_eq!(a.conj().conj(), a);
    }

    #[test]
    fn partial_is_a_commuting_derivation(a in ext_with_beta(beta_context()), b in ext_with_beta(beta_context())) {
        let ctx = beta_context();
        let (a, b) = (a.in_context(&ctx).unwrap(), b.in_context(&ctx).unwrap());
        for v in Var::ALL {
            let lhs = (a.clone() * b.clone()).partial(v);
            let rhs = a.partial(v) * b.clone() + a.clone() * b.partial(v);
            prop_assert!((lhs - rhs).is_zero());
        }
        prop_assert_eq!(a.partial(Var::X).partial(Var::Y), a.partial(Var::Y).partial(Var::X));
    }

    #[test]
    fn serialization_round_trips(p in polynomial(0b1111, 5)) {
        let text = p.to_string();
        prop_assert_eq!(parse_polynomial(&text).unwrap(), p);
    }
}

#[test]
fn beta_identities() {
    let b = RationalFunction::from_polynomial(parse_polynomial("1 + x^2").unwrap());
    let ctx = std::sync::Arc::new(engel_core::SqrtContext::new(b, engel_core::Branch::Plus).unwrap());
    let beta = ExtScalar::sqrt_of_radicand(&ctx);
    assert_eq!(beta.clone() * beta.clone(), parse("1 + x^2").in_context(&ctx).unwrap());
    assert!((beta.conj() * beta.clone()).is_one());
    assert_eq!(
        beta.partial(Var::X),
        beta.clone()
            * ExtScalar::from_rational(
                RationalFunction::new(parse_polynomial("x").unwrap(), parse_polynomial("1 + x^2").unwrap()).unwrap()
            )
            .in_context(&ctx)
            .unwrap()
    );
    let inv = beta.try_inv().unwrap();
    assert_eq!(inv.to_string(), "((1)/(x^2 + 1))*beta");
}

#[test]
fn canonical_examples() {
    assert_eq!(parse_polynomial("x^2 + y^2").unwrap().to_string(), "x^2 + y^2");
    assert_eq!(parse_polynomial("i*u1 - 1/2").unwrap().to_string(), "i*u1 - 1/2");
    assert!(parse_polynomial("x^(-1)").is_err());
    assert!((parse("x") * parse("x") - parse("x^2")).is_zero());
    assert_eq!(parse("x^2 + y^2").partial(Var::X), parse("2*x"));
}
