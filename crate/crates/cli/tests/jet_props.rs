use engel_cli::jet::{Jet, JetSpace};
use engel_core::algebra::{Monomial, Polynomial, Var};
use engel_core::{GaussianRational, Scalar};
use num_complex::Complex64;
use proptest::prelude::*;

fn polynomial() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(([0u16..3, 0u16..3, 0u16..2, 0u16..2], -3i64..=3), 1..5)
        .prop_map(|terms| Polynomial::from_terms(terms.into_iter().map(|(e, c)| (Monomial(e), GaussianRational::from_integer(c)))))
}

fn point() -> impl Strategy<Value = [f64; 4]> {
    prop::array::uniform4(-2.0f64..2.0)
}

fn lift(space: &std::sync::Arc<JetSpace>, p: &Polynomial, pt: [f64; 4]) -> Jet {
    let coords: Vec<Jet> = (0..4).map(|i| space.variable(Var::from_index(i), pt[i])).collect();
    let mut acc = Jet::Constant(Complex64::new(0.0, 0.0));
    for (m, c) in p.terms() {
        let mut t = Jet::constant(c.clone());
        for (v, x) in coords.iter().enumerate() {
            for _ in 0..m.0[v] {
                t = t * x.clone();
            }
        }
        acc = acc + t;
    }
    acc
}

fn exact_value(p: &Polynomial, pt: [f64; 4]) -> Complex64 {
    let (re, im) = p.eval_f64(&pt.map(|x| (x, 0.0)));
    Complex64::new(re, im)
}

fn close(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() <= 1e-9 * (1.0 + b.norm())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn derivatives_match_exact_partials(p in polynomial(), pt in point(), v in 0usize..4) {
        let space = JetSpace::new(4, 1e-8);
        let var = Var::from_index(v);
        let jet = lift(&space, &p, pt).partial(var).partial(Var::X);
        let exact = p.partial(var).partial(Var::X);
        prop_assert!(close(jet.value().unwrap(), exact_value(&exact, pt)));
    }

    #[test]
    fn products_and_inverses_are_consistent(p in polynomial(), q in polynomial(), pt in point()) {
        let space = JetSpace::new(5, 1e-8);
        let (jp, jq) = (lift(&space, &p, pt), lift(&space, &q, pt));
        let prod = lift(&space, &(&p * &q), pt);
        let direct = jp.clone() * jq;
        prop_assert!(close(direct.value().unwrap(), prod.value().unwrap()));
        prop_assert!(close(direct.partial(Var::Y).partial(Var::U1).value().unwrap(), prod.partial(Var::Y).partial(Var::U1).value().unwrap()));
        let shifted = jp + Jet::Constant(Complex64::new(0.0, 5.0));
        let one = shifted.try_inv().unwrap() * shifted;
        prop_assert!(close(one.partial(Var::X).partial(Var::X).value().unwrap(), Complex64::new(0.0, 0.0)));
        prop_assert!(close(one.value().unwrap(), Complex64::new(1.0, 0.0)));
    }
}
