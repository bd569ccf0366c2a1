mod common;

use common::*;
use engel_core::calculus::{FrameMatrix, VectorField};
use engel_core::exterior::{
    coordinate_one_form, coordinate_vector, ext_d, BundleForm, BundleScalar, Coframe, CoordinateCalculus, DualFrameCalculus, DIM,
};
use engel_core::{ExtScalar, Polynomial};
use proptest::prelude::*;

type Form = BundleForm<ExtScalar>;

fn bundle_scalar() -> impl Strategy<Value = BundleScalar<ExtScalar>> {
    prop::collection::vec((-2i32..=3, polynomial(0b1111, 2)), 0..=2).prop_map(|ts| {
        ts.into_iter().fold(BundleScalar::zero(), |acc, (n, p)| &acc + &BundleScalar::term(n, ExtScalar::from_polynomial(p)))
    })
}

fn form(degree: usize) -> impl Strategy<Value = Form> {
    prop::collection::vec((prop::sample::subsequence((0..DIM).collect::<Vec<_>>(), degree), bundle_scalar()), 0..=3)
        .prop_map(move |ts| ts.into_iter().fold(Form::zero(degree), |acc, (idx, c)| acc.add(&Form::monomial(&idx, c))))
}

fn any_form() -> impl Strategy<Value = Form> {
    (0usize..=3).prop_flat_map(form)
}

fn field() -> impl Strategy<Value = VectorField<ExtScalar>> {
    prop::array::uniform4(polynomial(0b1111, 2)).prop_map(|cs| VectorField::new(cs.map(ExtScalar::from_polynomial)))
}

fn unipotent_frame() -> impl Strategy<Value = [VectorField<ExtScalar>; 4]> {
    prop::collection::vec(polynomial(0b1111, 2), 6).prop_map(|ps| {
        let mut it = ps.into_iter();
        std::array::from_fn(|i| {
            VectorField::new(std::array::from_fn(|j| match j.cmp(&i) {
                std::cmp::Ordering::Less => ExtScalar::zero(),
                std::cmp::Ordering::Equal => ExtScalar::one(),
                std::cmp::Ordering::Greater => ExtScalar::from_polynomial(it.next().unwrap_or_else(Polynomial::zero)),
            }))
        })
    })
}

fn sign_form(degree: usize, w: &Form) -> Form {
    if degree % 2 == 1 {
        w.neg()
    } else {
        w.clone()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn d_squared_vanishes(w in any_form()) {
        let calc = CoordinateCalculus::new();
        prop_assert!(ext_d(&ext_d(&w, &calc), &calc).is_zero());
    }

    #[test]
    fn leibniz_rule((p, q, w, v) in (0usize..=2, 0usize..=2).prop_flat_map(|(p, q)| (Just(p), Just(q), form(p), form(q)))) {
        let calc = CoordinateCalculus::new();
        let lhs = ext_d(&w.wedge(&v), &calc);
        let rhs = ext_d(&w, &calc).wedge(&v).add(&sign_form(p, &w.wedge(&ext_d(&v, &calc))));
        prop_assert_eq!(lhs.sub(&rhs), Form::zero(p + q + 1));
    }

    #[test]
    fn graded_commutativity(w in form(1), v in form(2)) {
        prop_assert_eq!(w.wedge(&v), v.wedge(&w));
        prop_assert_eq!(w.wedge(&w), Form::zero(2));
    }

    #[test]
    fn duality_bridge(coeffs in prop::array::uniform4(polynomial(0b1111, 2)), v in field(), w in field()) {
        let calc = CoordinateCalculus::new();
        let theta = coordinate_one_form(&coeffs.map(ExtScalar::from_polynomial));
        let (vv, wv) = (coordinate_vector(&v), coordinate_vector(&w));
        let pair = |f: &Form, x: &[BundleScalar<ExtScalar>; DIM]| f.interior(x).coeff(&[]).coeff(0);
        let lhs = pair(&ext_d(&theta, &calc).interior(&vv), &wv);
        let rhs = v.apply(&pair(&theta, &wv)) - w.apply(&pair(&theta, &vv)) - pair(&theta, &coordinate_vector(&v.bracket(&w)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn frame_relative_d_matches_coordinates(frame in unipotent_frame(), w in form(1), v in form(2)) {
        let frame_calc = DualFrameCalculus::new(FrameMatrix::new(frame).unwrap());
        let coords = CoordinateCalculus::new();
        let to_coords: [Form; DIM] = std::array::from_fn(|i| {
            if i == 0 { Form::basis(0) } else { coordinate_one_form(&frame_calc.dual_form(i - 1)) }
        });
        for f in [w, v] {
            let in_frame = ext_d(&f, &frame_calc).substitute(&to_coords);
            let in_coords = ext_d(&f.substitute(&to_coords), &coords);
            prop_assert_eq!(in_frame, in_coords);
        }
    }

    #[test]
    fn coframe_expansion_inverts_recombination(frame in unipotent_frame(), w in form(2), n in -3i32..=3) {
        let forms: [Form; DIM] = std::array::from_fn(|i| {
            let base = if i == 0 { Form::basis(0).scale(&BundleScalar::a_pow(-1)) } else {
                let f = &frame[i - 1];
                Form::one_form(&std::iter::once(BundleScalar::zero()).chain(f.coeffs.iter().cloned().map(BundleScalar::from_base)).collect::<Vec<_>>())
            };
            base.scale(&BundleScalar::a_pow(n * i as i32))
        });
        let cf = Coframe::new(forms).unwrap();
        prop_assert_eq!(cf.recombine(&cf.expand(&w)), w.clone());
        prop_assert_eq!(cf.expand(&cf.recombine(&w)), w);
    }
}

#[test]
fn coordinate_examples() {
    let calc = CoordinateCalculus::new();
    let x = BundleScalar::from_base(parse("x"));
    let x_dy = Form::monomial(&[2], x);
    assert_eq!(ext_d(&x_dy, &calc), Form::monomial(&[1, 2], BundleScalar::one()));
    let rho = coordinate_one_form(&[parse("y"), parse("x*u1"), parse("0"), parse("1")]);
    let a2 = BundleScalar::a_pow(2);
    let lhs = ext_d(&rho.scale(&a2), &calc);
    let rhs = Form::basis(0)
        .scale(&BundleScalar::a_pow(1).scale(&engel_core::GaussianRational::from_integer(2)))
        .wedge(&rho)
        .add(&ext_d(&rho, &calc).scale(&a2));
    assert_eq!(lhs, rhs);
    let cf = Coframe::<ExtScalar>::identity();
    assert_eq!(cf.expand(&rho), rho);
}
