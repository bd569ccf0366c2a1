mod common;

use engel_core::algebra::parse_polynomial;
use engel_core::exterior::{BundleForm, FrameCalculus};
use engel_core::pipeline::bundle::{invariants_structural, solve_lambda};
use engel_core::pipeline::frame::build_frame;
use engel_core::pipeline::graph::build_generator;
use engel_core::pipeline::normalize::compute_normalizations;
use engel_core::pipeline::structure::solve_structure_functions;
use engel_core::pipeline::tower::build_coframe_tower;
use engel_core::pipeline::{analyze, AnalysisOptions, CheckLog, CheckStatus, GraphData};
use engel_core::{ExactDomain, ExtScalar, PipelineError};

use common::parse;

fn graph(phi1: &str, phi2: &str) -> GraphData {
    GraphData::new(parse_polynomial(phi1).unwrap(), parse_polynomial(phi2).unwrap()).unwrap()
}

fn cubic() -> GraphData {
    graph("x^2 + y^2", "2*x^3 + 2*x*y^2")
}

#[test]
fn cubic_generator_coefficients() {
    let g = build_generator(&cubic(), &ExactDomain::default()).unwrap();
    assert_eq!(g.a1, parse("y + i*x"));
    assert_eq!(g.a2, parse("2*x*y + 3*i*x^2 + i*y^2"));
}

#[test]
fn degenerate_and_non_class_ii_inputs() {
    let dom = ExactDomain::default();
    let err = build_generator(&graph("-u2", "u1"), &dom).unwrap_err();
    assert!(matches!(err, PipelineError::DegenerateGraph { .. }), "{err}");
    for (p1, p2) in [("x^2 + y^2", "0"), ("0", "0")] {
        let g = build_generator(&graph(p1, p2), &dom).unwrap();
        let err = build_frame(&g, &dom).err().expect("frame must be singular");
        assert!(matches!(err, PipelineError::NotClassII { .. }), "{err}");
    }
}

#[test]
fn cubic_stages_are_trivial() {
    let dom = ExactDomain::default();
    let mut log = CheckLog::new(true);
    let g = build_generator(&cubic(), &dom).unwrap();
    let frame = build_frame(&g, &dom).unwrap();
    assert!(!frame.det().is_zero());
    let sf = solve_structure_functions(&frame, &dom, &mut log).unwrap();
    assert!(sf.a.is_zero() && sf.b.is_one());
    for v in [&sf.e, &sf.f, &sf.g, &sf.h] {
        assert!(v.is_zero(), "{v}");
    }
    let n = compute_normalizations(&frame, &sf, &mut log).unwrap();
    for v in [&n.c0, &n.b0, &n.d0, &n.d0_bar] {
        assert!(v.is_zero(), "{v}");
    }
    let tower = build_coframe_tower(&frame, &sf, &n, &mut log).unwrap();
    for (k, w) in tower.omega3().iter().enumerate() {
        assert!(w.sub(&BundleForm::basis(k + 1)).is_zero(), "level 3 form {k}: {w}");
    }
    let bundle = solve_lambda(&frame.calculus, tower.omega3(), &mut log).unwrap();
    for x in [&bundle.lambda.x_sigma, &bundle.lambda.x_rho, &bundle.lambda.x_zeta, &bundle.lambda.x_zeta_bar] {
        assert!(x.is_zero(), "{x}");
    }
    let inv = invariants_structural(&frame.calculus, &bundle, &mut log).unwrap();
    assert!(inv.values.iter().all(ExtScalar::is_zero));
    assert!(bundle.structure[0].is_zero(), "d(Lambda) = {}", bundle.structure[0]);
    assert!(log.items().iter().all(|c| c.status == CheckStatus::Pass), "{:?}", log.first_failure());
}

#[test]
fn frame_differentials_of_the_zeta_forms_vanish() {
    let dom = ExactDomain::default();
    let g = build_generator(&graph("x^2 + y^2 + x^2*y", "2*x^3 - y^3 + u1"), &dom).unwrap();
    let frame = build_frame(&g, &dom).unwrap();
    assert!(frame.calculus.d_basis(2).is_zero());
    assert!(frame.calculus.d_basis(3).is_zero());
}

#[test]
fn perturbing_lambda_breaks_the_absorbed_equations() {
    let a = analyze(&graph("x^2 + y^2", "2*x^3 + 2*x*y^2 + x^4"), &ExactDomain::default(), AnalysisOptions::default()).unwrap();
    let (d_sigma, d_rho) = engel_core::pipeline::bundle::sigma_rho_templates::<ExtScalar>();
    let forms = a.bundle.coframe.forms();
    for k in 1..5 {
        let bumped = forms[0].add(&forms[k].scale_base(&parse("1")));
        let coframe =
            engel_core::exterior::Coframe::new([bumped, forms[1].clone(), forms[2].clone(), forms[3].clone(), forms[4].clone()]).unwrap();
        // σ∧σ = 0, so the σ-coefficient is pinned by dρ instead.
        let (target, template) = if k == 1 { (2, &d_rho) } else { (1, &d_sigma) };
        let residual = coframe.expand(&a.bundle.d[target]).sub(template);
        assert!(!residual.is_zero(), "bumping coefficient {k} left the absorbed form intact");
    }
}

#[test]
fn required_checks_pass_on_mixed_inputs() {
    for (p1, p2) in [
        ("x^2 + y^2", "2*x^3 + 2*x*y^2 + x^4"),
        ("x^2 + y^2 - 2*x^2*y + x*y", "2*x^3 - x*y^2 + y^2 + x^2 - u1"),
        ("x^3 - x*y - y^2", "x^3 - y^3 - 2*x^2 - u1"),
    ] {
        let a = analyze(&graph(p1, p2), &ExactDomain::default(), AnalysisOptions::default()).unwrap();
        assert!(a.log.first_failure().is_none(), "{p1}; {p2}: {:?}", a.log.first_failure());
        assert!(!a.structural.is_flat());
    }
}

#[test]
fn perturbed_cubic_invariants_match_reference() {
    let a = analyze(&graph("x^2 + y^2", "2*x^3 + 2*x*y^2 + x^4"), &ExactDomain::default(), AnalysisOptions::default()).unwrap();
    let cube = parse("27*x^3 + 54*x^2 + 36*x + 8");
    let square = parse("9*x^2 + 12*x + 4");
    let i2 = parse("-405/64*i") * cube.try_inv().unwrap();
    let i4 = parse("-315/144*i") * square.try_inv().unwrap();
    let v = &a.structural.values;
    assert!(v[1].is_zero());
    assert_eq!(v[2], i2);
    assert_eq!(v[3], i2);
    assert_eq!(v[4], i4);
    assert_eq!(v[5], i4);
}
