use engel_core::corpus::{is_class_ii, random_graph, CorpusSpec};
use engel_core::pipeline::{analyze, classify, AnalysisOptions, GraphData, Verdict};
use engel_core::{Branch, ExactDomain, ExtScalar};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn class_ii_graph() -> impl Strategy<Value = GraphData> {
    any::<u64>().prop_filter_map("not class II", |seed| {
        let g = random_graph(&mut ChaCha8Rng::seed_from_u64(seed), CorpusSpec::default());
        is_class_ii(&g).then_some(g)
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 8, ..ProptestConfig::default() })]

    #[test]
    fn every_required_identity_holds(g in class_ii_graph()) {
        let a = analyze(&g, &ExactDomain::default(), AnalysisOptions { checks: true, explicit: false }).unwrap();
        prop_assert!(a.log.first_failure().is_none(), "{:?}", a.log.first_failure());
    }

    #[test]
    fn verdict_and_zero_sets_are_branch_independent(g in class_ii_graph()) {
        let opts = AnalysisOptions { checks: false, explicit: false };
        let plus = classify(&g, Branch::Plus, 0, opts).unwrap();
        let minus = classify(&g, Branch::Minus, 0, opts).unwrap();
        prop_assert_eq!(plus.verdict.as_str(), minus.verdict.as_str());
        let zeros = |c: &engel_core::pipeline::Classification| {
            c.analysis.as_ref().unwrap().structural.values.iter().map(ExtScalar::is_zero).collect::<Vec<_>>()
        };
        prop_assert_eq!(zeros(&plus), zeros(&minus));
    }

    #[test]
    fn witnesses_are_nonzero_at_their_point(g in class_ii_graph()) {
        let c = classify(&g, Branch::Plus, 3, AnalysisOptions { checks: false, explicit: false }).unwrap();
        if let Verdict::NonFlat(w) = &c.verdict {
            let value = &c.analysis.as_ref().unwrap().structural.values[w.invariant];
            let (p, q, radicand) = value.eval_parts(&w.point).unwrap();
            prop_assert_eq!((&p, &q, &radicand), (&w.p, &w.q, &w.radicand));
            prop_assert!((2..=5).contains(&w.invariant));
        }
    }
}
