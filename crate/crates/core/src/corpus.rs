//! Seeded random inputs for identity suites and benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{GaussianRational, Monomial, Polynomial};
use crate::pipeline::frame::build_frame;
use crate::pipeline::graph::{build_generator, GraphData};
use crate::scalar::ExactDomain;

/// Exponents `(i, j)` of the monomials `xⁱyʲ` with `i + j ≤ 3`.
const MONOMIALS: [(u16, u16); 10] = [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2), (3, 0), (2, 1), (1, 2), (0, 3)];

/// Draws rejected before [`class_ii_corpus`] gives up.
const MAX_DRAWS: usize = 10_000;

/// Shape of the random graphs.
#[derive(Clone, Copy, Debug)]
pub struct CorpusSpec {
    /// Coefficients are integers in `[-bound, bound]`.
    pub bound: i64,
    /// Probability that a given monomial is present.
    pub density: f64,
}

impl Default for CorpusSpec {
    fn default() -> Self {
        Self { bound: 2, density: 0.4 }
    }
}

fn random_phi(rng: &mut ChaCha8Rng, spec: CorpusSpec) -> Polynomial {
    let mut terms = Vec::new();
    for &(i, j) in &MONOMIALS {
        if rng.gen_bool(spec.density) {
            terms.push((Monomial([i, j, 0, 0]), GaussianRational::from_integer(rng.gen_range(-spec.bound..=spec.bound))));
        }
    }
    for k in 2..4 {
        let mut e = [0; 4];
        e[k] = 1;
        terms.push((Monomial(e), GaussianRational::from_integer(rng.gen_range(-spec.bound..=spec.bound))));
    }
    Polynomial::from_terms(terms)
}

/// `φ₁, φ₂`: sparse cubics in `x, y` plus `c₁u₁ + c₂u₂` with constant `cₖ`.
pub fn random_graph(rng: &mut ChaCha8Rng, spec: CorpusSpec) -> GraphData {
    GraphData::new(random_phi(rng, spec), random_phi(rng, spec)).expect("integer coefficients are real")
}

pub fn is_class_ii(graph: &GraphData) -> bool {
    let dom = ExactDomain::default();
    build_generator(graph, &dom).and_then(|g| build_frame(&g, &dom)).is_ok()
}

/// The first `count` class-II draws of the seeded stream.
pub fn class_ii_corpus(seed: u64, count: usize, spec: CorpusSpec) -> Vec<GraphData> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    std::iter::repeat_with(|| random_graph(&mut rng, spec)).take(MAX_DRAWS).filter(is_class_ii).take(count).collect()
}
