//! From a graph `(φ₁, φ₂)` to the invariants of the canonical Cartan
//! connection and the flatness verdict.

pub mod bundle;
pub mod cartan;
pub mod checks;
pub mod classify;
pub mod explicit;
pub mod frame;
pub mod graph;
pub mod model;
pub mod normalize;
pub mod points;
pub mod structure;
pub mod tower;

pub use bundle::{BundleCoframe, InvariantSet, LambdaSolution, Route, INVARIANT_WEIGHTS};
pub use checks::{Check, CheckLog, CheckStatus};
pub use classify::{classify, find_witness, is_regular_point, run_exact, Classification, ExactRun, Verdict, Witness};
pub use frame::Frame;
pub use graph::{Generator, GraphData};
pub use model::ModelAlgebra;
pub use normalize::Normalizations;
pub use points::PointSampler;
pub use structure::StructureFunctions;
pub use tower::CoframeTower;

use crate::error::PipelineError;
use crate::scalar::{Domain, Scalar};

#[derive(Clone, Copy, Debug)]
pub struct AnalysisOptions {
    /// Evaluate the identity checks; ignored for inexact domains.
    pub checks: bool,
    /// Also evaluate the closed-form invariants.
    pub explicit: bool,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        Self { checks: true, explicit: true }
    }
}

/// Every intermediate object of one run.
pub struct Analysis<S> {
    pub generator: Generator<S>,
    pub frame: Frame<S>,
    pub structure: StructureFunctions<S>,
    pub normalizations: Normalizations<S>,
    pub tower: CoframeTower<S>,
    pub bundle: BundleCoframe<S>,
    pub structural: InvariantSet<S>,
    pub explicit: Option<InvariantSet<S>>,
    pub log: CheckLog,
}

impl<S: Scalar> Analysis<S> {
    /// Fails with the first failed required check.
    pub fn ensure_consistent(&self) -> Result<(), PipelineError> {
        match self.log.first_failure() {
            Some(c) => Err(PipelineError::Consistency { check: c.name.clone(), residual: c.residual.clone() }),
            None => Ok(()),
        }
    }
}

/// Runs every stage; required identities that fail are recorded in the log
/// rather than raised.
pub fn analyze<D: Domain>(graph: &GraphData, dom: &D, opts: AnalysisOptions) -> Result<Analysis<D::Scalar>, PipelineError> {
    let mut log = CheckLog::new(opts.checks && dom.is_exact());
    let generator = graph::build_generator(graph, dom)?;
    let frame = frame::build_frame(&generator, dom)?;
    let structure = structure::solve_structure_functions(&frame, dom, &mut log)?;
    let normalizations = normalize::compute_normalizations(&frame, &structure, &mut log)?;
    let tower = tower::build_coframe_tower(&frame, &structure, &normalizations, &mut log)?;
    let bundle = bundle::solve_lambda(&frame.calculus, tower.omega3(), &mut log)?;
    let structural = bundle::invariants_structural(&frame.calculus, &bundle, &mut log)?;
    cartan::verify_cartan_connection(&frame, &bundle, &mut log);

    let explicit = if opts.explicit {
        let ex = explicit::invariants_explicit(&frame, &structure, &normalizations, tower.omega3())?;
        for k in 0..6 {
            log.compare(&format!("explicit I{k} equals structural I{k}"), || ex.values[k].clone() - structural.values[k].clone());
        }
        let structural_zero = structural.values.iter().all(Scalar::is_zero);
        log.require_that(
            "explicit invariants vanish when structural invariants vanish",
            || !structural_zero || ex.values.iter().all(Scalar::is_zero),
            || ex.values.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "),
        );
        Some(ex)
    } else {
        None
    };
    Ok(Analysis { generator, frame, structure, normalizations, tower, bundle, structural, explicit, log })
}
