use std::fmt;

use num_traits::Zero;

use crate::algebra::{Branch, ExtScalar, GaussianRational, Polynomial};
use crate::error::PipelineError;
use crate::scalar::ExactDomain;

use super::checks::CheckLog;
use super::graph::GraphData;
use super::model::ModelAlgebra;
use super::points::PointSampler;
use super::{analyze, Analysis, AnalysisOptions};

/// Sampled points tried before giving up on a witness.
const WITNESS_ATTEMPTS: usize = 2000;

/// A nonzero invariant with an exact value at a rational point.
///
/// The value is `p + q·√radicand`; `p² ≠ q²·radicand`, so it is nonzero on
/// either branch of the root.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    /// Index `k` of `Iₖ`, in `2..=5`.
    pub invariant: usize,
    pub point: [GaussianRational; 4],
    pub p: GaussianRational,
    pub q: GaussianRational,
    pub radicand: GaussianRational,
}

impl Witness {
    pub fn value_string(&self) -> String {
        let root = format!("{}*sqrt({})", self.q, self.radicand);
        match (self.p.is_zero(), self.q.is_zero()) {
            (_, true) => self.p.to_string(),
            (true, false) => root,
            (false, false) => format!("{} + {root}", self.p),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Verdict {
    Flat,
    NonFlat(Box<Witness>),
    NotClassII { reason: String },
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Flat => "FLAT",
            Verdict::NonFlat(_) => "NON-FLAT",
            Verdict::NotClassII { .. } => "NOT_CLASS_II",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

pub struct Classification {
    pub verdict: Verdict,
    /// Product of the generator denominator and the numerator of the frame
    /// determinant; the verdict holds off its zero set.
    pub singular_locus: Option<Polynomial>,
    /// `None` when the input is not of class II.
    pub analysis: Option<Analysis<ExtScalar>>,
}

/// Builds the model algebra from the structure equations of a flat input
/// and compares it with the flat model.
fn check_model_algebra(analysis: &Analysis<ExtScalar>, log: &mut CheckLog) {
    let flat = ModelAlgebra::flat_model();
    log.require_that(
        "model algebra satisfies Jacobi",
        || flat.jacobi_violations().is_empty(),
        || format!("{:?}", flat.jacobi_violations()),
    );
    if !analysis.structural.values.iter().all(ExtScalar::is_zero) {
        return;
    }
    let built = ModelAlgebra::from_structure(&analysis.bundle.structure);
    log.require_that(
        "model algebra from the structure equations matches the bracket table",
        || built.as_ref().is_ok_and(|m| *m == flat),
        || match &built {
            Ok(m) => m.to_string(),
            Err(e) => e.to_string(),
        },
    );
}

/// Whether the generator denominator, the frame determinant and `B` are
/// all finite and nonzero at `point`.
pub fn is_regular_point(analysis: &Analysis<ExtScalar>, point: &[GaussianRational; 4]) -> bool {
    if analysis.generator.denominator.eval(point).is_zero() {
        return false;
    }
    let nonzero = |s: &ExtScalar| s.eval_parts(point).is_some_and(|(p, _, _)| !p.is_zero());
    nonzero(analysis.frame.det()) && nonzero(&analysis.structure.b)
}

/// Searches seeded rational points for one where some `Iₖ`, `k ∈ 2..=5`,
/// is defined and nonzero, away from the generator and frame singularities.
pub fn find_witness(analysis: &Analysis<ExtScalar>, seed: u64) -> Option<Witness> {
    let k = (2..=5).find(|&k| !analysis.structural.values[k].is_zero())?;
    let value = &analysis.structural.values[k];
    PointSampler::new(seed).take(WITNESS_ATTEMPTS).filter(|pt| is_regular_point(analysis, pt)).find_map(|point| {
        let (p, q, radicand) = value.eval_parts(&point)?;
        let norm = &(&p * &p) - &(&(&q * &q) * &radicand);
        (!norm.is_zero()).then_some(Witness { invariant: k, point, p, q, radicand })
    })
}

impl Analysis<ExtScalar> {
    /// Monic product of the generator denominator and the numerator of the
    /// frame determinant; `1` when there are no singularities.
    pub fn singular_locus(&self) -> Polynomial {
        (&self.generator.denominator * self.frame.det().p().num()).monic()
    }
}

/// Outcome of the exact pipeline before any verdict is drawn.
pub enum ExactRun {
    NotClassII {
        reason: String,
    },
    /// Every stage ran; failed identities are recorded in the log.
    Analyzed(Box<Analysis<ExtScalar>>),
}

/// The exact pipeline on branch `branch`, including the model algebra
/// checks, without failing on recorded identity failures.
pub fn run_exact(graph: &GraphData, branch: Branch, opts: AnalysisOptions) -> Result<ExactRun, PipelineError> {
    let dom = ExactDomain { branch };
    let mut analysis = match analyze(graph, &dom, opts) {
        Ok(a) => a,
        Err(PipelineError::NotClassII { reason, .. }) => return Ok(ExactRun::NotClassII { reason }),
        Err(PipelineError::DegenerateGraph { denominator }) => {
            let reason = format!("the generator denominator {denominator} vanishes identically");
            return Ok(ExactRun::NotClassII { reason });
        }
        Err(e) => return Err(e),
    };
    if analysis.log.enabled() {
        let mut log = std::mem::take(&mut analysis.log);
        check_model_algebra(&analysis, &mut log);
        analysis.log = log;
    }
    Ok(ExactRun::Analyzed(Box::new(analysis)))
}

/// The exact pipeline on branch `branch`, ending in a verdict.
pub fn classify(graph: &GraphData, branch: Branch, seed: u64, opts: AnalysisOptions) -> Result<Classification, PipelineError> {
    let analysis = match run_exact(graph, branch, opts)? {
        ExactRun::NotClassII { reason } => {
            return Ok(Classification { verdict: Verdict::NotClassII { reason }, singular_locus: None, analysis: None })
        }
        ExactRun::Analyzed(a) => *a,
    };
    analysis.ensure_consistent()?;
    let singular_locus = Some(analysis.singular_locus());
    let verdict = if analysis.structural.is_flat() {
        Verdict::Flat
    } else {
        let witness = find_witness(&analysis, seed).ok_or_else(|| PipelineError::Consistency {
            check: "a nonzero invariant has a nonzero value at a sampled point".into(),
            residual: analysis.structural.values.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "),
        })?;
        Verdict::NonFlat(Box::new(witness))
    };
    Ok(Classification { verdict, singular_locus, analysis: Some(analysis) })
}
