//! Independent numeric evaluation of the invariants through truncated jets,
//! compared against the exact values at seeded points.

use std::sync::Arc;

use engel_core::algebra::{ExtScalar, GaussianRational, Polynomial, Var};
use engel_core::pipeline::{analyze, is_regular_point, Analysis, AnalysisOptions, GraphData, PointSampler};
use engel_core::{AlgebraError, Domain, PipelineError};
use num_complex::Complex64;
use thiserror::Error;

use crate::jet::{complex, Jet, JetSpace};

/// Candidate points drawn per requested point before giving up.
const DRAWS_PER_POINT: usize = 50;

/// Jets expanded at a real point; `B^{1/2}` takes the root nearest a hint.
pub struct JetDomain {
    space: Arc<JetSpace>,
    coords: [Jet; 4],
    beta_hint: Complex64,
}

impl JetDomain {
    pub fn new(space: Arc<JetSpace>, point: [f64; 4], beta_hint: Complex64) -> Self {
        let coords = std::array::from_fn(|i| space.variable(Var::from_index(i), point[i]));
        Self { space, coords, beta_hint }
    }

    pub fn space(&self) -> &Arc<JetSpace> {
        &self.space
    }
}

impl Domain for JetDomain {
    type Scalar = Jet;

    fn lift(&self, p: &Polynomial) -> Jet {
        let mut acc = Jet::Constant(Complex64::new(0.0, 0.0));
        for (m, c) in p.terms() {
            let mut term = Jet::Constant(complex(c));
            for (v, coord) in self.coords.iter().enumerate() {
                for _ in 0..m.0[v] {
                    term = term * coord.clone();
                }
            }
            acc = acc + term;
        }
        acc
    }

    fn adjoin_sqrt(&self, b: &Jet) -> Result<(Jet, Jet), PipelineError> {
        if b.value().is_some_and(|v| v.norm() < self.space.floor()) {
            return Err(PipelineError::VanishingValue { what: "B".into() });
        }
        Ok((b.sqrt_near(self.beta_hint)?, b.clone()))
    }

    fn require_nonzero(&self, s: &Jet, what: &str) -> Result<(), PipelineError> {
        match s.value() {
            Some(v) if v.norm() < self.space.floor() => Err(PipelineError::VanishingValue { what: what.into() }),
            _ => Ok(()),
        }
    }

    fn is_exact(&self) -> bool {
        false
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OracleConfig {
    pub points: usize,
    pub seed: u64,
    /// Total order of the jets.
    pub order: u32,
    pub tolerance: f64,
    /// Values below this magnitude are not inverted.
    pub floor: f64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self { points: 20, seed: 0, order: 8, tolerance: 1e-6, floor: 1e-8 }
    }
}

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("jet order {order} is too low to evaluate I{invariant}")]
    InsufficientOrder { invariant: usize, order: u32 },
    #[error("only {accepted} of {requested} points were usable after {drawn} draws")]
    TooFewPoints { accepted: usize, requested: usize, drawn: usize },
    #[error(transparent)]
    Pipeline(#[from] PipelineError),
}

#[derive(Clone, Debug)]
pub struct InvariantComparison {
    pub invariant: usize,
    pub exact: Complex64,
    pub numeric: Complex64,
    /// Relative error, or absolute error when the exact value is zero.
    pub error: f64,
    pub agrees: bool,
}

#[derive(Clone, Debug)]
pub struct PointComparison {
    pub point: [GaussianRational; 4],
    pub invariants: Vec<InvariantComparison>,
}

#[derive(Clone, Debug)]
pub struct OracleReport {
    pub config: OracleConfig,
    pub points: Vec<PointComparison>,
    /// Points dropped because a value fell below the floor.
    pub rejected: usize,
}

impl OracleReport {
    pub fn agrees(&self) -> bool {
        self.points.iter().all(|p| p.invariants.iter().all(|c| c.agrees))
    }

    pub fn max_error(&self) -> f64 {
        self.points.iter().flat_map(|p| &p.invariants).map(|c| c.error).fold(0.0, f64::max)
    }

    /// Whether some compared invariant is numerically nonzero.
    pub fn any_nonzero(&self) -> bool {
        self.points.iter().flat_map(|p| &p.invariants).any(|c| c.numeric.norm() > self.config.tolerance)
    }
}

enum Outcome {
    Compared(Box<PointComparison>),
    Rejected,
}

fn exact_value(s: &ExtScalar, point: &[GaussianRational; 4]) -> Option<Complex64> {
    let (p, q, b) = s.eval_parts(point)?;
    Some(complex(&p) + complex(&q) * complex(&b).sqrt())
}

fn evaluate(
    graph: &GraphData,
    exact: &Analysis<ExtScalar>,
    space: &Arc<JetSpace>,
    cfg: &OracleConfig,
    point: [GaussianRational; 4],
) -> Result<Outcome, OracleError> {
    let Some(beta_hint) = exact_value(&exact.structure.beta, &point) else {
        return Ok(Outcome::Rejected);
    };
    let mut expected = Vec::with_capacity(4);
    for k in 2..=5 {
        match exact_value(&exact.structural.values[k], &point) {
            Some(v) => expected.push(v),
            None => return Ok(Outcome::Rejected),
        }
    }
    let coords = std::array::from_fn(|i| point[i].to_f64_pair().0);
    let dom = JetDomain::new(space.clone(), coords, beta_hint);
    let jets = match analyze(graph, &dom, AnalysisOptions { checks: false, explicit: false }) {
        Ok(a) => a,
        Err(PipelineError::VanishingValue { .. } | PipelineError::Algebra(AlgebraError::DivisionByZero)) => return Ok(Outcome::Rejected),
        Err(e) => return Err(e.into()),
    };
    let mut invariants = Vec::with_capacity(4);
    for (k, exact) in (2..=5).zip(expected) {
        let numeric = jets.structural.values[k].value().ok_or(OracleError::InsufficientOrder { invariant: k, order: cfg.order })?;
        let diff = (numeric - exact).norm();
        let error = if exact.norm() == 0.0 { diff } else { diff / exact.norm() };
        invariants.push(InvariantComparison { invariant: k, exact, numeric, error, agrees: error <= cfg.tolerance });
    }
    Ok(Outcome::Compared(Box::new(PointComparison { point, invariants })))
}

/// Compares jet and exact `I₂..I₅` at `cfg.points` seeded regular points.
/// Points where the numeric run meets a value below the floor are redrawn.
pub fn run_oracle(graph: &GraphData, exact: &Analysis<ExtScalar>, cfg: OracleConfig) -> Result<OracleReport, OracleError> {
    let space = JetSpace::new(cfg.order, cfg.floor);
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get());
    let mut sampler = PointSampler::new(cfg.seed);
    let mut points = Vec::with_capacity(cfg.points);
    let mut rejected = 0;
    let mut drawn = 0;
    let limit = cfg.points * DRAWS_PER_POINT;
    while points.len() < cfg.points && drawn < limit {
        let want = (cfg.points - points.len()).min(limit - drawn);
        let mut batch = Vec::with_capacity(want);
        while batch.len() < want && drawn < limit {
            let pt = sampler.next_point();
            drawn += 1;
            if is_regular_point(exact, &pt) {
                batch.push(pt);
            } else {
                rejected += 1;
            }
        }
        let chunk = batch.len().div_ceil(threads).max(1);
        let outcomes: Vec<Result<Outcome, OracleError>> = std::thread::scope(|scope| {
            let handles: Vec<_> = batch
                .chunks(chunk)
                .map(|pts| scope.spawn(|| pts.iter().map(|p| evaluate(graph, exact, &space, &cfg, p.clone())).collect::<Vec<_>>()))
                .collect();
            handles.into_iter().flat_map(|h| h.join().expect("oracle worker panicked")).collect()
        });
        for outcome in outcomes {
            match outcome? {
                Outcome::Compared(c) if points.len() < cfg.points => points.push(*c),
                Outcome::Compared(_) => {}
                Outcome::Rejected => rejected += 1,
            }
        }
    }
    if points.len() < cfg.points {
        return Err(OracleError::TooFewPoints { accepted: points.len(), requested: cfg.points, drawn });
    }
    Ok(OracleReport { config: cfg, points, rejected })
}
